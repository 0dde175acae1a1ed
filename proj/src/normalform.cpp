#include "torspair/normalform.hpp"

#include <cstdlib>
#include <utility>

namespace torspair {

namespace {

struct Worker {
  IntMat d;
  IntMat left, right, left_inv, right_inv;

  explicit Worker(const IntMat& input)
      : d(input),
        left(IntMat::Identity(input.rows(), input.rows())),
        right(IntMat::Identity(input.cols(), input.cols())),
        left_inv(IntMat::Identity(input.rows(), input.rows())),
        right_inv(IntMat::Identity(input.cols(), input.cols())) {}

  void swap_rows(Index i, Index j) {
    if (i == j) return;
    d.row(i).swap(d.row(j));
    left.row(i).swap(left.row(j));
    left_inv.col(i).swap(left_inv.col(j));
  }

  void swap_cols(Index i, Index j) {
    if (i == j) return;
    d.col(i).swap(d.col(j));
    right.col(i).swap(right.col(j));
    right_inv.row(i).swap(right_inv.row(j));
  }

  void add_row(Index i, Index j, const Int& k) {  // row_i += k * row_j
    d.row(i) += k * d.row(j);
    left.row(i) += k * left.row(j);
    left_inv.col(j) -= k * left_inv.col(i);
  }

  void add_col(Index i, Index j, const Int& k) {  // col_i += k * col_j
    d.col(i) += k * d.col(j);
    right.col(i) += k * right.col(j);
    right_inv.row(j) -= k * right_inv.row(i);
  }

  void negate_row(Index i) {
    d.row(i) = -d.row(i);
    left.row(i) = -left.row(i);
    left_inv.col(i) = -left_inv.col(i);
  }

  // Minimal nonzero |entry| in d[t.., t..], row-major scan, first wins.
  bool find_pivot(Index t, Index& pi, Index& pj) const {
    bool found = false;
    Int best = 0;
    for (Index i = t; i < d.rows(); ++i)
      for (Index j = t; j < d.cols(); ++j) {
        if (d(i, j) == 0) continue;
        Int a = abs(d(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }
};

}  // namespace

SmithDecomposition smith_form(const IntMat& input) {
  Worker w(input);
  const Index rows = input.rows(), cols = input.cols();
  const Index steps = rows < cols ? rows : cols;

  for (Index t = 0; t < steps; ++t) {
    for (;;) {
      Index pi = t, pj = t;
      if (!w.find_pivot(t, pi, pj)) {
        t = steps;  // remaining block is zero
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      if (w.d(t, t) < 0) w.negate_row(t);

      bool dirty = false;
      for (Index r = t + 1; r < rows; ++r) {
        if (w.d(r, t) == 0) continue;
        Int q = w.d(r, t) / w.d(t, t);
        if (q != 0) w.add_row(r, t, Int(-q));
        if (w.d(r, t) != 0) dirty = true;
      }
      for (Index c = t + 1; c < cols; ++c) {
        if (w.d(t, c) == 0) continue;
        Int q = w.d(t, c) / w.d(t, t);
        if (q != 0) w.add_col(c, t, Int(-q));
        if (w.d(t, c) != 0) dirty = true;
      }
      if (dirty) continue;  // remainders are smaller; re-pivot

      // Row and column are clear; enforce divisibility of the rest.
      bool fixed = false;
      for (Index r = t + 1; r < rows && !fixed; ++r)
        for (Index c = t + 1; c < cols && !fixed; ++c)
          if (w.d(r, c) % w.d(t, t) != 0) {
            w.add_row(t, r, Int(1));
            fixed = true;
          }
      if (!fixed) break;
    }
    if (t == steps) break;
  }

  SmithDecomposition out;
  out.diagonal.reserve(static_cast<std::size_t>(steps));
  for (Index i = 0; i < steps; ++i) out.diagonal.push_back(w.d(i, i));
  out.left = std::move(w.left);
  out.right = std::move(w.right);
  out.left_inv = std::move(w.left_inv);
  out.right_inv = std::move(w.right_inv);
  return out;
}

IntMat integer_kernel(const IntMat& input) {
  SmithDecomposition sd = smith_form(input);
  const Index cols = input.cols();
  const Index steps = static_cast<Index>(sd.diagonal.size());
  std::vector<Index> picks;
  for (Index j = 0; j < steps; ++j)
    if (sd.diagonal[static_cast<std::size_t>(j)] == 0) picks.push_back(j);
  for (Index j = steps; j < cols; ++j) picks.push_back(j);
  IntMat basis(cols, static_cast<Index>(picks.size()));
  for (Index k = 0; k < basis.cols(); ++k)
    basis.col(k) = sd.right.col(picks[static_cast<std::size_t>(k)]);
  return basis;
}

CoinvariantDecomposition coinvariants(const LatticeWithIsometry& lattice) {
  const Index n = lattice.rank();
  IntMat m = IntMat::Identity(n, n) - lattice.isometry;
  CoinvariantDecomposition out{lattice.prime, 0, {}, {}, {}, smith_form(m)};
  for (Index i = 0; i < n; ++i) {
    const Int& d = out.smith.diagonal[static_cast<std::size_t>(i)];
    if (d == 0) {
      ++out.free_rank;
      continue;
    }
    long e = lval(d, lattice.prime);
    if (e == 0) continue;  // unit at l: no l-power torsion
    out.torsion_exponents.push_back(e);
    out.torsion_indices.push_back(i);
    out.generator_lifts.emplace_back(out.smith.left_inv.col(i));
  }
  return out;
}

IntMat fixed_sublattice(const LatticeWithIsometry& lattice) {
  const Index n = lattice.rank();
  return integer_kernel(IntMat(IntMat::Identity(n, n) - lattice.isometry));
}

IntMat orthogonal_complement(const LatticeWithIsometry& lattice,
                             const IntMat& basis) {
  if (basis.rows() != lattice.rank())
    throw Error("ShapeMismatch", "basis rows do not match the rank");
  return integer_kernel(IntMat(basis.transpose() * lattice.gram));
}

RatVec TorsionWitness::value() const {
  const Index n = static_cast<Index>(scaled.size());
  RatVec v(n);
  if (n == 0) return v;
  Rat scale(int_pow(scaled.front().prime().value(),
                    static_cast<unsigned long>(exponent)));
  for (Index i = 0; i < n; ++i)
    v(i) = scaled[static_cast<std::size_t>(i)].value() / scale;
  return v;
}

TorsionWitness solve_torsion_witness(const CoinvariantDecomposition& decomp,
                                     const IntVec& t, long m) {
  const Index n = decomp.smith.left.rows();
  if (t.size() != n)
    throw Error("ShapeMismatch", "class lift length does not match the rank");
  if (m < 0) throw Error("PreconditionViolated", "negative torsion exponent");
  const LPrime& l = decomp.prime;
  IntVec rhs = int_pow(l.value(), static_cast<unsigned long>(m)) * t;
  IntVec w = decomp.smith.left * rhs;
  RatVec y = RatVec::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const Int& d = decomp.smith.diagonal[static_cast<std::size_t>(i)];
    const Int& wi = w(i);
    if (d == 0) {
      if (wi != 0)
        throw Error("NotTorsion",
                    "l^m t is not in the image of (1 - sigma) over Z_(l)");
      continue;
    }
    if (wi == 0) continue;
    if (lval(wi, l) < lval(d, l))
      throw Error("NotTorsion",
                  "l^m t is not in the image of (1 - sigma) over Z_(l)");
    y(i) = Rat(wi) / Rat(d);
  }
  RatVec h = decomp.smith.right.cast<Rat>() * y;
  TorsionWitness out{{}, m};
  out.scaled.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out.scaled.emplace_back(h(i), l);
  return out;
}

TorsionWitness solve_torsion_witness(const LatticeWithIsometry& lattice,
                                     const IntVec& t, long m) {
  return solve_torsion_witness(coinvariants(lattice), t, m);
}

}  // namespace torspair
