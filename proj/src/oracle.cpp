#include "torspair/oracle.hpp"

#include <algorithm>
#include <utility>

#include "torspair/rng.hpp"

namespace torspair {

namespace {

// Enumerates size-k subsets of [0, n); visit returns false to stop early.
template <typename Visit>
bool for_each_subset(Index n, Index k, std::vector<Index>& subset,
                     Visit&& visit) {
  if (static_cast<Index>(subset.size()) == k) return visit(subset);
  Index start = subset.empty() ? 0 : subset.back() + 1;
  Index remaining = k - static_cast<Index>(subset.size());
  for (Index i = start; i + remaining <= n; ++i) {
    subset.push_back(i);
    if (!for_each_subset(n, k, subset, visit)) {
      subset.pop_back();
      return false;
    }
    subset.pop_back();
  }
  return true;
}

long rat_valuation(const Rat& x, const LPrime& l) {
  return int_valuation(numerator(x), l.value()) -
         int_valuation(denominator(x), l.value());
}

bool is_local(const Rat& x, const LPrime& l) {
  return int_valuation(denominator(x), l.value()) == 0;
}

}  // namespace

std::vector<Int> snf_oracle(const IntMat& m) {
  const Index steps = std::min(m.rows(), m.cols());
  if (steps > 12)
    throw Error("BoundExceeded", "minor enumeration limited to size 12");
  std::vector<Int> factors(static_cast<std::size_t>(steps), Int(0));
  Int prev = 1;
  for (Index k = 1; k <= steps; ++k) {
    Int g = 0;
    std::vector<Index> rows_subset, cols_subset;
    for_each_subset(m.rows(), k, rows_subset, [&](const std::vector<Index>& r) {
      return for_each_subset(
          m.cols(), k, cols_subset, [&](const std::vector<Index>& c) {
            IntMat minor(k, k);
            for (Index i = 0; i < k; ++i)
              for (Index j = 0; j < k; ++j)
                minor(i, j) = m(r[static_cast<std::size_t>(i)],
                                c[static_cast<std::size_t>(j)]);
            g = gcd(g, det(minor));
            return g != prev;  // g is always a multiple of prev
          });
    });
    if (g == 0) break;  // all larger minors vanish as well
    factors[static_cast<std::size_t>(k - 1)] = g / prev;
    prev = g;
  }
  return factors;
}

LocalSolver::LocalSolver(const IntMat& m, LPrime prime)
    : reduced_(m.cast<Rat>()),
      row_ops_(RatMat::Identity(m.rows(), m.rows())),
      prime_(std::move(prime)) {
  const Index rows = m.rows(), cols = m.cols();
  std::vector<bool> used_col(static_cast<std::size_t>(cols), false);
  for (Index r = 0; r < rows; ++r) {
    Index pi = -1, pj = -1;
    long best = 0;
    for (Index i = r; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) {
        if (used_col[static_cast<std::size_t>(j)] || reduced_(i, j) == 0)
          continue;
        long v = rat_valuation(reduced_(i, j), prime_);
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    reduced_.row(r).swap(reduced_.row(pi));
    row_ops_.row(r).swap(row_ops_.row(pi));
    for (Index i = 0; i < rows; ++i) {
      if (i == r || reduced_(i, pj) == 0) continue;
      Rat f = reduced_(i, pj) / reduced_(r, pj);
      reduced_.row(i) -= f * reduced_.row(r);
      row_ops_.row(i) -= f * row_ops_.row(r);
    }
    used_col[static_cast<std::size_t>(pj)] = true;
    pivot_cols_.push_back(pj);
    ++rank_;
  }
  for (Index j = 0; j < cols; ++j)
    if (!used_col[static_cast<std::size_t>(j)]) free_cols_.push_back(j);
}

std::optional<RatVec> LocalSolver::solve(
    const RatVec& b, const std::vector<Int>& free_choice) const {
  if (b.size() != row_ops_.rows())
    throw Error("ShapeMismatch", "right-hand side length mismatch");
  RatVec c = row_ops_ * b;
  for (Index r = rank_; r < c.size(); ++r)
    if (c(r) != 0) return std::nullopt;
  RatVec x = RatVec::Zero(reduced_.cols());
  for (std::size_t i = 0; i < free_cols_.size(); ++i)
    x(free_cols_[i]) = i < free_choice.size() ? Rat(free_choice[i]) : Rat(0);
  for (Index r = 0; r < rank_; ++r) {
    Index pc = pivot_cols_[static_cast<std::size_t>(r)];
    Rat acc = c(r);
    for (Index f : free_cols_) acc -= reduced_(r, f) * x(f);
    Rat value = acc / reduced_(r, pc);
    if (value != 0 && !is_local(value, prime_)) return std::nullopt;
    x(pc) = value;
  }
  return x;
}

bool resample_pairing(const LatticeWithIsometry& lattice,
                      const CoinvariantDecomposition& decomp,
                      const TorsionClass& a, const TorsionClass& b,
                      const OracleConfig& cfg) {
  const Index n = lattice.rank();
  PairingValue baseline = pairing_value(lattice, decomp, a, b);
  IntMat m = IntMat::Identity(n, n) - lattice.isometry;
  RatMat m_rat = m.cast<Rat>();
  LocalSolver solver(m, lattice.prime);
  Int scale = int_pow(lattice.prime.value(),
                      static_cast<unsigned long>(b.order_exponent));
  for (long trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(trial)));
    IntVec g(n), h(n);
    for (Index i = 0; i < n; ++i) g(i) = Int(rng.range(-3, 3));
    for (Index i = 0; i < n; ++i) h(i) = Int(rng.range(-3, 3));
    IntVec lift = a.lift + m * g;          // same class of a
    IntVec rep = b.lift + m * h;           // same class of b
    std::vector<Int> free_choice(static_cast<std::size_t>(n));
    for (auto& v : free_choice) v = Int(rng.range(-3, 3));
    RatVec rhs = (scale * rep).cast<Rat>();
    auto x = solver.solve(rhs, free_choice);
    if (!x) return false;
    if (!same_matrix(m_rat * *x, rhs)) return false;
    Rat total = 0;
    IntVec gu = lattice.gram * lift;
    for (Index i = 0; i < n; ++i) total += Rat(gu(i)) * (*x)(i) / Rat(scale);
    if (!(reduce_mod_Zl(total, lattice.prime) == baseline)) return false;
  }
  return true;
}

bool exhaustive_nondegeneracy(const TorsionPairingMatrix& matrix,
                              const OracleConfig& cfg) {
  const Index k = matrix.size();
  const Int& l = matrix.prime.value();
  Int order = 1;
  std::vector<Int> limits;
  for (long m : matrix.exponents) {
    limits.push_back(int_pow(l, static_cast<unsigned long>(m)));
    order *= limits.back();
    if (order > cfg.enumeration_bound)
      throw Error("BoundExceeded",
                  "torsion order exceeds the enumeration bound");
  }
  if (k == 0) return true;
  std::vector<Int> digits(static_cast<std::size_t>(k), Int(0));
  Int radical_count = 0;
  for (;;) {
    bool in_radical = true;
    for (Index i = 0; i < k && in_radical; ++i) {
      PairingValue sum(matrix.prime);
      for (Index j = 0; j < k; ++j)
        sum = sum +
              matrix.values[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(j)]
                  .scaled(digits[static_cast<std::size_t>(j)]);
      if (!sum.is_zero()) in_radical = false;
    }
    if (in_radical) ++radical_count;
    // Mixed-radix increment.
    Index pos = 0;
    while (pos < k) {
      Int& d = digits[static_cast<std::size_t>(pos)];
      ++d;
      if (d < limits[static_cast<std::size_t>(pos)]) break;
      d = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  return radical_count == 1;
}

}  // namespace torspair
