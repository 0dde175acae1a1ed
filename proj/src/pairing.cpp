#include "torspair/pairing.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

namespace torspair {

TorsionClass make_torsion_class(const CoinvariantDecomposition& decomp,
                                IntVec lift) {
  const Index n = decomp.smith.left.rows();
  if (lift.size() != n)
    throw Error("ShapeMismatch", "lift length does not match the rank");
  IntVec w = decomp.smith.left * lift;
  long e = 0;
  for (Index i = 0; i < n; ++i) {
    const Int& d = decomp.smith.diagonal[static_cast<std::size_t>(i)];
    if (w(i) == 0) continue;
    if (d == 0)
      throw Error("NotTorsion", "class has a nonzero free component");
    long gap = lval(d, decomp.prime) - lval(w(i), decomp.prime);
    e = std::max(e, gap);
  }
  return TorsionClass{std::move(lift), e};
}

TorsionClass generator_class(const CoinvariantDecomposition& decomp,
                             Index i) {
  if (i < 0 || i >= decomp.torsion_count())
    throw Error("ShapeMismatch", "generator index out of range");
  return TorsionClass{decomp.generator_lifts[static_cast<std::size_t>(i)],
                      decomp.torsion_exponents[static_cast<std::size_t>(i)]};
}

TorsionClass add_classes(const CoinvariantDecomposition& decomp,
                         const TorsionClass& a, const TorsionClass& b) {
  const Index n = decomp.smith.left.rows();
  if (a.lift.size() != n || b.lift.size() != n)
    throw Error("ShapeMismatch", "lift length does not match the rank");
  IntVec w = decomp.smith.left * (a.lift + b.lift);
  // Reduce modulo the image lattice diag(d_i) before mapping back.
  for (Index i = 0; i < n; ++i) {
    const Int& d = decomp.smith.diagonal[static_cast<std::size_t>(i)];
    if (d != 0) w(i) = mod_positive(w(i), d);
  }
  return make_torsion_class(decomp, decomp.smith.left_inv * w);
}

PairingValue pairing_value(const LatticeWithIsometry& lattice,
                           const CoinvariantDecomposition& decomp,
                           const TorsionClass& a, const TorsionClass& b) {
  TorsionWitness witness =
      solve_torsion_witness(decomp, b.lift, b.order_exponent);
  RatVec v = witness.value();
  IntVec gu = lattice.gram * a.lift;
  Rat total = 0;
  for (Index i = 0; i < v.size(); ++i) total += Rat(gu(i)) * v(i);
  return reduce_mod_Zl(total, lattice.prime);
}

TorsionPairingMatrix pairing_matrix(const LatticeWithIsometry& lattice,
                                    const CoinvariantDecomposition& decomp) {
  const Index k = decomp.torsion_count();
  TorsionPairingMatrix out{decomp.prime, decomp.torsion_exponents, {}};
  std::vector<RatVec> witnesses;
  witnesses.reserve(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    TorsionClass g = generator_class(decomp, j);
    witnesses.push_back(
        solve_torsion_witness(decomp, g.lift, g.order_exponent).value());
  }
  out.values.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    IntVec gu = lattice.gram * decomp.generator_lifts[static_cast<std::size_t>(i)];
    std::vector<PairingValue> row;
    row.reserve(static_cast<std::size_t>(k));
    for (Index j = 0; j < k; ++j) {
      const RatVec& v = witnesses[static_cast<std::size_t>(j)];
      Rat total = 0;
      for (Index r = 0; r < v.size(); ++r) total += Rat(gu(r)) * v(r);
      row.push_back(reduce_mod_Zl(total, lattice.prime));
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

namespace {

// Nondegenerate iff the kernel lattice of x -> (sum_j x_j P_ij)_i inside
// sum Z/l^{m_j} is exactly the trivial subgroup, decided through the
// projection lattice of ker [A | -l^E I].
bool decide_nondegenerate(const TorsionPairingMatrix& matrix) {
  const Index k = matrix.size();
  if (k == 0) return true;
  const Int& l = matrix.prime.value();
  unsigned long big = 0;
  for (const auto& row : matrix.values)
    for (const PairingValue& v : row) big = std::max(big, v.exponent());
  long total = 0;
  for (long m : matrix.exponents) total += m;
  if (big == 0) return total == 0;

  Int le = int_pow(l, big);
  IntMat stacked(k, 2 * k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      const PairingValue& v =
          matrix.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      stacked(i, j) = v.residue() * int_pow(l, big - v.exponent());
    }
    for (Index j = 0; j < k; ++j) stacked(i, k + j) = 0;
    stacked(i, k + i) = -le;
  }
  IntMat kernel = integer_kernel(stacked);
  // The stacked matrix has full row rank k, so the kernel has rank k and
  // its projection to the first k coordinates is a finite-index sublattice
  // containing diag(l^{m_j}).
  IntMat projection = kernel.topRows(k);
  Int index = abs(det(projection));
  return index == int_pow(l, static_cast<unsigned long>(total));
}

}  // namespace

Verdicts verdicts(const TorsionPairingMatrix& matrix) {
  Verdicts out;
  const Index k = matrix.size();
  for (long m : matrix.exponents) out.torsion_order_exponent += m;
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      const PairingValue& ij =
          matrix.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const PairingValue& ji =
          matrix.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (!(ij + ji).is_zero()) out.skewsymmetric = false;
      if (i == j && !ij.is_zero()) out.alternating = false;
    }
  if (!out.skewsymmetric) out.alternating = false;
  out.square_order = out.torsion_order_exponent % 2 == 0;
  out.nondegenerate = decide_nondegenerate(matrix);
  return out;
}

namespace {

void collect_violations(const LatticeWithIsometry& lattice,
                        AnalysisReport& report) {
  const TorsionPairingMatrix& p = report.matrix;
  const Index k = p.size();
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      unsigned long e =
          p.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
              .exponent();
      long bound = std::min(p.exponents[static_cast<std::size_t>(i)],
                            p.exponents[static_cast<std::size_t>(j)]);
      if (static_cast<long>(e) > bound)
        report.violations.push_back("order bound violated at entry (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
    }
  if (!report.flags.skewsymmetric)
    report.violations.push_back("pairing is not skewsymmetric");
  if (!report.flags.nondegenerate)
    report.violations.push_back("pairing is degenerate");
  if (lattice.prime.value() != 2 && !report.flags.alternating)
    report.violations.push_back("pairing not alternating at an odd prime");
  if (report.flags.alternating && report.flags.nondegenerate &&
      !report.flags.square_order)
    report.violations.push_back(
        "alternating nondegenerate pairing on a group of non-square order");
  if (report.criteria) {
    if (report.criteria->h0_even != report.flags.alternating)
      report.violations.push_back(
          "alternation differs from evenness on the fixed-part complement");
    bool witness = report.criteria->invariant_witness.has_value() ||
                   report.criteria->odd_period_witness.has_value();
    if (witness && !report.flags.alternating)
      report.violations.push_back(
          "characteristic witness found but pairing is not alternating");
  }
}

}  // namespace

AnalysisReport analyze(const LatticeWithIsometry& lattice) {
  auto start = std::chrono::steady_clock::now();
  CoinvariantDecomposition decomp = coinvariants(lattice);
  TorsionPairingMatrix matrix = pairing_matrix(lattice, decomp);
  Verdicts flags = verdicts(matrix);
  std::optional<CharacteristicFinding> crit;
  if (lattice.prime.value() == 2) crit = characteristic_findings(lattice);
  AnalysisReport report{lattice.name,      lattice.prime.value(),
                        lattice.rank(),    std::move(decomp),
                        std::move(matrix), flags,
                        std::move(crit),   {},
                        0};
  collect_violations(lattice, report);
  auto stop = std::chrono::steady_clock::now();
  report.timing_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
          .count();
  return report;
}

}  // namespace torspair
