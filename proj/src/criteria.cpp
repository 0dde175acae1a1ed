#include "torspair/criteria.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torspair/normalform.hpp"

namespace torspair {

namespace {

using Bits = std::vector<std::uint8_t>;

void require_two(const LatticeWithIsometry& lattice) {
  if (lattice.prime.value() != 2)
    throw Error("WrongPrime", "characteristic criteria require l = 2");
}

Bits mod2_vector(const IntVec& v) {
  Bits out(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i)
    out[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(mod_positive(v(i), 2).convert_to<int>());
  return out;
}

// Solves A x = b over F2 with A given by rows; free variables are set to 0.
std::optional<Bits> f2_solve(std::vector<Bits> rows, Bits rhs,
                             std::size_t cols) {
  const std::size_t n = rows.size();
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t p = r;
    while (p < n && rows[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      for (std::size_t j = c; j < cols; ++j) rows[i][j] ^= rows[r][j];
      rhs[i] ^= rhs[r];
    }
    pivots.emplace_back(r, c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (rhs[i] != 0) return std::nullopt;
  Bits x(cols, 0);
  for (auto [row, col] : pivots) x[col] = rhs[row];
  return x;
}

// Solves basis * x = w0 mod 2 and returns w = basis * x over Z.
std::optional<IntVec> characteristic_in_span(const LatticeWithIsometry& lattice,
                                             const IntMat& basis) {
  const Index n = lattice.rank();
  IntVec w0 = characteristic_base(lattice);
  std::vector<Bits> rows(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    Bits row(static_cast<std::size_t>(basis.cols()));
    for (Index j = 0; j < basis.cols(); ++j)
      row[static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>(mod_positive(basis(i, j), 2).convert_to<int>());
    rows[static_cast<std::size_t>(i)] = std::move(row);
  }
  auto x = f2_solve(std::move(rows), mod2_vector(w0),
                    static_cast<std::size_t>(basis.cols()));
  if (!x) return std::nullopt;
  IntVec lift = IntVec::Zero(basis.cols());
  for (Index j = 0; j < basis.cols(); ++j)
    lift(j) = Int((*x)[static_cast<std::size_t>(j)]);
  IntVec w = basis * lift;
  if (!is_characteristic(lattice, w))
    throw std::logic_error("span solution is not characteristic");
  return w;
}

std::vector<Int> poly_remainder(std::vector<Int> num,
                                const std::vector<Int>& den) {
  // den is monic.
  const std::size_t dn = den.size() - 1;
  while (num.size() > dn) {
    Int lead = num.back();
    if (lead != 0) {
      std::size_t shift = num.size() - 1 - dn;
      for (std::size_t i = 0; i <= dn; ++i) num[shift + i] -= lead * den[i];
    }
    num.pop_back();
  }
  return num;
}

bool poly_divides(const std::vector<Int>& den, const std::vector<Int>& num) {
  if (num.size() < den.size()) return false;
  for (const Int& c : poly_remainder(num, den))
    if (c != 0) return false;
  return true;
}

std::vector<Int> poly_divide_exact(const std::vector<Int>& num,
                                   const std::vector<Int>& den) {
  // den is monic and divides num exactly.
  const std::size_t dn = den.size() - 1;
  std::vector<Int> rem = num;
  std::vector<Int> quot(num.size() - dn, Int(0));
  while (rem.size() > dn) {
    Int lead = rem.back();
    std::size_t shift = rem.size() - 1 - dn;
    quot[shift] = lead;
    if (lead != 0)
      for (std::size_t i = 0; i <= dn; ++i) rem[shift + i] -= lead * den[i];
    rem.pop_back();
  }
  for (const Int& c : rem)
    if (c != 0) throw std::logic_error("inexact polynomial division");
  return quot;
}

unsigned long euler_phi(unsigned long d) {
  unsigned long result = d;
  for (unsigned long p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    result -= result / p;
    while (d % p == 0) d /= p;
  }
  if (d > 1) result -= result / d;
  return result;
}

}  // namespace

bool is_characteristic(const LatticeWithIsometry& lattice, const IntVec& w) {
  require_two(lattice);
  if (w.size() != lattice.rank())
    throw Error("ShapeMismatch", "vector length does not match the rank");
  IntVec gw = lattice.gram * w;
  for (Index i = 0; i < lattice.rank(); ++i)
    if ((gw(i) - lattice.gram(i, i)) % 2 != 0) return false;
  return true;
}

IntVec characteristic_base(const LatticeWithIsometry& lattice) {
  require_two(lattice);
  const Index n = lattice.rank();
  std::vector<Bits> rows(static_cast<std::size_t>(n));
  Bits rhs(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    Bits row(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j)
      row[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(
          mod_positive(lattice.gram(i, j), 2).convert_to<int>());
    rhs[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(i)] = std::move(row);
  }
  auto x = f2_solve(std::move(rows), std::move(rhs),
                    static_cast<std::size_t>(n));
  if (!x)
    throw Error("PreconditionViolated", "Gram matrix is singular mod 2");
  IntVec w0(n);
  for (Index i = 0; i < n; ++i) w0(i) = Int((*x)[static_cast<std::size_t>(i)]);
  return w0;
}

bool h0_evenness(const LatticeWithIsometry& lattice) {
  require_two(lattice);
  IntMat complement =
      orthogonal_complement(lattice, fixed_sublattice(lattice));
  for (Index j = 0; j < complement.cols(); ++j) {
    IntVec c = complement.col(j);
    if (c.dot(lattice.gram * c) % 2 != 0) return false;
  }
  return true;
}

std::optional<IntVec> find_invariant_characteristic(
    const LatticeWithIsometry& lattice) {
  require_two(lattice);
  IntMat basis = fixed_sublattice(lattice);
  auto w = characteristic_in_span(lattice, basis);
  if (w && !same_matrix(lattice.isometry * *w, *w))
    throw std::logic_error("invariant witness moved by the isometry");
  return w;
}

std::optional<OddPeriodWitness> find_odd_period_characteristic(
    const LatticeWithIsometry& lattice) {
  require_two(lattice);
  const Index n = lattice.rank();
  unsigned long nstar = odd_cyclotomic_period(lattice.isometry);
  IntMat power = matrix_power(lattice.isometry, nstar);
  IntMat basis = integer_kernel(IntMat(IntMat::Identity(n, n) - power));
  auto w = characteristic_in_span(lattice, basis);
  if (!w) return std::nullopt;
  if (!same_matrix(power * *w, *w))
    throw std::logic_error("odd-period witness moved by the power");
  return OddPeriodWitness{std::move(*w), nstar};
}

IntVec symmetrize_characteristic(const LatticeWithIsometry& lattice,
                                 const IntVec& w, unsigned long n) {
  require_two(lattice);
  if (n % 2 == 0)
    throw Error("PreconditionViolated", "period n is not odd");
  if (w.size() != lattice.rank())
    throw Error("ShapeMismatch", "vector length does not match the rank");
  if (!same_matrix(matrix_power(lattice.isometry, n) * w, w))
    throw Error("PreconditionViolated", "w is not fixed by the n-th power");
  if (!is_characteristic(lattice, w))
    throw Error("PreconditionViolated", "w is not characteristic");
  IntVec acc = w;
  IntVec cur = w;
  for (unsigned long i = 1; i < n; ++i) {
    cur = lattice.isometry * cur;
    acc += cur;
  }
  if (!same_matrix(lattice.isometry * acc, acc))
    throw Error("PreconditionViolated", "symmetrized element is not invariant");
  if (!is_characteristic(lattice, acc))
    throw Error("PreconditionViolated",
                "symmetrized element is not characteristic");
  return acc;
}

CharacteristicFinding characteristic_findings(
    const LatticeWithIsometry& lattice) {
  require_two(lattice);
  CharacteristicFinding out{characteristic_base(lattice),
                            h0_evenness(lattice),
                            find_invariant_characteristic(lattice),
                            find_odd_period_characteristic(lattice),
                            false};
  out.predicted_alternating = out.h0_even;
  return out;
}

std::vector<Int> characteristic_polynomial(const IntMat& m) {
  if (m.rows() != m.cols())
    throw Error("ShapeMismatch", "characteristic polynomial of a non-square matrix");
  const Index n = m.rows();
  std::vector<Int> coeffs(static_cast<std::size_t>(n) + 1, Int(0));
  coeffs[static_cast<std::size_t>(n)] = 1;
  if (n == 0) return coeffs;
  RatMat a = m.cast<Rat>();
  RatMat am = RatMat::Zero(n, n);  // a * M_0
  Rat c = 1;
  for (Index k = 1; k <= n; ++k) {
    RatMat mk = am + c * RatMat::Identity(n, n);
    am = a * mk;
    c = -am.trace() / Rat(k);
    if (denominator(c) != 1)
      throw std::logic_error("non-integral characteristic coefficient");
    coeffs[static_cast<std::size_t>(n - k)] = numerator(c);
  }
  return coeffs;
}

std::vector<Int> cyclotomic_polynomial(unsigned long d) {
  if (d == 0) throw Error("PreconditionViolated", "cyclotomic index is zero");
  std::vector<Int> poly(d + 1, Int(0));
  poly.front() = -1;
  poly.back() = 1;  // x^d - 1
  for (unsigned long e = 1; e < d; ++e)
    if (d % e == 0) poly = poly_divide_exact(poly, cyclotomic_polynomial(e));
  return poly;
}

unsigned long odd_cyclotomic_period(const IntMat& isometry) {
  const unsigned long r = static_cast<unsigned long>(isometry.rows());
  std::vector<Int> cp = characteristic_polynomial(isometry);
  unsigned long period = 1;
  for (unsigned long d = 1; d <= 2 * r * r + 1; d += 2) {
    if (euler_phi(d) > r) continue;
    if (poly_divides(cyclotomic_polynomial(d), cp))
      period = std::lcm(period, d);
  }
  return period;
}

}  // namespace torspair
