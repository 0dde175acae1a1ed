#include "torspair/scalars.hpp"

#include <array>
#include <utility>

namespace torspair {

namespace {

Int pow_mod(Int base, Int exp, const Int& mod) {
  Int result = 1;
  base = mod_positive(base, mod);
  while (exp > 0) {
    if ((exp & 1) != 0) result = result * base % mod;
    exp >>= 1;
    base = base * base % mod;
  }
  return result;
}

bool miller_rabin_witness(const Int& n, const Int& base, const Int& d, long r) {
  Int x = pow_mod(base, d, n);
  if (x == 1 || x == n - 1) return false;
  for (long i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;  // base witnesses compositeness
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  // Fixed bases: deterministic for n < 3,317,044,064,679,887,385,961,981.
  static constexpr std::array<int, 13> kBases = {2,  3,  5,  7,  11, 13, 17,
                                                 19, 23, 29, 31, 37, 41};
  for (int b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  Int d = n - 1;
  long r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (int b : kBases) {
    if (miller_rabin_witness(n, Int(b), d, r)) return false;
  }
  return true;
}

LPrime::LPrime(Int value) : value_(std::move(value)) {
  if (!is_prime(value_))
    throw Error("NotPrime", "l = " + value_.str() + " is not prime");
}

long lval(const Int& x, const LPrime& l) {
  if (x == 0) throw Error("ZeroInput", "valuation of zero is undefined");
  return int_valuation(x, l.value());
}

long lval(const Rat& x, const LPrime& l) {
  if (x == 0) throw Error("ZeroInput", "valuation of zero is undefined");
  return int_valuation(numerator(x), l.value()) -
         int_valuation(denominator(x), l.value());
}

LocalRational::LocalRational(Rat value, LPrime prime)
    : value_(std::move(value)), prime_(std::move(prime)) {
  if (int_valuation(denominator(value_), prime_.value()) != 0)
    throw Error("NotInvertibleAtL",
                "denominator of " + value_.str() + " is divisible by l");
}

PairingValue::PairingValue(LPrime prime)
    : residue_(0), exponent_(0), prime_(std::move(prime)) {}

PairingValue::PairingValue(Int residue, unsigned long exponent, LPrime prime)
    : residue_(std::move(residue)),
      exponent_(exponent),
      prime_(std::move(prime)) {}

PairingValue PairingValue::operator+(const PairingValue& other) const {
  if (!(prime_ == other.prime_))
    throw Error("WrongPrime", "adding values at different primes");
  unsigned long e = exponent_ > other.exponent_ ? exponent_ : other.exponent_;
  const Int& l = prime_.value();
  Int sum = residue_ * int_pow(l, e - exponent_) +
            other.residue_ * int_pow(l, e - other.exponent_);
  return reduce_mod_Zl(Rat(sum) / Rat(int_pow(l, e)), prime_);
}

PairingValue PairingValue::operator-() const {
  if (is_zero()) return *this;
  Int modulus = int_pow(prime_.value(), exponent_);
  return PairingValue(modulus - residue_, exponent_, prime_);
}

PairingValue PairingValue::scaled(const Int& k) const {
  if (is_zero()) return *this;
  return reduce_mod_Zl(Rat(residue_ * k) / Rat(int_pow(prime_.value(), exponent_)),
                       prime_);
}

std::string PairingValue::str() const {
  return residue_.str() + "/" + int_pow(prime_.value(), exponent_).str();
}

PairingValue reduce_mod_Zl(const Rat& x, const LPrime& l) {
  if (x == 0) return PairingValue(l);
  const Int den = denominator(x);
  long m = int_valuation(den, l.value());
  if (m <= 0) return PairingValue(l);
  Int modulus = int_pow(l.value(), static_cast<unsigned long>(m));
  Int unit = den / modulus;  // coprime to l
  // x = num / (unit * l^m); modulo Z_l replace 1/unit by its inverse mod l^m.
  Int c = mod_positive(numerator(x) * mod_inverse(unit, modulus), modulus);
  return PairingValue(std::move(c), static_cast<unsigned long>(m), l);
}

}  // namespace torspair
