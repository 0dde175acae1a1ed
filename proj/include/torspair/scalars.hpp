// Prime-local scalar types: the prime l, the local ring Z_(l), and
// canonical values of the torsion pairing in Q_l/Z_l.
#pragma once

#include <string>

#include "torspair/error.hpp"
#include "torspair/numeric.hpp"

namespace torspair {

// Deterministic Miller-Rabin over a fixed base set; exact for n < 3.3e24.
bool is_prime(const Int& n);

// A verified prime. Construction throws Error("NotPrime") otherwise.
class LPrime {
 public:
  explicit LPrime(Int value);

  const Int& value() const noexcept { return value_; }

  friend bool operator==(const LPrime& a, const LPrime& b) {
    return a.value_ == b.value_;
  }

 private:
  Int value_;
};

// l-adic valuation. Throws Error("ZeroInput") on x = 0.
long lval(const Int& x, const LPrime& l);
long lval(const Rat& x, const LPrime& l);

// Element of the local ring Z_(l): a rational whose denominator is coprime
// to l. Construction enforces the invariant.
class LocalRational {
 public:
  LocalRational(Rat value, LPrime prime);

  const Rat& value() const noexcept { return value_; }
  const LPrime& prime() const noexcept { return prime_; }

  friend bool operator==(const LocalRational& a, const LocalRational& b) {
    return a.prime_ == b.prime_ && a.value_ == b.value_;
  }

 private:
  Rat value_;
  LPrime prime_;
};

// Canonical element c / l^e of Q_l/Z_l: either 0/1, or 0 < c < l^e with
// gcd(c, l) = 1 and e >= 1.
class PairingValue {
 public:
  explicit PairingValue(LPrime prime);  // zero element

  const Int& residue() const noexcept { return residue_; }
  unsigned long exponent() const noexcept { return exponent_; }
  const LPrime& prime() const noexcept { return prime_; }
  bool is_zero() const noexcept { return exponent_ == 0; }

  PairingValue operator+(const PairingValue& other) const;
  PairingValue operator-() const;
  PairingValue scaled(const Int& k) const;

  friend bool operator==(const PairingValue& a, const PairingValue& b) {
    return a.prime_ == b.prime_ && a.residue_ == b.residue_ &&
           a.exponent_ == b.exponent_;
  }

  // "c/l^e" with the denominator written out, e.g. "1/2", "5/9", "0/1".
  std::string str() const;

 private:
  PairingValue(Int residue, unsigned long exponent, LPrime prime);

  Int residue_;
  unsigned long exponent_;
  LPrime prime_;

  friend PairingValue reduce_mod_Zl(const Rat& x, const LPrime& l);
};

// Image of a rational in Q_l/Z_l in canonical form. The prime-to-l part of
// the denominator is inverted modulo l^e.
PairingValue reduce_mod_Zl(const Rat& x, const LPrime& l);

}  // namespace torspair
