#include "torspair/numeric.hpp"

#include <stdexcept>
#include <utility>

namespace torspair {

Int int_pow(const Int& base, unsigned long exp) {
  Int result = 1;
  Int b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    exp >>= 1u;
    if (exp != 0) b *= b;
  }
  return result;
}

long int_valuation(Int n, const Int& l) {
  if (n == 0) throw std::invalid_argument("int_valuation: zero argument");
  if (l < 2) throw std::invalid_argument("int_valuation: modulus below 2");
  long v = 0;
  while (n % l == 0) {
    n /= l;
    ++v;
  }
  return v;
}

Int mod_positive(const Int& a, const Int& m) {
  if (m <= 0) throw std::invalid_argument("mod_positive: modulus not positive");
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int mod_inverse(const Int& a, const Int& m) {
  if (m <= 0) throw std::invalid_argument("mod_inverse: modulus not positive");
  // Extended Euclid on (a mod m, m).
  Int r0 = mod_positive(a, m), r1 = m;
  Int s0 = 1, s1 = 0;
  while (r1 != 0) {
    Int q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: argument not invertible");
  return mod_positive(s0, m);
}

}  // namespace torspair
