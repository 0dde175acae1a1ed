// Exact scalar types and small number-theoretic helpers.
#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace torspair {

// Expression templates are disabled so the types behave as plain values
// inside Eigen expressions.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

Int int_pow(const Int& base, unsigned long exp);

// Exponent of l in n. Requires n != 0 and l >= 2.
long int_valuation(Int n, const Int& l);

// Representative of a modulo m in [0, m). Requires m > 0.
Int mod_positive(const Int& a, const Int& m);

// Inverse of a modulo m. Requires m > 0 and gcd(a, m) = 1.
Int mod_inverse(const Int& a, const Int& m);

}  // namespace torspair
