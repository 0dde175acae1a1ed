// Characteristic-element criteria at l = 2: the mod-2 characteristic base
// solution, evenness of the form on the orthogonal complement of the fixed
// sublattice, and invariant / odd-period characteristic witnesses.
#pragma once

#include <optional>
#include <vector>

#include "torspair/lattice.hpp"
#include "torspair/matrix.hpp"

namespace torspair {

// w is characteristic when <x, x> = <x, w> mod 2 for all x.
bool is_characteristic(const LatticeWithIsometry& lattice, const IntVec& w);

// Unique solution w0 of G w = diag(G) mod 2, entries in {0, 1}. Requires
// l = 2 (Error("WrongPrime") otherwise).
IntVec characteristic_base(const LatticeWithIsometry& lattice);

// True when <x, x> is even for every x orthogonal to the fixed sublattice.
bool h0_evenness(const LatticeWithIsometry& lattice);

// S-fixed characteristic element, if one exists: w = B x with B a basis of
// ker(1 - S) and w = w0 mod 2.
std::optional<IntVec> find_invariant_characteristic(
    const LatticeWithIsometry& lattice);

struct OddPeriodWitness {
  IntVec witness;
  unsigned long n = 1;  // odd, S^n w = w
};

// Characteristic element fixed by S^{n*}, where n* is the lcm of the odd d
// whose d-th cyclotomic polynomial divides charpoly(S); a single search at
// n* is exhaustive over all odd periods.
std::optional<OddPeriodWitness> find_odd_period_characteristic(
    const LatticeWithIsometry& lattice);

// w' = w + Sw + ... + S^{n-1}w for odd n with S^n w = w; the result is
// S-invariant and characteristic. Violated preconditions throw
// Error("PreconditionViolated") naming the failed assertion.
IntVec symmetrize_characteristic(const LatticeWithIsometry& lattice,
                                 const IntVec& w, unsigned long n);

struct CharacteristicFinding {
  IntVec base_solution;  // w0, entries in {0, 1}
  bool h0_even = false;
  std::optional<IntVec> invariant_witness;
  std::optional<OddPeriodWitness> odd_period_witness;
  bool predicted_alternating = false;  // = h0_even
};

CharacteristicFinding characteristic_findings(
    const LatticeWithIsometry& lattice);

// Coefficients of det(xI - M), ascending degree, exact.
std::vector<Int> characteristic_polynomial(const IntMat& m);

// Coefficients of the d-th cyclotomic polynomial, ascending degree.
std::vector<Int> cyclotomic_polynomial(unsigned long d);

// lcm of the odd d with phi(d) <= rank whose cyclotomic polynomial divides
// charpoly(S).
unsigned long odd_cyclotomic_period(const IntMat& isometry);

}  // namespace torspair
