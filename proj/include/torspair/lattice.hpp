// A lattice with isometry: symmetric Gram matrix G, perfect at l, together
// with an integer isometry S satisfying S^T G S = G.
#pragma once

#include <string>

#include "torspair/matrix.hpp"
#include "torspair/scalars.hpp"

namespace torspair {

struct LatticeWithIsometry {
  LPrime prime;
  IntMat gram;
  IntMat isometry;
  std::string name;

  Index rank() const { return gram.rows(); }
};

// Checks, in order: l prime; G square and symmetric; det(G) != 0 and
// coprime to l; S square of matching size with S^T G S = G; det(S) coprime
// to l. Throws Error with the first failing code.
LatticeWithIsometry validate(const Int& l, IntMat gram, IntMat isometry,
                             std::string name = {});

// Bilinear form <x, y> = x^T G y. Throws Error("ShapeMismatch") on length
// mismatch.
Int evaluate_form(const LatticeWithIsometry& lattice, const IntVec& x,
                  const IntVec& y);

// Orthogonal direct sum with block-diagonal isometry. Requires equal primes.
LatticeWithIsometry direct_sum(const LatticeWithIsometry& a,
                               const LatticeWithIsometry& b);

// Basis change by unimodular T: gram' = T^T G T, isometry' = T^-1 S T.
// Throws Error("NotUnimodular") unless |det T| = 1.
LatticeWithIsometry base_change(const LatticeWithIsometry& lattice,
                                const IntMat& transform);

}  // namespace torspair
