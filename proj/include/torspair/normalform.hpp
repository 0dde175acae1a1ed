// Smith normal form with tracked unimodular transforms, and the
// coinvariant/fixed-space computations built on it.
#pragma once

#include <vector>

#include "torspair/lattice.hpp"
#include "torspair/matrix.hpp"
#include "torspair/scalars.hpp"

namespace torspair {

// left * input * right = diag(diagonal), with left, right unimodular and
// left_inv = left^-1, right_inv = right^-1. Nonzero diagonal entries are
// positive, come first, and each divides the next.
struct SmithDecomposition {
  IntMat left;
  IntMat right;
  IntMat left_inv;
  IntMat right_inv;
  std::vector<Int> diagonal;  // length min(rows, cols)

  Index rank() const {
    Index r = 0;
    for (const Int& d : diagonal)
      if (d != 0) ++r;
    return r;
  }
};

// Deterministic: pivots minimize absolute value, first position wins ties.
SmithDecomposition smith_form(const IntMat& input);

// Basis of the integer kernel as columns; the span is saturated (a direct
// summand), so the basis extends to a basis of Z^n.
IntMat integer_kernel(const IntMat& input);

// Structure of H_Gamma = H / (1 - sigma)H localized at l: free rank,
// l-power torsion exponents (non-decreasing), and generator lifts whose
// classes generate Tors(H_Gamma) = sum of Z/l^{m_i}.
struct CoinvariantDecomposition {
  LPrime prime;
  Index free_rank = 0;
  std::vector<long> torsion_exponents;
  std::vector<Index> torsion_indices;  // positions in smith.diagonal
  std::vector<IntVec> generator_lifts;
  SmithDecomposition smith;  // of I - S

  Index torsion_count() const {
    return static_cast<Index>(torsion_exponents.size());
  }
};

CoinvariantDecomposition coinvariants(const LatticeWithIsometry& lattice);

// Basis (as columns) of the fixed sublattice ker(I - S); saturated.
IntMat fixed_sublattice(const LatticeWithIsometry& lattice);

// Basis (as columns) of { x : <b, x> = 0 for all columns b of basis };
// saturated.
IntMat orthogonal_complement(const LatticeWithIsometry& lattice,
                             const IntMat& basis);

// Witness for a torsion class: h with (I - S) h = l^m t, entries of h in
// the local ring Z_(l). The witness vector is v = h / l^m.
struct TorsionWitness {
  std::vector<LocalRational> scaled;  // h
  long exponent;                      // m

  RatVec value() const;  // h / l^m
};

// Solves (I - S) h = l^m t over Z_(l). Throws Error("NotTorsion") when no
// solution exists, i.e. the class of t is not killed by l^m.
TorsionWitness solve_torsion_witness(const CoinvariantDecomposition& decomp,
                                     const IntVec& t, long m);
TorsionWitness solve_torsion_witness(const LatticeWithIsometry& lattice,
                                     const IntVec& t, long m);

}  // namespace torspair
