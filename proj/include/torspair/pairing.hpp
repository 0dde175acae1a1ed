// The torsion pairing on Tors(H_Gamma) with values in Q_l/Z_l, its verdict
// flags, and the bundled analysis entry point.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torspair/criteria.hpp"
#include "torspair/normalform.hpp"

namespace torspair {

// A torsion class given by an integer lift together with the exponent of
// its order: l^order_exponent kills the class, l^{order_exponent-1} does not.
struct TorsionClass {
  IntVec lift;
  long order_exponent = 0;
};

// Computes the order exponent of the class of lift; throws
// Error("NotTorsion") if the class is not l-power torsion modulo the free
// part.
TorsionClass make_torsion_class(const CoinvariantDecomposition& decomp,
                                IntVec lift);

TorsionClass generator_class(const CoinvariantDecomposition& decomp,
                             Index i);

// Class of the sum, with the lift reduced modulo the image of (1 - sigma).
TorsionClass add_classes(const CoinvariantDecomposition& decomp,
                         const TorsionClass& a, const TorsionClass& b);

// (a, b)_B = <u, v> mod Z_l where u lifts a and v is a witness for b.
PairingValue pairing_value(const LatticeWithIsometry& lattice,
                           const CoinvariantDecomposition& decomp,
                           const TorsionClass& a, const TorsionClass& b);

struct TorsionPairingMatrix {
  LPrime prime;
  std::vector<long> exponents;
  std::vector<std::vector<PairingValue>> values;

  Index size() const { return static_cast<Index>(exponents.size()); }
};

TorsionPairingMatrix pairing_matrix(const LatticeWithIsometry& lattice,
                                    const CoinvariantDecomposition& decomp);

struct Verdicts {
  bool nondegenerate = true;
  bool skewsymmetric = true;
  bool alternating = true;
  bool square_order = true;
  long torsion_order_exponent = 0;  // sum of the m_i
};

// Decides all four flags exactly. Nondegeneracy is decided through the
// kernel lattice of the stacked system [A | -l^E I].
Verdicts verdicts(const TorsionPairingMatrix& matrix);

struct AnalysisReport {
  std::string name;
  Int l;
  Index rank = 0;
  CoinvariantDecomposition decomposition;
  TorsionPairingMatrix matrix;
  Verdicts flags;
  std::optional<CharacteristicFinding> criteria;  // present exactly at l = 2
  std::vector<std::string> violations;  // structural claims that failed
  std::int64_t timing_ms = 0;
};

AnalysisReport analyze(const LatticeWithIsometry& lattice);

}  // namespace torspair
