// Independent cross-checks: Smith form via determinantal divisors, pairing
// resampling through a separate local-ring solver, and brute-force
// nondegeneracy.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "torspair/pairing.hpp"

namespace torspair {

struct OracleConfig {
  long trials = 100;
  Int enumeration_bound = Int(1) << 20;
  std::uint64_t seed = 0;
};

// Invariant factors via gcds of k x k minors; no elimination shared with
// smith_form. Throws Error("BoundExceeded") when min(rows, cols) > 12.
std::vector<Int> snf_oracle(const IntMat& m);

// Gauss-Jordan solver over the local ring Z_(l) with full minimal-valuation
// pivoting; independent of the Smith-form machinery.
class LocalSolver {
 public:
  LocalSolver(const IntMat& m, LPrime prime);

  // Solves m x = b with x over Z_(l); free coordinates are taken from
  // free_choice in column order. With minimal-valuation pivots, solvability
  // does not depend on the free choice. Returns nullopt when unsolvable.
  std::optional<RatVec> solve(const RatVec& b,
                              const std::vector<Int>& free_choice) const;

  Index rank() const { return rank_; }

 private:
  RatMat reduced_;
  RatMat row_ops_;
  std::vector<Index> pivot_cols_;
  std::vector<Index> free_cols_;
  LPrime prime_;
  Index rank_ = 0;
};

// Recomputes (a, b)_B cfg.trials times with independently perturbed lifts,
// representatives, and witness free coordinates; true when every resampled
// value matches the main computation.
bool resample_pairing(const LatticeWithIsometry& lattice,
                      const CoinvariantDecomposition& decomp,
                      const TorsionClass& a, const TorsionClass& b,
                      const OracleConfig& cfg);

// Enumerates the whole torsion group and counts radical elements. Throws
// Error("BoundExceeded") when the group order exceeds cfg.enumeration_bound.
bool exhaustive_nondegeneracy(const TorsionPairingMatrix& matrix,
                              const OracleConfig& cfg);

}  // namespace torspair
