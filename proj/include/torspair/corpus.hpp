// Instance corpus: standard Gram matrices, bounded root lists, seeded
// isometry recipes, and instance emission.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "torspair/lattice.hpp"

namespace torspair {

// Families: "U", "E8", "I_n" (param = n >= 0), "U^k" (param = k >= 1),
// "K3" (= U + U + U + E8 + E8). Throws Error("UnknownFamily") otherwise.
IntMat standard_lattice(const std::string& family, long param = 0);

// R x = x - <x, v> v for a root v with <v, v> = 2; an isometry of G.
IntMat reflection(const IntMat& gram, const IntVec& root);

// Finite root list behind the reflection recipes: per-block norm-2 vectors
// with coordinates in [-2, 2], plus isotropic+root mixtures between a
// hyperbolic block and any other block.
std::vector<IntVec> bounded_roots(const std::string& family, long param = 0);

// Isometry of the family Gram built from a '+'-separated recipe. Factors:
//   identity | minusI | swap | rot90 | cycle | signed_perm
//   reflections:k | neg_reflections:k | hyperbolic:k | gltwist:c
// Throws Error("GeneratorUnavailable") when a factor does not apply to the
// family.
IntMat random_isometry(const std::string& family, long param,
                       const std::string& recipe, std::uint64_t seed);

// Variant for a raw Gram matrix without a known generator set: only
// identity and minusI are available.
IntMat random_isometry(const IntMat& gram, const std::string& recipe,
                       std::uint64_t seed);

struct InstanceSpec {
  std::string family;
  long param = 0;
  Int l = 2;
  std::string recipe = "minusI";
  std::uint64_t seed = 0;
  std::string name;  // default_name(*this) when empty
};

std::string default_name(const InstanceSpec& spec);

LatticeWithIsometry make_instance(const InstanceSpec& spec);

// Writes <name>.json under directory; returns the path. Bytes are
// deterministic in the spec.
std::filesystem::path emit_instance(const InstanceSpec& spec,
                                    const std::filesystem::path& directory);

}  // namespace torspair
