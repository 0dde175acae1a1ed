#include "torspair/corpus.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "torspair/json_io.hpp"
#include "torspair/rng.hpp"

namespace torspair {

namespace {

enum class Block { Hyperbolic, E8 };

struct RecipeFactor {
  std::string name;
  long arg = 0;
  bool has_arg = false;
};

std::vector<Block> family_blocks(const std::string& family, long param) {
  if (family == "U") return {Block::Hyperbolic};
  if (family == "E8") return {Block::E8};
  if (family == "U^k") {
    if (param < 1) throw Error("UnknownFamily", "U^k requires param >= 1");
    return std::vector<Block>(static_cast<std::size_t>(param),
                              Block::Hyperbolic);
  }
  if (family == "K3")
    return {Block::Hyperbolic, Block::Hyperbolic, Block::Hyperbolic,
            Block::E8, Block::E8};
  throw Error("UnknownFamily", "no block structure for family " + family);
}

Index block_width(Block b) { return b == Block::Hyperbolic ? 2 : 8; }

IntMat hyperbolic_gram() {
  IntMat u(2, 2);
  u << 0, 1, 1, 0;
  return u;
}

IntMat e8_gram() {
  IntMat g = 2 * IntMat::Identity(8, 8);
  constexpr std::array<std::pair<int, int>, 7> edges = {
      {{0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}};
  for (auto [a, b] : edges) {
    g(a, b) = -1;
    g(b, a) = -1;
  }
  return g;
}

const std::vector<IntVec>& e8_bounded_roots() {
  static const std::vector<IntVec> roots = [] {
    IntMat g = e8_gram();
    std::array<long, 64> form{};
    for (Index i = 0; i < 8; ++i)
      for (Index j = 0; j < 8; ++j)
        form[static_cast<std::size_t>(8 * i + j)] =
            g(i, j).convert_to<long>();
    std::vector<IntVec> out;
    std::array<int, 8> x{};
    x.fill(-2);
    for (;;) {
      long value = 0;
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          value += form[static_cast<std::size_t>(8 * i + j)] * x[i] * x[j];
      if (value == 2) {
        IntVec v(8);
        for (int i = 0; i < 8; ++i) v(i) = x[i];
        out.push_back(std::move(v));
      }
      int pos = 0;
      while (pos < 8 && ++x[static_cast<std::size_t>(pos)] > 2)
        x[static_cast<std::size_t>(pos++)] = -2;
      if (pos == 8) break;
    }
    return out;
  }();
  return roots;
}

std::vector<IntVec> block_roots(Block b) {
  if (b == Block::E8) return e8_bounded_roots();
  std::vector<IntVec> out;
  IntVec v(2);
  v << 1, 1;
  out.push_back(v);
  v << -1, -1;
  out.push_back(v);
  return out;
}

std::vector<IntVec> hyperbolic_isotropics() {
  std::vector<IntVec> out;
  IntVec v(2);
  for (int s : {1, -1, 2, -2}) {
    v << s, 0;
    out.push_back(v);
    v << 0, s;
    out.push_back(v);
  }
  return out;
}

std::vector<RecipeFactor> parse_recipe(const std::string& recipe) {
  std::vector<RecipeFactor> factors;
  std::size_t start = 0;
  while (start <= recipe.size()) {
    std::size_t end = recipe.find('+', start);
    if (end == std::string::npos) end = recipe.size();
    std::string piece = recipe.substr(start, end - start);
    if (piece.empty())
      throw Error("ParseError", "empty factor in recipe '" + recipe + "'");
    RecipeFactor f;
    std::size_t colon = piece.find(':');
    if (colon == std::string::npos) {
      f.name = piece;
    } else {
      f.name = piece.substr(0, colon);
      try {
        std::size_t used = 0;
        f.arg = std::stol(piece.substr(colon + 1), &used);
        if (used != piece.size() - colon - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Error("ParseError", "bad argument in recipe factor '" + piece + "'");
      }
      f.has_arg = true;
    }
    factors.push_back(std::move(f));
    if (end == recipe.size()) break;
    start = end + 1;
  }
  return factors;
}

bool pure_hyperbolic(const std::vector<Block>& blocks) {
  for (Block b : blocks)
    if (b != Block::Hyperbolic) return false;
  return !blocks.empty();
}

// Elementary GL move on the e-coordinates of hyperbolic blocks bi += c*bj,
// compensated on the f-coordinates.
IntMat gl_elementary(Index nblocks, Index bi, Index bj, long c) {
  IntMat f = IntMat::Identity(2 * nblocks, 2 * nblocks);
  f(2 * bi, 2 * bj) = c;
  f(2 * bj + 1, 2 * bi + 1) = -c;
  return f;
}

IntMat factor_matrix(const std::string& family, long param,
                     const std::vector<Block>& blocks, const IntMat& gram,
                     const RecipeFactor& f, Rng& rng) {
  const Index n = gram.rows();
  if (f.name == "identity") return IntMat::Identity(n, n);
  if (f.name == "minusI") return IntMat(-IntMat::Identity(n, n));
  if (f.name == "swap") {
    bool any = false;
    IntMat s = IntMat::Identity(n, n);
    Index off = 0;
    for (Block b : blocks) {
      if (b == Block::Hyperbolic) {
        s(off, off) = 0;
        s(off + 1, off + 1) = 0;
        s(off, off + 1) = 1;
        s(off + 1, off) = 1;
        any = true;
      }
      off += block_width(b);
    }
    if (!any)
      throw Error("GeneratorUnavailable",
                  "swap requires a hyperbolic block in " + family);
    return s;
  }
  if (f.name == "rot90") {
    if (family != "I_n" || param != 2)
      throw Error("GeneratorUnavailable", "rot90 requires the family I_n with n = 2");
    IntMat s(2, 2);
    s << 0, -1, 1, 0;
    return s;
  }
  if (f.name == "cycle") {
    if (family != "I_n")
      throw Error("GeneratorUnavailable", "cycle requires the family I_n");
    if (n == 0) return IntMat::Identity(0, 0);
    IntMat s = IntMat::Zero(n, n);
    for (Index i = 0; i < n; ++i) s((i + 1) % n, i) = 1;
    return s;
  }
  if (f.name == "signed_perm") {
    if (family != "I_n")
      throw Error("GeneratorUnavailable", "signed_perm requires the family I_n");
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index(0));
    for (Index i = n - 1; i > 0; --i) {
      Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(j)]);
    }
    IntMat s = IntMat::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      s(perm[static_cast<std::size_t>(i)], i) = rng.coin() ? 1 : -1;
    return s;
  }
  if (f.name == "reflections" || f.name == "neg_reflections") {
    std::vector<IntVec> roots = bounded_roots(family, param);
    if (roots.empty())
      throw Error("GeneratorUnavailable",
                  "no bounded root list for family " + family);
    long count = f.has_arg ? f.arg : 3;
    if (count < 0) throw Error("ParseError", "negative reflection count");
    IntMat s = IntMat::Identity(n, n);
    for (long i = 0; i < count; ++i) {
      const IntVec& v =
          roots[static_cast<std::size_t>(rng.below(roots.size()))];
      s = s * reflection(gram, v);
    }
    if (f.name == "neg_reflections") s = -s;
    return s;
  }
  if (f.name == "hyperbolic") {
    if (!pure_hyperbolic(blocks))
      throw Error("GeneratorUnavailable",
                  "hyperbolic moves require the families U or U^k");
    const Index nblocks = static_cast<Index>(blocks.size());
    long count = f.has_arg ? f.arg : 3;
    IntMat s = IntMat::Identity(n, n);
    for (long i = 0; i < count; ++i) {
      unsigned kind = static_cast<unsigned>(rng.below(nblocks > 1 ? 3 : 2));
      Index b = static_cast<Index>(rng.below(static_cast<std::uint64_t>(nblocks)));
      IntMat step = IntMat::Identity(n, n);
      if (kind == 0) {  // swap e_b <-> f_b
        step(2 * b, 2 * b) = 0;
        step(2 * b + 1, 2 * b + 1) = 0;
        step(2 * b, 2 * b + 1) = 1;
        step(2 * b + 1, 2 * b) = 1;
      } else if (kind == 1) {  // negate the block
        step(2 * b, 2 * b) = -1;
        step(2 * b + 1, 2 * b + 1) = -1;
      } else {
        Index b2 = static_cast<Index>(
            rng.below(static_cast<std::uint64_t>(nblocks - 1)));
        if (b2 >= b) ++b2;
        long c = rng.range(1, 2) * (rng.coin() ? 1 : -1);
        step = gl_elementary(nblocks, b, b2, c);
      }
      s = s * step;
    }
    return s;
  }
  if (f.name == "gltwist") {
    if (!pure_hyperbolic(blocks) || blocks.size() < 2)
      throw Error("GeneratorUnavailable",
                  "gltwist requires the family U^k with k >= 2");
    long c = f.has_arg ? f.arg : 2;
    IntMat s = IntMat::Identity(n, n);
    // e-block action [[0, -1], [1, -c]] on the first two blocks, inverse
    // transpose [[-c, -1], [1, 0]] on the f-coordinates.
    s(0, 0) = 0;
    s(0, 2) = -1;
    s(2, 0) = 1;
    s(2, 2) = -c;
    s(1, 1) = -c;
    s(1, 3) = -1;
    s(3, 1) = 1;
    s(3, 3) = 0;
    return s;
  }
  throw Error("GeneratorUnavailable", "unknown recipe factor '" + f.name + "'");
}

}  // namespace

IntMat standard_lattice(const std::string& family, long param) {
  if (family == "U") return hyperbolic_gram();
  if (family == "E8") return e8_gram();
  if (family == "I_n") {
    if (param < 0) throw Error("UnknownFamily", "I_n requires param >= 0");
    return IntMat::Identity(param, param);
  }
  if (family == "U^k" || family == "K3") {
    std::vector<Block> blocks = family_blocks(family, param);
    Index n = 0;
    for (Block b : blocks) n += block_width(b);
    IntMat g = IntMat::Zero(n, n);
    Index off = 0;
    for (Block b : blocks) {
      Index w = block_width(b);
      g.block(off, off, w, w) =
          b == Block::Hyperbolic ? hyperbolic_gram() : e8_gram();
      off += w;
    }
    return g;
  }
  throw Error("UnknownFamily", "unknown family " + family);
}

IntMat reflection(const IntMat& gram, const IntVec& root) {
  if (root.size() != gram.rows())
    throw Error("ShapeMismatch", "root length does not match the rank");
  Int norm = root.dot(gram * root);
  if (norm != 2)
    throw Error("PreconditionViolated", "reflection requires <v, v> = 2");
  return IntMat(IntMat::Identity(gram.rows(), gram.rows()) -
                root * (root.transpose() * gram));
}

std::vector<IntVec> bounded_roots(const std::string& family, long param) {
  if (family == "I_n") return {};
  std::vector<Block> blocks = family_blocks(family, param);
  std::vector<Index> offsets;
  Index n = 0;
  for (Block b : blocks) {
    offsets.push_back(n);
    n += block_width(b);
  }
  std::vector<IntVec> out;
  const Index nb = static_cast<Index>(blocks.size());
  for (Index i = 0; i < nb; ++i)
    for (const IntVec& r : block_roots(blocks[static_cast<std::size_t>(i)])) {
      IntVec v = IntVec::Zero(n);
      v.segment(offsets[static_cast<std::size_t>(i)], r.size()) = r;
      out.push_back(std::move(v));
    }
  std::vector<IntVec> isotropics = hyperbolic_isotropics();
  for (Index i = 0; i < nb; ++i) {
    if (blocks[static_cast<std::size_t>(i)] != Block::Hyperbolic) continue;
    for (Index j = 0; j < nb; ++j) {
      if (j == i) continue;
      for (const IntVec& iso : isotropics)
        for (const IntVec& r :
             block_roots(blocks[static_cast<std::size_t>(j)])) {
          IntVec v = IntVec::Zero(n);
          v.segment(offsets[static_cast<std::size_t>(i)], 2) = iso;
          v.segment(offsets[static_cast<std::size_t>(j)], r.size()) = r;
          out.push_back(std::move(v));
        }
    }
  }
  return out;
}

IntMat random_isometry(const std::string& family, long param,
                       const std::string& recipe, std::uint64_t seed) {
  IntMat gram = standard_lattice(family, param);
  std::vector<Block> blocks;
  if (family != "I_n") blocks = family_blocks(family, param);
  Rng rng(seed);
  IntMat s = IntMat::Identity(gram.rows(), gram.rows());
  for (const RecipeFactor& f : parse_recipe(recipe))
    s = s * factor_matrix(family, param, blocks, gram, f, rng);
  if (!same_matrix(s.transpose() * gram * s, gram))
    throw std::logic_error("recipe produced a non-isometry");
  return s;
}

IntMat random_isometry(const IntMat& gram, const std::string& recipe,
                       std::uint64_t seed) {
  (void)seed;
  const Index n = gram.rows();
  for (const RecipeFactor& f : parse_recipe(recipe)) {
    if (f.name != "identity" && f.name != "minusI")
      throw Error("GeneratorUnavailable",
                  "no generator set for a custom Gram matrix");
  }
  IntMat s = IntMat::Identity(n, n);
  for (const RecipeFactor& f : parse_recipe(recipe))
    if (f.name == "minusI") s = -s;
  return s;
}

std::string default_name(const InstanceSpec& spec) {
  std::string family = spec.family;
  if (spec.family == "I_n") family = "I" + std::to_string(spec.param);
  if (spec.family == "U^k") family = "U" + std::to_string(spec.param);
  std::string recipe = spec.recipe;
  for (char& c : recipe)
    if (c == ':' || c == '+') c = '_';
  return family + "-" + recipe + "-l" + spec.l.str() + "-s" +
         std::to_string(spec.seed);
}

LatticeWithIsometry make_instance(const InstanceSpec& spec) {
  IntMat gram = standard_lattice(spec.family, spec.param);
  IntMat iso = random_isometry(spec.family, spec.param, spec.recipe, spec.seed);
  return validate(spec.l, std::move(gram), std::move(iso),
                  spec.name.empty() ? default_name(spec) : spec.name);
}

std::filesystem::path emit_instance(const InstanceSpec& spec,
                                    const std::filesystem::path& directory) {
  LatticeWithIsometry lattice = make_instance(spec);
  std::filesystem::create_directories(directory);
  std::filesystem::path path = directory / (lattice.name + ".json");
  save_instance(lattice, path);
  return path;
}

}  // namespace torspair
