// Acceptance gate: one line per criterion, exit code = number of failures.
//
// Budgets and tolerances are fixed here: worked instances < 10 ms each,
// the seeded property suite >= 500 instances in <= 60 s, oracle agreement
// (1000 Smith samples + exhaustive nondegeneracy) in <= 120 s, 100
// base-change pairs, byte-identical analyze output modulo timing.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "torspair/corpus.hpp"
#include "torspair/json_io.hpp"
#include "torspair/oracle.hpp"

using namespace torspair;

namespace fs = std::filesystem;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
  double seconds() const { return ms() / 1000.0; }
};

struct Gate {
  int failures = 0;
  std::vector<std::string> details;

  void fail(const std::string& line) { details.push_back(line); }

  void report(int index, const std::string& label, bool pass,
              const std::string& stats) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << index << ". " << label;
    if (!stats.empty()) std::cout << " (" << stats << ")";
    std::cout << '\n';
    if (!pass) {
      ++failures;
      for (const std::string& d : details)
        std::cout << "       - " << d << '\n';
    }
    details.clear();
  }
};

std::string fmt_ms(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << ms << " ms";
  return out.str();
}

std::string fmt_s(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << s << " s";
  return out.str();
}

std::vector<std::vector<std::string>> matrix_strings(
    const TorsionPairingMatrix& m) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : m.values) {
    std::vector<std::string> r;
    for (const PairingValue& v : row) r.push_back(v.str());
    out.push_back(std::move(r));
  }
  return out;
}

struct Entry {
  InstanceSpec spec;
  LatticeWithIsometry lattice;
  AnalysisReport report;
};

std::vector<InstanceSpec> build_corpus() {
  std::vector<InstanceSpec> corpus;
  auto add = [&](std::string family, long param, long l, std::string recipe,
                 std::uint64_t seed) {
    corpus.push_back(
        InstanceSpec{std::move(family), param, Int(l), std::move(recipe),
                     seed, ""});
  };
  for (long l : {2L, 3L, 5L}) {
    add("U", 0, l, "identity", 0);
    add("U", 0, l, "minusI", 0);
    add("U", 0, l, "swap", 0);
    for (std::uint64_t s = 0; s < 6; ++s)
      add("U", 0, l, "reflections:" + std::to_string(1 + s % 4), s);
    for (long n = 1; n <= 5; ++n) {
      add("I_n", n, l, "identity", 0);
      add("I_n", n, l, "minusI", 0);
      add("I_n", n, l, "cycle", 0);
      for (std::uint64_t s = 0; s < 8; ++s) add("I_n", n, l, "signed_perm", s);
    }
    add("I_n", 2, l, "rot90", 0);
    add("E8", 0, l, "identity", 0);
    add("E8", 0, l, "minusI", 0);
    for (long k = 1; k <= 6; ++k)
      for (std::uint64_t s = 0; s < 6; ++s)
        add("E8", 0, l, "reflections:" + std::to_string(k), s);
    for (long k : {1L, 3L, 5L})
      for (std::uint64_t s = 0; s < 3; ++s)
        add("E8", 0, l, "neg_reflections:" + std::to_string(k), s);
    for (long k = 1; k <= 3; ++k) {
      add("U^k", k, l, "identity", 0);
      add("U^k", k, l, "minusI", 0);
      add("U^k", k, l, "swap", 0);
      for (std::uint64_t s = 0; s < 10; ++s) add("U^k", k, l, "hyperbolic:5", s);
    }
    for (long c : {1L, 2L, 3L, 5L, 7L, 13L})
      add("U^k", 2, l, "gltwist:" + std::to_string(c), 0);
    for (std::uint64_t s = 0; s < 4; ++s) {
      add("U^k", 2, l, "gltwist:2+hyperbolic:3", s);
      add("U^k", 2, l, "swap+gltwist:3", s);
      add("U^k", 2, l, "gltwist:7+minusI", s);
    }
    for (std::uint64_t s = 0; s < 4; ++s) add("U^k", 3, l, "hyperbolic:6", s);
    add("K3", 0, l, "minusI", 0);
    add("K3", 0, l, "reflections:2", 0);
  }
  return corpus;
}

// One worked instance of criterion 1; returns the analyze duration.
double check_worked(Gate& gate, const char* tag, long l,
                    std::initializer_list<std::initializer_list<long long>> g,
                    std::initializer_list<std::initializer_list<long long>> s,
                    const std::vector<long>& exponents,
                    const std::vector<std::vector<std::string>>& matrix) {
  auto lattice = test::make(l, g, s, tag);
  Timer timer;
  auto report = analyze(lattice);
  double elapsed = timer.ms();
  if (elapsed >= 10.0)
    gate.fail(std::string(tag) + ": analyze took " + fmt_ms(elapsed));
  if (report.decomposition.torsion_exponents != exponents)
    gate.fail(std::string(tag) + ": unexpected torsion exponents");
  if (matrix_strings(report.matrix) != matrix)
    gate.fail(std::string(tag) + ": unexpected pairing matrix");
  if (!report.violations.empty())
    gate.fail(std::string(tag) + ": structural violations reported");
  return elapsed;
}

int cli_run(const std::string& args, const fs::path& out) {
  std::string cmd = std::string("\"") + TORSPAIR_CLI_PATH + "\" " + args +
                    " > \"" + out.string() + "\" 2> /dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  Gate gate;
  std::vector<Entry> entries;

  // 1. Worked instances: exact values, each under 10 ms.
  {
    double worst = 0.0;
    worst = std::max(worst, check_worked(gate, "odd-one", 2, {{1}}, {{-1}},
                                         {1}, {{"1/2"}}));
    auto odd_one = analyze(test::make(2, {{1}}, {{-1}}, "odd-one"));
    if (odd_one.flags.alternating) gate.fail("odd-one: expected non-alternating");
    if (odd_one.flags.square_order) gate.fail("odd-one: expected odd order");
    if (!odd_one.criteria ||
        odd_one.criteria->invariant_witness.has_value() ||
        odd_one.criteria->odd_period_witness.has_value())
      gate.fail("odd-one: expected no characteristic witness");

    worst = std::max(
        worst, check_worked(gate, "u-minus", 2, {{0, 1}, {1, 0}},
                            {{-1, 0}, {0, -1}}, {1, 1},
                            {{"0/1", "1/2"}, {"1/2", "0/1"}}));
    auto u_minus = analyze(test::make(2, {{0, 1}, {1, 0}},
                                      {{-1, 0}, {0, -1}}, "u-minus"));
    if (!u_minus.flags.alternating) gate.fail("u-minus: expected alternating");
    if (!u_minus.flags.square_order) gate.fail("u-minus: expected square order");
    if (!u_minus.criteria || !u_minus.criteria->invariant_witness ||
        !is_zero_matrix(*u_minus.criteria->invariant_witness))
      gate.fail("u-minus: expected the zero invariant witness");

    worst = std::max(worst,
                     check_worked(gate, "rot90", 2, {{1, 0}, {0, 1}},
                                  {{0, -1}, {1, 0}}, {1}, {{"1/2"}}));
    auto rot = analyze(
        test::make(2, {{1, 0}, {0, 1}}, {{0, -1}, {1, 0}}, "rot90"));
    if (rot.flags.alternating) gate.fail("rot90: expected non-alternating");

    worst = std::max(worst, check_worked(gate, "u-swap", 2, {{0, 1}, {1, 0}},
                                         {{0, 1}, {1, 0}}, {}, {}));

    gate.report(1, "worked instances are exact and fast", gate.details.empty(),
                "worst analyze " + fmt_ms(worst));
  }

  // 2. Closed form for S = -I: torsion (Z/2)^rank, pairing (G mod 2)/2.
  {
    long checked = 0;
    for (const char* family : {"U", "I_n", "E8", "K3"}) {
      long param = std::string(family) == "I_n" ? 2 : 0;
      IntMat gram = standard_lattice(family, param);
      auto lattice =
          validate(Int(2), gram,
                   IntMat(-IntMat::Identity(gram.rows(), gram.rows())),
                   family);
      auto decomp = coinvariants(lattice);
      auto matrix = pairing_matrix(lattice, decomp);
      if (decomp.torsion_count() != lattice.rank())
        gate.fail(std::string(family) + ": torsion is not (Z/2)^rank");
      bool all_one = true;
      for (long m : decomp.torsion_exponents) all_one = all_one && m == 1;
      if (!all_one)
        gate.fail(std::string(family) + ": exponent above 1 at -I");
      for (Index i = 0; i < matrix.size(); ++i)
        for (Index j = 0; j < matrix.size(); ++j) {
          std::string expect = gram(i, j) % 2 != 0 ? "1/2" : "0/1";
          if (matrix.values[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(j)]
                  .str() != expect) {
            gate.fail(std::string(family) + ": entry (" + std::to_string(i) +
                      "," + std::to_string(j) + ") != (G mod 2)/2");
            i = matrix.size();
            break;
          }
        }
      ++checked;
    }
    gate.report(2, "minus-identity closed form matches (G mod 2)/2",
                gate.details.empty(), std::to_string(checked) + " Gram matrices");
  }

  // 3. Seeded property suite: skewsymmetry, nondegeneracy, resampled
  //    well-definedness (>= 100 per instance), order bound, odd-l squares.
  {
    Timer timer;
    std::vector<InstanceSpec> corpus = build_corpus();
    long k3_count = 0;
    long resamplings = 0;
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
      const InstanceSpec& spec = corpus[idx];
      auto lattice = make_instance(spec);
      auto report = analyze(lattice);
      const std::string name = lattice.name;
      if (lattice.rank() == 22) ++k3_count;
      else if (lattice.rank() > 12)
        gate.fail(name + ": rank outside the corpus contract");
      if (!report.violations.empty())
        gate.fail(name + ": " + report.violations.front());
      if (!report.flags.skewsymmetric) gate.fail(name + ": not skewsymmetric");
      if (!report.flags.nondegenerate) gate.fail(name + ": degenerate pairing");
      if (spec.l != 2 && !report.flags.square_order)
        gate.fail(name + ": odd-l torsion order is not a square");
      const auto& exps = report.matrix.exponents;
      for (std::size_t i = 0; i < exps.size(); ++i)
        for (std::size_t j = 0; j < exps.size(); ++j)
          if (static_cast<long>(report.matrix.values[i][j].exponent()) >
              std::min(exps[i], exps[j]))
            gate.fail(name + ": pairing value exceeds the order bound");
      const Index k = report.decomposition.torsion_count();
      if (k > 0) {
        long pairs = std::min<long>(static_cast<long>(k) * k, 4);
        OracleConfig cfg;
        cfg.trials = (100 + pairs - 1) / pairs;
        for (long p = 0; p < pairs; ++p) {
          Index i = static_cast<Index>((p / 2) % k);
          Index j = static_cast<Index>(p % k);
          cfg.seed = Rng::derive(1000 + idx, static_cast<std::uint64_t>(p));
          if (!resample_pairing(lattice, report.decomposition,
                                generator_class(report.decomposition, i),
                                generator_class(report.decomposition, j),
                                cfg))
            gate.fail(name + ": resampled pairing value changed");
          resamplings += cfg.trials;
        }
      }
      entries.push_back(Entry{spec, std::move(lattice), std::move(report)});
    }
    if (corpus.size() < 500)
      gate.fail("corpus holds only " + std::to_string(corpus.size()) +
                " instances");
    if (k3_count < 3) gate.fail("fewer than 3 rank-22 instances");
    double elapsed = timer.seconds();
    if (elapsed > 60.0) gate.fail("suite exceeded 60 s: " + fmt_s(elapsed));
    gate.report(3, "property suite holds on the seeded corpus",
                gate.details.empty(),
                std::to_string(corpus.size()) + " instances, " +
                    std::to_string(resamplings) + " resamplings, " +
                    fmt_s(elapsed));
  }

  // 4. Criterion equivalence at l = 2: alternating <=> even complement;
  //    witnesses force alternating with even total exponent.
  {
    long checked = 0, with_witness = 0;
    for (const Entry& e : entries) {
      if (e.report.l != 2) continue;
      ++checked;
      if (!e.report.criteria) {
        gate.fail(e.lattice.name + ": criteria missing at l = 2");
        continue;
      }
      const CharacteristicFinding& c = *e.report.criteria;
      if (e.report.flags.alternating != c.h0_even)
        gate.fail(e.lattice.name + ": alternating != h0 evenness");
      if (c.invariant_witness || c.odd_period_witness) {
        ++with_witness;
        if (!e.report.flags.alternating || !e.report.flags.square_order)
          gate.fail(e.lattice.name + ": witness without alternating square");
      }
    }
    gate.report(4, "alternation criteria agree at l = 2", gate.details.empty(),
                std::to_string(checked) + " instances, " +
                    std::to_string(with_witness) + " with witness");
  }

  // 5. Oracle agreement: Smith diagonals on 1000 random matrices and
  //    brute-force nondegeneracy on every small-torsion corpus instance.
  {
    Timer timer;
    Rng rng(505);
    long smith_checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      Index rows = static_cast<Index>(rng.range(1, 8));
      Index cols = static_cast<Index>(rng.range(1, 8));
      IntMat m = test::random_matrix(rows, cols, rng, 9);
      if (smith_form(m).diagonal != snf_oracle(m)) {
        gate.fail("smith mismatch on sample " + std::to_string(trial));
        break;
      }
      ++smith_checked;
    }
    long enumerated = 0;
    OracleConfig cfg;
    cfg.enumeration_bound = Int(1) << 16;
    for (const Entry& e : entries) {
      Int order = 1;
      for (long m : e.report.decomposition.torsion_exponents)
        order *= int_pow(e.report.l, static_cast<unsigned long>(m));
      if (order > cfg.enumeration_bound) continue;
      if (exhaustive_nondegeneracy(e.report.matrix, cfg) !=
          e.report.flags.nondegenerate)
        gate.fail(e.lattice.name + ": enumeration contradicts the verdict");
      ++enumerated;
    }
    double elapsed = timer.seconds();
    if (elapsed > 120.0)
      gate.fail("oracle agreement exceeded 120 s: " + fmt_s(elapsed));
    gate.report(5, "independent oracles agree", gate.details.empty(),
                std::to_string(smith_checked) + " matrices, " +
                    std::to_string(enumerated) + " enumerations, " +
                    fmt_s(elapsed));
  }

  // 6. Base-change invariance on 100 seeded (instance, transform) pairs.
  {
    Rng rng(606);
    std::vector<const Entry*> small;
    for (const Entry& e : entries)
      if (e.lattice.rank() >= 1 && e.lattice.rank() <= 8)
        small.push_back(&e);
    long checked = 0;
    for (int pair = 0; pair < 100 && !small.empty(); ++pair) {
      const Entry& e = *small[(static_cast<std::size_t>(pair) * 131) %
                              small.size()];
      IntMat t = test::random_unimodular(e.lattice.rank(), rng, 8);
      auto moved = analyze(base_change(e.lattice, t));
      const AnalysisReport& base = e.report;
      bool same =
          moved.decomposition.torsion_exponents ==
              base.decomposition.torsion_exponents &&
          moved.flags.nondegenerate == base.flags.nondegenerate &&
          moved.flags.skewsymmetric == base.flags.skewsymmetric &&
          moved.flags.alternating == base.flags.alternating &&
          moved.flags.square_order == base.flags.square_order;
      if (same && base.criteria) {
        same = moved.criteria.has_value() &&
               moved.criteria->h0_even == base.criteria->h0_even &&
               moved.criteria->invariant_witness.has_value() ==
                   base.criteria->invariant_witness.has_value() &&
               moved.criteria->odd_period_witness.has_value() ==
                   base.criteria->odd_period_witness.has_value();
      }
      if (!same)
        gate.fail(e.lattice.name + ": invariants changed under base change");
      ++checked;
    }
    gate.report(6, "base-change invariance", gate.details.empty(),
                std::to_string(checked) + " pairs");
  }

  // 7. Determinism of the analyze command modulo the timing field.
  {
    fs::path dir = fs::temp_directory_path() / "torspair_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    InstanceSpec spec{"U^k", 2, Int(2), "gltwist:2", 0, ""};
    fs::path instance = emit_instance(spec, dir);
    fs::path out1 = dir / "run1.json";
    fs::path out2 = dir / "run2.json";
    int c1 = cli_run("analyze \"" + instance.string() + "\"", out1);
    int c2 = cli_run("analyze \"" + instance.string() + "\"", out2);
    if (c1 != 0 || c2 != 0) gate.fail("cli analyze exited nonzero");
    std::regex timing("\"timing_ms\": [0-9]+");
    std::string r1 = std::regex_replace(slurp(out1), timing, "\"timing_ms\": X");
    std::string r2 = std::regex_replace(slurp(out2), timing, "\"timing_ms\": X");
    if (r1.empty()) gate.fail("cli produced no output");
    if (r1 != r2) gate.fail("analyze output differs between runs");
    fs::remove_all(dir);
    gate.report(7, "analyze output is deterministic", gate.details.empty(),
                "2 runs compared");
  }

  std::cout << (gate.failures == 0 ? "all criteria passed"
                                   : std::to_string(gate.failures) +
                                         " criteria failed")
            << '\n';
  return gate.failures;
}
