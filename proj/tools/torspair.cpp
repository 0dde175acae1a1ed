// Command-line front end: analyze | gen | check.
//
// Exit codes: 0 success, 2 usage or validation error, 3 detected
// inconsistency (a structural claim failed or an oracle disagreed).
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "torspair/corpus.hpp"
#include "torspair/json_io.hpp"
#include "torspair/oracle.hpp"
#include "torspair/rng.hpp"

namespace {

using namespace torspair;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("IoError", "cannot write " + out_path);
  out << text;
}

std::string render_report(const AnalysisReport& report,
                          const std::string& format) {
  if (format == "text") return report_to_text(report);
  return report_to_json(report).dump(2) + "\n";
}

LatticeWithIsometry load_with_prime(const std::string& path,
                                    std::int64_t l_override) {
  LatticeWithIsometry lattice = load_instance(path);
  if (l_override == 0) return lattice;
  return validate(Int(l_override), std::move(lattice.gram),
                  std::move(lattice.isometry), std::move(lattice.name));
}

int run_analyze(const std::string& path, std::int64_t l_override,
                const std::string& format, const std::string& out_path) {
  LatticeWithIsometry lattice = load_with_prime(path, l_override);
  AnalysisReport report = analyze(lattice);
  write_output(render_report(report, format), out_path);
  if (!report.violations.empty()) {
    nlohmann::json err = {{"error", "InternalInconsistency"},
                          {"violations", report.violations}};
    std::cerr << err.dump() << '\n';
    return 3;
  }
  return 0;
}

int run_gen(const std::string& family, long param, std::int64_t l,
            const std::string& recipe, std::uint64_t seed, long count,
            const std::string& dir, const std::string& format,
            const std::string& out_path) {
  nlohmann::json manifest = nlohmann::json::array();
  std::string text;
  for (long i = 0; i < count; ++i) {
    InstanceSpec spec{family, param, Int(l), recipe, seed + static_cast<std::uint64_t>(i), ""};
    std::filesystem::path path = emit_instance(spec, dir);
    AnalysisReport report = analyze(make_instance(spec));
    manifest.push_back(
        {{"name", default_name(spec)},
         {"path", path.string()},
         {"l", l},
         {"rank", static_cast<std::int64_t>(report.rank)},
         {"free_rank", static_cast<std::int64_t>(report.decomposition.free_rank)},
         {"torsion_exponents", report.decomposition.torsion_exponents},
         {"verdicts",
          {{"nondegenerate", report.flags.nondegenerate},
           {"skewsymmetric", report.flags.skewsymmetric},
           {"alternating", report.flags.alternating},
           {"square_order", report.flags.square_order}}}});
    if (format == "text")
      text += path.string() + "  exponents=" +
              nlohmann::json(report.decomposition.torsion_exponents).dump() +
              "\n";
  }
  if (format != "text") text = manifest.dump(2) + "\n";
  write_output(text, out_path);
  return 0;
}

int run_check(const std::string& path, std::int64_t l_override, long trials,
              std::int64_t enum_bound, std::uint64_t seed,
              const std::string& format, const std::string& out_path) {
  LatticeWithIsometry lattice = load_with_prime(path, l_override);
  AnalysisReport report = analyze(lattice);
  OracleConfig cfg{trials, Int(enum_bound), seed};
  nlohmann::json checks = nlohmann::json::array();
  bool failed = !report.violations.empty();

  // Smith form against the determinantal-divisor oracle.
  {
    nlohmann::json entry{{"name", "smith_vs_minor_gcd"}};
    if (lattice.rank() > 12) {
      entry["status"] = "skipped";
      entry["detail"] = "rank above the minor enumeration bound";
    } else {
      IntMat m = IntMat::Identity(lattice.rank(), lattice.rank()) -
                 lattice.isometry;
      std::vector<Int> expect = snf_oracle(m);
      bool ok = expect.size() == report.decomposition.smith.diagonal.size();
      for (std::size_t i = 0; ok && i < expect.size(); ++i)
        ok = expect[i] == report.decomposition.smith.diagonal[i];
      entry["status"] = ok ? "ok" : "mismatch";
      if (!ok) failed = true;
    }
    checks.push_back(std::move(entry));
  }

  // Pairing well-definedness by resampling over seeded generator pairs.
  {
    nlohmann::json entry{{"name", "pairing_resample"}};
    const Index k = report.decomposition.torsion_count();
    if (k == 0) {
      entry["status"] = "ok";
      entry["detail"] = "trivial torsion";
    } else {
      Rng rng(seed);
      long pairs = std::min<long>(static_cast<long>(k) * k, 10);
      bool ok = true;
      for (long p = 0; p < pairs && ok; ++p) {
        Index i = static_cast<Index>(rng.below(static_cast<std::uint64_t>(k)));
        Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(k)));
        OracleConfig pair_cfg = cfg;
        pair_cfg.seed = Rng::derive(seed, static_cast<std::uint64_t>(p));
        ok = resample_pairing(lattice, report.decomposition,
                              generator_class(report.decomposition, i),
                              generator_class(report.decomposition, j),
                              pair_cfg);
      }
      entry["status"] = ok ? "ok" : "mismatch";
      entry["trials"] = trials;
      if (!ok) failed = true;
    }
    checks.push_back(std::move(entry));
  }

  // Brute-force nondegeneracy within the enumeration bound.
  {
    nlohmann::json entry{{"name", "exhaustive_nondegeneracy"}};
    try {
      bool expect = exhaustive_nondegeneracy(report.matrix, cfg);
      bool ok = expect == report.flags.nondegenerate;
      entry["status"] = ok ? "ok" : "mismatch";
      if (!ok) failed = true;
    } catch (const Error& e) {
      if (e.code() != "BoundExceeded") throw;
      entry["status"] = "skipped";
      entry["detail"] = "torsion order exceeds the enumeration bound";
    }
    checks.push_back(std::move(entry));
  }

  nlohmann::json result{{"name", report.name},
                        {"checks", std::move(checks)},
                        {"violations", report.violations},
                        {"seed", seed}};
  std::string text;
  if (format == "text") {
    for (const auto& entry : result["checks"])
      text += entry["name"].get<std::string>() + ": " +
              entry["status"].get<std::string>() + "\n";
    for (const auto& v : report.violations)
      text += "violation: " + v + "\n";
  } else {
    text = result.dump(2) + "\n";
  }
  write_output(text, out_path);
  if (failed) {
    nlohmann::json err = {{"error", "InternalInconsistency"},
                          {"seed", seed},
                          {"detail", "replay with --seed " + std::to_string(seed)}};
    std::cerr << err.dump() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion pairing analyzer for lattices with isometry"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  auto* cmd_analyze = app.add_subcommand(
      "analyze", "Analyze an instance file and print the report");
  std::string analyze_path, analyze_out;
  std::int64_t analyze_l = 0;
  cmd_analyze->add_option("file", analyze_path, "Instance JSON file")
      ->required();
  cmd_analyze->add_option("--l", analyze_l,
                          "Analyze at this prime instead of the file's l");
  cmd_analyze->add_option("--out", analyze_out, "Write the report here");

  auto* cmd_gen =
      app.add_subcommand("gen", "Generate instance files and a manifest");
  std::string gen_family, gen_recipe, gen_dir = ".", gen_out;
  long gen_param = 0, gen_count = 1;
  std::int64_t gen_l = 2;
  std::uint64_t gen_seed = 0;
  cmd_gen->add_option("--family", gen_family, "U, E8, I_n, U^k or K3")
      ->required();
  cmd_gen->add_option("--param", gen_param, "n for I_n, k for U^k");
  cmd_gen->add_option("--l", gen_l, "Prime l")->capture_default_str();
  cmd_gen->add_option("--isometry", gen_recipe,
                      "Recipe, e.g. minusI or reflections:4");
  cmd_gen->add_option("--seed", gen_seed, "Base seed")->capture_default_str();
  cmd_gen->add_option("--count", gen_count, "Instances to emit (seeds seed..)")
      ->capture_default_str();
  cmd_gen->add_option("--dir", gen_dir, "Output directory")
      ->capture_default_str();
  cmd_gen->add_option("--out", gen_out, "Write the manifest here");

  auto* cmd_check = app.add_subcommand(
      "check", "Analyze plus oracle cross-checks on an instance file");
  std::string check_path, check_out;
  long check_trials = 100;
  std::int64_t check_bound = 1 << 20;
  std::int64_t check_l = 0;
  std::uint64_t check_seed = 0;
  cmd_check->add_option("file", check_path, "Instance JSON file")->required();
  cmd_check->add_option("--l", check_l,
                        "Check at this prime instead of the file's l");
  cmd_check->add_option("--trials", check_trials, "Resampling trials per pair")
      ->capture_default_str();
  cmd_check->add_option("--enum-bound", check_bound,
                        "Exhaustive enumeration bound")
      ->capture_default_str();
  cmd_check->add_option("--seed", check_seed, "Oracle seed")
      ->capture_default_str();
  cmd_check->add_option("--out", check_out, "Write the check report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_analyze))
      return run_analyze(analyze_path, analyze_l, format, analyze_out);
    if (app.got_subcommand(cmd_gen)) {
      if (gen_recipe.empty())
        gen_recipe = gen_family == "I_n" ? "signed_perm" : "reflections:4";
      return run_gen(gen_family, gen_param, gen_l, gen_recipe, gen_seed,
                     gen_count, gen_dir, format, gen_out);
    }
    if (app.got_subcommand(cmd_check))
      return run_check(check_path, check_l, check_trials, check_bound,
                       check_seed, format, check_out);
  } catch (const Error& e) {
    std::cerr << error_to_json(e).dump() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    nlohmann::json err = {{"error", "InternalInconsistency"},
                          {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return 3;
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", "IoError"}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return 2;
  }
  return 2;
}
