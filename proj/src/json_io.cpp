#include "torspair/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace torspair {

namespace {

std::int64_t to_json_int(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v < lo || v > hi)
    throw Error("IoError", "integer " + v.str() + " exceeds the JSON range");
  return v.convert_to<std::int64_t>();
}

nlohmann::json matrix_to_json(const IntMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json_int(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vector_to_json(const IntVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json_int(v(i)));
  return out;
}

Int parse_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw Error("ParseError", where + " must be a JSON integer");
  return Int(j.get<std::int64_t>());
}

IntMat parse_matrix(const nlohmann::json& j, Index rank,
                    const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rank)
    throw Error("ParseError", where + " must be an array of " +
                                  std::to_string(rank) + " rows");
  IntMat m(rank, rank);
  for (Index i = 0; i < rank; ++i) {
    const nlohmann::json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != rank)
      throw Error("ParseError", where + " row " + std::to_string(i) +
                                    " must have " + std::to_string(rank) +
                                    " integer entries");
    for (Index k = 0; k < rank; ++k)
      m(i, k) = parse_int(row[static_cast<std::size_t>(k)],
                          where + " entry (" + std::to_string(i) + ", " +
                              std::to_string(k) + ")");
  }
  return m;
}

}  // namespace

nlohmann::json instance_to_json(const LatticeWithIsometry& lattice) {
  nlohmann::json j;
  if (!lattice.name.empty()) j["name"] = lattice.name;
  j["l"] = to_json_int(lattice.prime.value());
  j["rank"] = static_cast<std::int64_t>(lattice.rank());
  j["gram"] = matrix_to_json(lattice.gram);
  j["isometry"] = matrix_to_json(lattice.isometry);
  return j;
}

LatticeWithIsometry instance_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw Error("ParseError", "instance must be a JSON object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key != "name" && key != "l" && key != "rank" && key != "gram" &&
        key != "isometry")
      throw Error("ParseError", "unknown instance key '" + key + "'");
  }
  for (const char* key : {"l", "rank", "gram", "isometry"})
    if (!j.contains(key))
      throw Error("ParseError", std::string("missing instance key '") + key +
                                    "'");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string())
      throw Error("ParseError", "name must be a string");
    name = j["name"].get<std::string>();
  }
  Int l = parse_int(j["l"], "l");
  Int rank_value = parse_int(j["rank"], "rank");
  if (rank_value < 0 || rank_value > 4096)
    throw Error("ParseError", "rank out of range");
  Index rank = rank_value.convert_to<Index>();
  IntMat gram = parse_matrix(j["gram"], rank, "gram");
  IntMat isometry = parse_matrix(j["isometry"], rank, "isometry");
  return validate(l, std::move(gram), std::move(isometry), std::move(name));
}

LatticeWithIsometry load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const LatticeWithIsometry& lattice,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot write " + path.string());
  out << instance_to_json(lattice).dump(2) << '\n';
}

nlohmann::json report_to_json(const AnalysisReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["l"] = to_json_int(report.l);
  j["rank"] = static_cast<std::int64_t>(report.rank);
  j["free_rank"] = static_cast<std::int64_t>(report.decomposition.free_rank);
  j["torsion_exponents"] = report.decomposition.torsion_exponents;
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : report.matrix.values) {
    nlohmann::json out_row = nlohmann::json::array();
    for (const PairingValue& v : row) out_row.push_back(v.str());
    matrix.push_back(std::move(out_row));
  }
  j["pairing_matrix"] = std::move(matrix);
  j["verdicts"] = {{"nondegenerate", report.flags.nondegenerate},
                   {"skewsymmetric", report.flags.skewsymmetric},
                   {"alternating", report.flags.alternating},
                   {"square_order", report.flags.square_order}};
  if (report.criteria) {
    const CharacteristicFinding& c = *report.criteria;
    nlohmann::json crit;
    crit["w0_mod2"] = vector_to_json(c.base_solution);
    crit["h0_even"] = c.h0_even;
    crit["invariant_witness"] =
        c.invariant_witness ? vector_to_json(*c.invariant_witness)
                            : nlohmann::json(nullptr);
    if (c.odd_period_witness) {
      crit["odd_period"] = {
          {"n", c.odd_period_witness->n},
          {"witness", vector_to_json(c.odd_period_witness->witness)}};
    } else {
      crit["odd_period"] = nullptr;
    }
    j["criteria"] = std::move(crit);
  } else {
    j["criteria"] = nullptr;
  }
  j["violations"] = report.violations;
  j["timing_ms"] = report.timing_ms;
  return j;
}

std::string report_to_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "instance: " << (report.name.empty() ? "(unnamed)" : report.name)
      << "  l=" << report.l.str() << "  rank=" << report.rank << '\n';
  out << "free rank: " << report.decomposition.free_rank << '\n';
  out << "torsion exponents:";
  if (report.decomposition.torsion_exponents.empty()) out << " (none)";
  for (long e : report.decomposition.torsion_exponents) out << ' ' << e;
  out << '\n';
  if (report.matrix.size() > 0) {
    out << "pairing matrix:\n";
    for (const auto& row : report.matrix.values) {
      out << " ";
      for (const PairingValue& v : row) out << ' ' << v.str();
      out << '\n';
    }
  }
  const Verdicts& f = report.flags;
  out << "verdicts: nondegenerate=" << (f.nondegenerate ? "yes" : "no")
      << " skewsymmetric=" << (f.skewsymmetric ? "yes" : "no")
      << " alternating=" << (f.alternating ? "yes" : "no")
      << " square_order=" << (f.square_order ? "yes" : "no") << '\n';
  if (report.criteria) {
    const CharacteristicFinding& c = *report.criteria;
    out << "criteria: h0_even=" << (c.h0_even ? "yes" : "no")
        << " invariant_witness=" << (c.invariant_witness ? "yes" : "no")
        << " odd_period=";
    if (c.odd_period_witness)
      out << "n=" << c.odd_period_witness->n;
    else
      out << "none";
    out << '\n';
  }
  for (const std::string& v : report.violations)
    out << "violation: " << v << '\n';
  out << "timing: " << report.timing_ms << " ms\n";
  return out.str();
}

nlohmann::json error_to_json(const Error& error) {
  return {{"error", error.code()}, {"message", error.message()}};
}

}  // namespace torspair
