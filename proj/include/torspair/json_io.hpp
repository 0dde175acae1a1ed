// Strict JSON (de)serialization for instances and analysis reports.
#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "torspair/lattice.hpp"
#include "torspair/pairing.hpp"

namespace torspair {

// {"name": string?, "l": int, "rank": int, "gram": [[int]],
//  "isometry": [[int]]}; row-major, every entry a JSON integer. Unknown or
// missing keys and non-integer entries raise Error("ParseError"); the
// decoded triple is then validated.
nlohmann::json instance_to_json(const LatticeWithIsometry& lattice);
LatticeWithIsometry instance_from_json(const nlohmann::json& j);

LatticeWithIsometry load_instance(const std::filesystem::path& path);
void save_instance(const LatticeWithIsometry& lattice,
                   const std::filesystem::path& path);

// Report schema: name, l, rank, free_rank, torsion_exponents,
// pairing_matrix (strings "c/l^m"), verdicts, criteria (null unless l = 2),
// violations, timing_ms. Keys are emitted sorted, so bytes are
// deterministic apart from timing_ms.
nlohmann::json report_to_json(const AnalysisReport& report);
std::string report_to_text(const AnalysisReport& report);

nlohmann::json error_to_json(const Error& error);

}  // namespace torspair
