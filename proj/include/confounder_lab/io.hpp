#pragma once

// File formats: the JSON parameter document, the per-run CSV, the a,d,y
// data CSV, and JSON renderings of every report. All numbers are written
// in the shortest round-trip form with '.' as decimal separator.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "confounder_lab/effects.hpp"
#include "confounder_lab/estimate.hpp"
#include "confounder_lab/mc.hpp"
#include "confounder_lab/model.hpp"
#include "confounder_lab/monotonicity.hpp"

namespace confounder_lab {

inline constexpr std::string_view kSchemaVersion = "v1";

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Locale-independent; throws Error{InvalidInput} unless the whole field parses.
double parse_double(std::string_view field);

// Parameter document:
//   {"graph":"proxy", "p_c":…, "p_d_given_c":[P(d|c),P(d|c̄)],
//    "p_a_given_c":[P(a|c),P(a|c̄)], "mu":[[E[Y|ā,c̄],E[Y|ā,c]],[E[Y|a,c̄],E[Y|a,c]]]}
//   {"graph":"driver", "p_d":…, "p_c_given_d":[P(c|d),P(c|d̄)], "p_a_given_c":…, "mu":…}
// Parsing checks structure only (Error{InvalidInput}); call validate() for ranges.
GraphParams params_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ProxyParams& params);
nlohmann::json to_json(const DriverParams& params);
nlohmann::json to_json(const GraphParams& params);

/// Error{Io} if the file cannot be read, Error{InvalidInput} if it is not JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

nlohmann::json to_json(const EffectSummary& summary);
nlohmann::json to_json(const MonotonicityReport& report);
nlohmann::json to_json(const BoundsVerdict& verdict);
nlohmann::json to_json(const ExperimentSummary& summary);
nlohmann::json to_json(const FigureStats& stats);
nlohmann::json to_json(const PopulationEstimates& est);
nlohmann::json to_json(const EmpiricalRds& rds);
nlohmann::json to_json(const TransportReport& report);

std::string_view to_string(SamplingScheme scheme);

// Per-run CSV. rel_pos is an empty field when undefined; in_between is 0/1.
inline constexpr std::string_view kRunsCsvHeader =
    "run_index,p_c,p_d_given_c,p_d_given_not_c,p_a_given_c,p_a_given_not_c,"
    "mu_not_a_not_c,mu_not_a_c,mu_a_not_c,mu_a_c,"
    "rd_true,rd_obs,rd_crude,y_in_c,y_in_d,in_between,interval_len,rel_pos,youden";

void write_runs_csv(std::ostream& out, std::span<const RunRecord> records);

/// Parses the per-run CSV back into records (params and stored columns only;
/// the MonotonicityReport's A-directions are recomputed from the params).
std::vector<RunRecord> read_runs_csv(std::istream& in);

inline constexpr std::string_view kDataCsvHeader = "a,d,y";

void write_observations_csv(std::ostream& out, std::span<const Observation> rows);

/// Header `a,d,y` required. Error{InvalidInput} with the line number on
/// malformed rows.
std::vector<Observation> read_observations_csv(std::istream& in);

}  // namespace confounder_lab
