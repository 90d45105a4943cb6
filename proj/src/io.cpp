#include "confounder_lab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "confounder_lab/errors.hpp"

namespace confounder_lab {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view field) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || first == last) {
    throw Error(ErrorKind::InvalidInput, "not a number: '" + std::string(field) + "'");
  }
  return v;
}

namespace {

double number_field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_number()) {
    throw Error(ErrorKind::InvalidInput, std::string("missing numeric field '") + key + "'");
  }
  return it->get<double>();
}

Conditional pair_field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
      !(*it)[1].is_number()) {
    throw Error(ErrorKind::InvalidInput,
                std::string("field '") + key + "' must be an array of two numbers");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

OutcomeMeans mu_field(const json& doc) {
  const auto it = doc.find("mu");
  const char* msg = "field 'mu' must be a 2x2 array of numbers";
  if (it == doc.end() || !it->is_array() || it->size() != 2) {
    throw Error(ErrorKind::InvalidInput, msg);
  }
  OutcomeMeans mu;
  for (int a = 0; a < 2; ++a) {
    const json& row = (*it)[a];
    if (!row.is_array() || row.size() != 2) throw Error(ErrorKind::InvalidInput, msg);
    for (int c = 0; c < 2; ++c) {
      if (!row[c].is_number()) throw Error(ErrorKind::InvalidInput, msg);
      mu.mean[a][c] = row[c].get<double>();
    }
  }
  return mu;
}

json pair_json(const Conditional& c) { return json::array({c.given_1, c.given_0}); }

json mu_json(const OutcomeMeans& mu) {
  return json::array({json::array({mu.mean[0][0], mu.mean[0][1]}),
                      json::array({mu.mean[1][0], mu.mean[1][1]})});
}

json matrix_json(const std::array<std::array<double, 2>, 2>& m) {
  return json::array({json::array({m[0][0], m[0][1]}), json::array({m[1][0], m[1][1]})});
}

// NaN/inf are not JSON numbers.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

GraphParams params_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::InvalidInput, "parameter document must be an object");
  const auto graph = doc.find("graph");
  if (graph == doc.end() || !graph->is_string()) {
    throw Error(ErrorKind::InvalidInput, "missing string field 'graph'");
  }
  const std::string kind = graph->get<std::string>();
  if (kind == "proxy") {
    ProxyParams p;
    p.p_c = number_field(doc, "p_c");
    p.p_d_given_c = pair_field(doc, "p_d_given_c");
    p.p_a_given_c = pair_field(doc, "p_a_given_c");
    p.mu = mu_field(doc);
    return p;
  }
  if (kind == "driver") {
    DriverParams p;
    p.p_d = number_field(doc, "p_d");
    p.p_c_given_d = pair_field(doc, "p_c_given_d");
    p.p_a_given_c = pair_field(doc, "p_a_given_c");
    p.mu = mu_field(doc);
    return p;
  }
  throw Error(ErrorKind::InvalidInput, "'graph' must be \"proxy\" or \"driver\"");
}

json to_json(const ProxyParams& p) {
  return {{"graph", "proxy"},
          {"p_c", p.p_c},
          {"p_d_given_c", pair_json(p.p_d_given_c)},
          {"p_a_given_c", pair_json(p.p_a_given_c)},
          {"mu", mu_json(p.mu)}};
}

json to_json(const DriverParams& p) {
  return {{"graph", "driver"},
          {"p_d", p.p_d},
          {"p_c_given_d", pair_json(p.p_c_given_d)},
          {"p_a_given_c", pair_json(p.p_a_given_c)},
          {"mu", mu_json(p.mu)}};
}

json to_json(const GraphParams& params) {
  return std::visit([](const auto& p) { return to_json(p); }, params);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

json to_json(const EffectSummary& s) {
  return {{"rd_true", s.rd_true},           {"rd_obs", s.rd_obs},
          {"rd_crude", s.rd_crude},         {"e_y_a", s.e_y_do.treated},
          {"e_y_not_a", s.e_y_do.control},  {"s_a", s.s.treated},
          {"s_not_a", s.s.control}};
}

json to_json(const MonotonicityReport& r) {
  return {{"y_in_d", to_string(r.y_in_d)},
          {"y_in_c", to_string(r.y_in_c)},
          {"a_in_d", to_string(r.a_in_d)},
          {"a_in_c", to_string(r.a_in_c)}};
}

json to_json(const BoundsVerdict& v) {
  return {{"s_a_vs_e_y_a", to_string(v.treated)}, {"s_not_a_vs_e_y_not_a", to_string(v.control)}};
}

std::string_view to_string(SamplingScheme scheme) {
  return scheme == SamplingScheme::NormalizedWeights ? "normalized" : "uniform";
}

json to_json(const ExperimentSummary& s) {
  json table = json::array();
  for (const auto& row : s.table) table.push_back(json::array({row[0], row[1], row[2]}));
  return {{"n_runs", s.n_runs},
          {"seed", s.seed},
          {"scheme", to_string(s.scheme)},
          {"table_rows", "y_in_c: nondecreasing, nonincreasing, neither"},
          {"table_cols", "y_in_d: nondecreasing, nonincreasing, neither"},
          {"table", table},
          {"n_in_between_by_row", s.n_in_between_by_row},
          {"n_in_between", s.n_in_between()},
          {"n_monotone_in_d", s.n_monotone_in_d()},
          {"off_block", s.off_block_count()},
          {"constant_tabulated_as", "nondecreasing"},
          {"n_constant", s.n_constant}};
}

json to_json(const FigureStats& f) {
  json edges = json::array();
  for (std::size_t k = 0; k <= f.interval_histogram.counts.size(); ++k) {
    edges.push_back(f.interval_histogram.lo + f.interval_histogram.bin_width() * k);
  }
  return {{"n_qualifying", f.n_qualifying},
          {"interval_len_histogram", {{"edges", edges}, {"counts", f.interval_histogram.counts}}},
          {"median_rel_pos", number_or_null(f.median_rel_pos)},
          {"rank_corr_abs_youden_rel_pos", number_or_null(f.rank_corr_abs_youden_rel_pos)}};
}

json to_json(const PopulationEstimates& e) {
  json counts = json::array({json::array({e.n[0][0], e.n[0][1]}),
                             json::array({e.n[1][0], e.n[1][1]})});
  return {{"e_y_given_ad", matrix_json(e.e_y_ad)},
          {"p_a_given_d", json::array({e.e_a_d[1], e.e_a_d[0]})},
          {"p_d", e.p_d},
          {"stratum_counts", counts},
          {"n_total", e.n_total}};
}

json to_json(const EmpiricalRds& r) {
  return {{"rd_obs", r.rd_obs},
          {"rd_crude", r.rd_crude},
          {"se_rd_obs", r.se_obs},
          {"se_rd_crude", r.se_crude}};
}

json to_json(const TransportReport& r) {
  return {{"e_y_given_ad", matrix_json(r.e_y_ad)},
          {"p_a_given_d", json::array({r.e_a_d[1], r.e_a_d[0]})},
          {"y_in_d", to_string(r.y_in_d)},
          {"a_in_d", to_string(r.a_in_d)},
          {"alignment", to_string(r.alignment)},
          {"verdict", to_string(r.verdict)}};
}

void write_runs_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << kRunsCsvHeader << '\n';
  for (const auto& r : records) {
    const auto& p = r.params;
    out << r.index << ',' << format_double(p.p_c) << ',' << format_double(p.p_d_given_c.given_1)
        << ',' << format_double(p.p_d_given_c.given_0) << ','
        << format_double(p.p_a_given_c.given_1) << ',' << format_double(p.p_a_given_c.given_0);
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) out << ',' << format_double(p.mu(a, c));
    out << ',' << format_double(r.summary.rd_true) << ',' << format_double(r.summary.rd_obs)
        << ',' << format_double(r.summary.rd_crude) << ',' << to_string(r.report.y_in_c) << ','
        << to_string(r.report.y_in_d) << ',' << (r.in_between ? 1 : 0) << ','
        << format_double(r.interval_len) << ',';
    if (r.rel_pos) out << format_double(*r.rel_pos);
    out << ',' << format_double(r.youden) << '\n';
  }
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

int parse_bit(std::string_view field, std::size_t line_no, const char* name) {
  field = trim(field);
  if (field == "0") return 0;
  if (field == "1") return 1;
  throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": " + name +
                                           " must be 0 or 1, got '" + std::string(field) + "'");
}

}  // namespace

std::vector<RunRecord> read_runs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kRunsCsvHeader) {
    throw Error(ErrorKind::InvalidInput, "runs CSV: unexpected header");
  }
  std::vector<RunRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_csv(trim(line));
    if (f.size() != 19) {
      throw Error(ErrorKind::InvalidInput, "runs CSV line " + std::to_string(line_no) +
                                               ": expected 19 fields");
    }
    RunRecord r;
    r.index = static_cast<std::uint64_t>(parse_double(f[0]));
    r.params.p_c = parse_double(f[1]);
    r.params.p_d_given_c = {parse_double(f[2]), parse_double(f[3])};
    r.params.p_a_given_c = {parse_double(f[4]), parse_double(f[5])};
    r.params.mu.mean = {{{parse_double(f[6]), parse_double(f[7])},
                         {parse_double(f[8]), parse_double(f[9])}}};
    r.summary = summarize(r.params);
    r.summary.rd_true = parse_double(f[10]);
    r.summary.rd_obs = parse_double(f[11]);
    r.summary.rd_crude = parse_double(f[12]);
    r.report = report(r.params);
    const auto y_in_c = parse_direction(f[13]);
    const auto y_in_d = parse_direction(f[14]);
    if (!y_in_c || !y_in_d) {
      throw Error(ErrorKind::InvalidInput, "runs CSV line " + std::to_string(line_no) +
                                               ": bad direction");
    }
    r.report.y_in_c = *y_in_c;
    r.report.y_in_d = *y_in_d;
    r.in_between = parse_bit(f[15], line_no, "in_between") == 1;
    r.interval_len = parse_double(f[16]);
    if (!trim(f[17]).empty()) r.rel_pos = parse_double(trim(f[17]));
    r.youden = parse_double(f[18]);
    out.push_back(r);
  }
  return out;
}

void write_observations_csv(std::ostream& out, std::span<const Observation> rows) {
  out << kDataCsvHeader << '\n';
  for (const auto& r : rows) out << r.a << ',' << r.d << ',' << format_double(r.y) << '\n';
}

std::vector<Observation> read_observations_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kDataCsvHeader) {
    throw Error(ErrorKind::InvalidInput, "data CSV must start with header 'a,d,y'");
  }
  std::vector<Observation> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto f = split_csv(t);
    if (f.size() != 3) {
      throw Error(ErrorKind::InvalidInput,
                  "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    Observation o;
    o.a = parse_bit(f[0], line_no, "a");
    o.d = parse_bit(f[1], line_no, "d");
    try {
      o.y = parse_double(trim(f[2]));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": " + e.what());
    }
    rows.push_back(o);
  }
  return rows;
}

}  // namespace confounder_lab
