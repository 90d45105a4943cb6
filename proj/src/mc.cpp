#include "confounder_lab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

#include "confounder_lab/errors.hpp"
#include "confounder_lab/rng.hpp"

namespace confounder_lab {

TableClass table_class(Direction d) {
  switch (d) {
    case Direction::NonDecreasing:
    case Direction::Constant: return TableClass::NonDecreasing;
    case Direction::NonIncreasing: return TableClass::NonIncreasing;
    case Direction::Neither: return TableClass::Neither;
  }
  return TableClass::Neither;
}

std::uint64_t ExperimentSummary::n_monotone_in_d() const {
  std::uint64_t n = 0;
  for (const auto& row : table) n += row[0] + row[1];
  return n;
}

std::uint64_t ExperimentSummary::n_in_between() const {
  return std::accumulate(n_in_between_by_row.begin(), n_in_between_by_row.end(),
                         std::uint64_t{0});
}

std::uint64_t ExperimentSummary::off_block_count() const {
  return table[0][2] + table[1][2] + table[2][0] + table[2][1];
}

double youden(const ProxyParams& params) {
  return params.p_d_given_c.given_1 + (1.0 - params.p_d_given_c.given_0) - 1.0;
}

RunRecord make_record(std::uint64_t index, const ProxyParams& params) {
  RunRecord r;
  r.index = index;
  r.params = params;
  r.summary = summarize(params);
  r.report = report(params, kTheoremTol);
  r.in_between = in_between(r.summary, kIdentityTol);
  r.interval_len = std::abs(r.summary.rd_true - r.summary.rd_crude);
  if (r.interval_len > kDegenerateInterval) {
    double rel = std::abs(r.summary.rd_obs - r.summary.rd_true) / r.interval_len;
    // in_between admits a 1e-12 overshoot past RD_crude
    if (r.in_between) rel = std::min(rel, 1.0);
    r.rel_pos = rel;
  }
  r.youden = youden(params);
  return r;
}

unsigned default_thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CONFOUNDER_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, hw));
  }
  return hw;
}

ExperimentSummary summarize_records(std::span<const RunRecord> records, std::uint64_t seed,
                                    SamplingScheme scheme) {
  ExperimentSummary s;
  s.n_runs = records.size();
  s.seed = seed;
  s.scheme = scheme;
  for (const auto& r : records) {
    const int row = static_cast<int>(table_class(r.report.y_in_c));
    const int col = static_cast<int>(table_class(r.report.y_in_d));
    ++s.table[row][col];
    if (r.in_between) ++s.n_in_between_by_row[row];
    if (r.report.y_in_c == Direction::Constant || r.report.y_in_d == Direction::Constant) {
      ++s.n_constant;
    }
  }
  return s;
}

ExperimentResult run_experiment(std::uint64_t n, std::uint64_t seed,
                                const ExperimentOptions& options) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "run_experiment: n must be >= 1");

  ExperimentResult result;
  result.records.resize(n);

  unsigned workers = options.threads ? options.threads : default_thread_count();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      result.records[i] = make_record(i, sample_proxy(derive_seed(seed, i), options.scheme));
    }
  };

  if (workers <= 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
  }

  result.summary = summarize_records(result.records, seed, options.scheme);
  return result;
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  Histogram h;
  h.counts.assign(bins, 0);
  if (values.empty() || bins == 0) return h;
  h.hi = *std::max_element(values.begin(), values.end());
  const double width = h.hi / static_cast<double>(bins);
  for (double v : values) {
    std::size_t k = width > 0.0 ? static_cast<std::size_t>(v / width) : 0;
    ++h.counts[std::min(k, bins - 1)];
  }
  return h;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double rank_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return pearson(average_ranks(x), average_ranks(y));
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

FigureStats figure_stats(std::span<const RunRecord> records, std::size_t bins) {
  std::vector<double> lengths, rel, abs_youden;
  FigureStats out;
  for (const auto& r : records) {
    if (!r.in_between || !r.rel_pos) continue;
    lengths.push_back(r.interval_len);
    rel.push_back(*r.rel_pos);
    abs_youden.push_back(std::abs(r.youden));
    out.interval_vs_rel_pos.emplace_back(r.interval_len, *r.rel_pos);
    out.youden_vs_rel_pos.emplace_back(r.youden, *r.rel_pos);
  }
  if (lengths.empty()) {
    throw Error(ErrorKind::EmptyInput,
                "figure_stats: no in-between runs with a non-degenerate interval");
  }
  out.n_qualifying = lengths.size();
  out.interval_histogram = histogram(lengths, bins);
  out.median_rel_pos = median(rel);
  out.rank_corr_abs_youden_rel_pos = rank_correlation(abs_youden, rel);
  return out;
}

}  // namespace confounder_lab
