#pragma once

// Monte Carlo study over random proxy-graph parameterizations: Table-style
// cross-classification of monotonicity in C and in D, in-between rates, and
// the relative-position statistics of RD_obs inside [RD_true, RD_crude].

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "confounder_lab/effects.hpp"
#include "confounder_lab/model.hpp"
#include "confounder_lab/monotonicity.hpp"

namespace confounder_lab {

/// Intervals shorter than this have no defined relative position.
inline constexpr double kDegenerateInterval = 1e-12;

struct RunRecord {
  std::uint64_t index = 0;
  ProxyParams params;
  EffectSummary summary;
  MonotonicityReport report;
  bool in_between = false;
  double interval_len = 0.0;       // |rd_true - rd_crude|
  std::optional<double> rel_pos;   // |rd_obs - rd_true| / interval_len
  double youden = 0.0;
};

/// Table row/column: nondecreasing (Constant folded in), nonincreasing, neither.
enum class TableClass : int { NonDecreasing = 0, NonIncreasing = 1, Neither = 2 };

TableClass table_class(Direction d);

struct ExperimentSummary {
  std::uint64_t n_runs = 0;
  std::uint64_t seed = 0;
  SamplingScheme scheme = SamplingScheme::NormalizedWeights;
  // table[row: y_in_c][col: y_in_d]
  std::array<std::array<std::uint64_t, 3>, 3> table{};
  std::array<std::uint64_t, 3> n_in_between_by_row{};
  // Runs where y_in_c or y_in_d came out exactly Constant (tabulated as nondecreasing).
  std::uint64_t n_constant = 0;

  std::uint64_t n_monotone_in_d() const;
  std::uint64_t n_in_between() const;
  std::uint64_t off_block_count() const;
};

struct ExperimentResult {
  ExperimentSummary summary;
  std::vector<RunRecord> records;  // ordered by run index
};

struct ExperimentOptions {
  SamplingScheme scheme = SamplingScheme::NormalizedWeights;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// P(d|c) + P(d̄|c̄) - 1.
double youden(const ProxyParams& params);

/// Builds the record for one parameterization.
RunRecord make_record(std::uint64_t index, const ProxyParams& params);

/// Run i uses sample_proxy(derive_seed(seed, i)), so the result does not
/// depend on the worker count.
ExperimentResult run_experiment(std::uint64_t n, std::uint64_t seed,
                                const ExperimentOptions& options = {});

/// Aggregation only; `records` in any order gives the same summary.
ExperimentSummary summarize_records(std::span<const RunRecord> records, std::uint64_t seed,
                                    SamplingScheme scheme);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;

  double bin_width() const { return counts.empty() ? 0.0 : (hi - lo) / counts.size(); }
};

/// Equal-width bins on [0, max(values)]; the max lands in the last bin.
Histogram histogram(std::span<const double> values, std::size_t bins);

/// Spearman rank correlation with average ranks for ties. NaN when either
/// side has zero rank variance or fewer than two points.
double rank_correlation(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

struct FigureStats {
  std::size_t n_qualifying = 0;
  Histogram interval_histogram;
  std::vector<std::pair<double, double>> interval_vs_rel_pos;  // (interval_len, rel_pos)
  std::vector<std::pair<double, double>> youden_vs_rel_pos;    // (youden, rel_pos)
  double median_rel_pos = 0.0;
  double rank_corr_abs_youden_rel_pos = 0.0;
};

inline constexpr std::size_t kFigureBins = 20;

/// Statistics over in-between runs with a non-degenerate interval.
/// Throws Error{EmptyInput} when no record qualifies.
FigureStats figure_stats(std::span<const RunRecord> records, std::size_t bins = kFigureBins);

/// Hardware concurrency, capped by CONFOUNDER_LAB_THREADS when that is set
/// to a positive integer.
unsigned default_thread_count();

}  // namespace confounder_lab
