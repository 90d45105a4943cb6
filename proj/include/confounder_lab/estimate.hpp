#pragma once

// Plug-in estimation from observed (A, D, Y) data, synthetic data
// generation, and the two-population transport combination.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "confounder_lab/model.hpp"
#include "confounder_lab/monotonicity.hpp"

namespace confounder_lab {

struct Observation {
  int a = 0;
  int d = 0;
  double y = 0.0;
};

/// Sufficient statistics per (A, D) stratum.
class SampleDataset {
 public:
  /// Throws Error{InvalidInput} for a, d outside {0,1} or non-finite y.
  void add(const Observation& row);

  std::uint64_t count(int a, int d) const { return n_[a][d]; }
  double y_sum(int a, int d) const { return y_sum_[a][d]; }
  double y_sq_sum(int a, int d) const { return y_sq_sum_[a][d]; }
  std::uint64_t n_total() const { return n_total_; }

  /// (a, d) cells with no rows.
  std::vector<std::pair<int, int>> empty_strata() const;

 private:
  std::array<std::array<std::uint64_t, 2>, 2> n_{};
  std::array<std::array<double, 2>, 2> y_sum_{};
  std::array<std::array<double, 2>, 2> y_sq_sum_{};
  std::uint64_t n_total_ = 0;
};

/// Throws Error{EmptyInput} when `rows` is empty.
SampleDataset ingest(std::span<const Observation> rows);

struct PopulationEstimates {
  std::array<std::array<double, 2>, 2> e_y_ad{};  // [a][d] stratum means
  std::array<double, 2> e_a_d{};                  // [d] -> P̂(A=a | D=d)
  double p_d = 0.0;                               // P̂(D=d)
  std::array<std::array<std::uint64_t, 2>, 2> n{};
  std::array<std::array<double, 2>, 2> var_y_ad{};  // within-stratum variance (1/n)
  std::uint64_t n_total = 0;
};

/// Throws Error{EmptyStratum} naming every empty (a, d) cell.
PopulationEstimates estimate_population(const SampleDataset& ds);

/// Plug-in risk differences with delta-method standard errors.
struct EmpiricalRds {
  double rd_obs = 0.0;
  double rd_crude = 0.0;
  double se_obs = 0.0;
  double se_crude = 0.0;
};

EmpiricalRds empirical_rds(const PopulationEstimates& est);

/// Conclusions about RD_obs relative to the unobservable RD_true.
enum class ObsVsTrue { ObsGeTrue, ObsLeTrue, Inconclusive };

std::string_view to_string(ObsVsTrue v);

/// Directions of E[Y|A,D] (tolerance kTheoremTol) and E[A|D] from estimates.
Direction y_direction(const PopulationEstimates& est);
Direction a_direction(const PopulationEstimates& est);

/// With E[Y|A,D] monotone in D, RD_obs lies between RD_true and RD_crude,
/// so the side of RD_crude fixes the side of RD_true. Inconclusive otherwise.
ObsVsTrue sign_inference(const PopulationEstimates& est, const EmpiricalRds& rds);

struct TransportReport {
  std::array<std::array<double, 2>, 2> e_y_ad{};  // from population 1
  std::array<double, 2> e_a_d{};                  // from population 2
  Direction y_in_d = Direction::Neither;
  Direction a_in_d = Direction::Neither;
  Alignment alignment = Alignment::Undetermined;
  ObsVsTrue verdict = ObsVsTrue::Inconclusive;
};

/// Target population shares p(C|D) with both sources, p(Y|A,C) with pop1
/// and p(A|C) with pop2: its D-direction of E[Y|A,D] is read from pop1 and
/// its E[A|D] from pop2. Same alignment gives RD_obs >= RD_true, opposite
/// gives RD_obs <= RD_true.
TransportReport transport(const PopulationEstimates& pop1, const PopulationEstimates& pop2);

/// I.i.d. rows from the graph's factorization with Y ~ Bernoulli(mu[a][c]);
/// C is drawn and discarded. Rows come in blocks of kGenerateBlock, each from
/// its own derived seed. Throws Error{MuOutOfRange} if a mean is outside
/// [0,1], plus the validate errors.
inline constexpr std::uint64_t kGenerateBlock = 1u << 16;

std::vector<Observation> generate(const GraphParams& params, std::uint64_t n,
                                  std::uint64_t seed);

/// Same stream as generate(), folded straight into a dataset.
SampleDataset generate_dataset(const GraphParams& params, std::uint64_t n,
                               std::uint64_t seed);

}  // namespace confounder_lab
