#include "confounder_lab/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "confounder_lab/errors.hpp"
#include "confounder_lab/rng.hpp"

namespace confounder_lab {

std::string_view to_string(ObsVsTrue v) {
  switch (v) {
    case ObsVsTrue::ObsGeTrue: return "RD_obs >= RD_true";
    case ObsVsTrue::ObsLeTrue: return "RD_obs <= RD_true";
    case ObsVsTrue::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

void SampleDataset::add(const Observation& row) {
  if ((row.a != 0 && row.a != 1) || (row.d != 0 && row.d != 1)) {
    throw Error(ErrorKind::InvalidInput, "a and d must be 0 or 1");
  }
  if (!std::isfinite(row.y)) throw Error(ErrorKind::InvalidInput, "y must be finite");
  ++n_[row.a][row.d];
  y_sum_[row.a][row.d] += row.y;
  y_sq_sum_[row.a][row.d] += row.y * row.y;
  ++n_total_;
}

std::vector<std::pair<int, int>> SampleDataset::empty_strata() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < 2; ++a)
    for (int d = 0; d < 2; ++d)
      if (n_[a][d] == 0) out.emplace_back(a, d);
  return out;
}

SampleDataset ingest(std::span<const Observation> rows) {
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, "no rows to ingest");
  SampleDataset ds;
  for (const auto& r : rows) ds.add(r);
  return ds;
}

PopulationEstimates estimate_population(const SampleDataset& ds) {
  if (const auto empty = ds.empty_strata(); !empty.empty()) {
    std::string msg = "empty strata:";
    for (auto [a, d] : empty) msg += " a=" + std::to_string(a) + ",d=" + std::to_string(d);
    throw Error(ErrorKind::EmptyStratum, msg);
  }

  PopulationEstimates est;
  est.n_total = ds.n_total();
  const double total = static_cast<double>(ds.n_total());
  for (int a = 0; a < 2; ++a) {
    for (int d = 0; d < 2; ++d) {
      const double n = static_cast<double>(ds.count(a, d));
      const double mean = ds.y_sum(a, d) / n;
      est.n[a][d] = ds.count(a, d);
      est.e_y_ad[a][d] = mean;
      est.var_y_ad[a][d] = std::max(0.0, ds.y_sq_sum(a, d) / n - mean * mean);
    }
  }
  const double n_d = static_cast<double>(ds.count(0, 1) + ds.count(1, 1));
  est.p_d = n_d / total;
  for (int d = 0; d < 2; ++d) {
    est.e_a_d[d] = static_cast<double>(ds.count(1, d)) /
                   static_cast<double>(ds.count(0, d) + ds.count(1, d));
  }
  return est;
}

EmpiricalRds empirical_rds(const PopulationEstimates& est) {
  const double total = static_cast<double>(est.n_total);
  const std::array<double, 2> p_d{1.0 - est.p_d, est.p_d};

  EmpiricalRds out;
  std::array<double, 2> gap{};
  for (int d = 0; d < 2; ++d) {
    gap[d] = est.e_y_ad[1][d] - est.e_y_ad[0][d];
    out.rd_obs += p_d[d] * gap[d];
  }

  // Influence-function variance of sum_d p(d) (m1d - m0d).
  double var_obs = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int d = 0; d < 2; ++d) {
      const double p_ad = static_cast<double>(est.n[a][d]) / total;
      var_obs += p_d[d] * p_d[d] / p_ad * est.var_y_ad[a][d];
    }
  }
  for (int d = 0; d < 2; ++d) var_obs += p_d[d] * (gap[d] - out.rd_obs) * (gap[d] - out.rd_obs);
  out.se_obs = std::sqrt(var_obs / total);

  // E[Y|a] pools the two D strata of arm a.
  double var_crude = 0.0;
  std::array<double, 2> arm_mean{};
  for (int a = 0; a < 2; ++a) {
    const double n_a = static_cast<double>(est.n[a][0] + est.n[a][1]);
    double sum = 0.0, sq = 0.0;
    for (int d = 0; d < 2; ++d) {
      const double n = static_cast<double>(est.n[a][d]);
      sum += n * est.e_y_ad[a][d];
      sq += n * (est.var_y_ad[a][d] + est.e_y_ad[a][d] * est.e_y_ad[a][d]);
    }
    arm_mean[a] = sum / n_a;
    const double var_a = std::max(0.0, sq / n_a - arm_mean[a] * arm_mean[a]);
    var_crude += var_a / n_a;
  }
  out.rd_crude = arm_mean[1] - arm_mean[0];
  out.se_crude = std::sqrt(var_crude);
  return out;
}

Direction y_direction(const PopulationEstimates& est) {
  return direction_of(est.e_y_ad[1][1], est.e_y_ad[1][0], est.e_y_ad[0][1], est.e_y_ad[0][0],
                      kTheoremTol);
}

Direction a_direction(const PopulationEstimates& est) {
  return direction_of(est.e_a_d[1], est.e_a_d[0], est.e_a_d[1], est.e_a_d[0], kTheoremTol);
}

ObsVsTrue sign_inference(const PopulationEstimates& est, const EmpiricalRds& rds) {
  if (!is_monotone(y_direction(est))) return ObsVsTrue::Inconclusive;
  // RD_obs == RD_crude leaves RD_true on either side.
  if (rds.rd_crude < rds.rd_obs) return ObsVsTrue::ObsLeTrue;
  if (rds.rd_crude > rds.rd_obs) return ObsVsTrue::ObsGeTrue;
  return ObsVsTrue::Inconclusive;
}

TransportReport transport(const PopulationEstimates& pop1, const PopulationEstimates& pop2) {
  TransportReport r;
  r.e_y_ad = pop1.e_y_ad;
  r.e_a_d = pop2.e_a_d;
  r.y_in_d = y_direction(pop1);
  r.a_in_d = a_direction(pop2);
  r.alignment = alignment(r.y_in_d, r.a_in_d);
  switch (r.alignment) {
    case Alignment::Same: r.verdict = ObsVsTrue::ObsGeTrue; break;
    case Alignment::Opposite: r.verdict = ObsVsTrue::ObsLeTrue; break;
    case Alignment::Undetermined: r.verdict = ObsVsTrue::Inconclusive; break;
  }
  return r;
}

namespace {

void check_generatable(const GraphParams& params) {
  validate(params);
  const OutcomeMeans& mu = std::visit([](const auto& p) -> const OutcomeMeans& { return p.mu; },
                                      params);
  for (const auto& row : mu.mean) {
    for (double m : row) {
      if (!(m >= 0.0 && m <= 1.0)) {
        throw Error(ErrorKind::MuOutOfRange,
                    "mu entry " + std::to_string(m) + " is not a Bernoulli mean in [0,1]");
      }
    }
  }
}

Observation draw(Rng& rng, const ProxyParams& p) {
  const int c = rng.bernoulli(p.p_c);
  const int d = rng.bernoulli(p.p_d_given_c[c]);
  const int a = rng.bernoulli(p.p_a_given_c[c]);
  return {a, d, rng.bernoulli(p.mu(a, c)) ? 1.0 : 0.0};
}

Observation draw(Rng& rng, const DriverParams& p) {
  const int d = rng.bernoulli(p.p_d);
  const int c = rng.bernoulli(p.p_c_given_d[d]);
  const int a = rng.bernoulli(p.p_a_given_c[c]);
  return {a, d, rng.bernoulli(p.mu(a, c)) ? 1.0 : 0.0};
}

template <typename Sink>
void generate_rows(const GraphParams& params, std::uint64_t n, std::uint64_t seed, Sink&& sink) {
  check_generatable(params);
  std::visit(
      [&](const auto& p) {
        for (std::uint64_t block = 0; block * kGenerateBlock < n; ++block) {
          Rng rng(derive_seed(seed, block));
          const std::uint64_t end = std::min(n, (block + 1) * kGenerateBlock);
          for (std::uint64_t i = block * kGenerateBlock; i < end; ++i) sink(draw(rng, p));
        }
      },
      params);
}

}  // namespace

std::vector<Observation> generate(const GraphParams& params, std::uint64_t n,
                                  std::uint64_t seed) {
  std::vector<Observation> rows;
  rows.reserve(n);
  generate_rows(params, n, seed, [&](const Observation& o) { rows.push_back(o); });
  return rows;
}

SampleDataset generate_dataset(const GraphParams& params, std::uint64_t n, std::uint64_t seed) {
  SampleDataset ds;
  generate_rows(params, n, seed, [&](const Observation& o) { ds.add(o); });
  return ds;
}

}  // namespace confounder_lab
