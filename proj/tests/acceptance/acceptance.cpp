// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "confounder_lab/effects.hpp"
#include "confounder_lab/estimate.hpp"
#include "confounder_lab/mc.hpp"
#include "confounder_lab/model.hpp"
#include "confounder_lab/rng.hpp"
#include "confounder_lab/suites.hpp"
#include "oracle/joint_oracle.hpp"

using namespace confounder_lab;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Gate {
  int failures = 0;

  void report(const char* id, bool ok, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool in_range(double x, double lo, double hi) { return x >= lo && x <= hi; }

void a1_a8(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = run_experiment(10000, kSeed);
  const double elapsed = seconds_since(t0);
  const auto& s = result.summary;

  const double monotone = s.n_monotone_in_d() / 10000.0;
  const double overall = s.n_in_between() / 10000.0;
  const std::uint64_t neither_rows = s.table[2][0] + s.table[2][1] + s.table[2][2];
  const double among_neither =
      neither_rows ? static_cast<double>(s.n_in_between_by_row[2]) / neither_rows : 0.0;

  const bool ok = in_range(monotone, 0.469, 0.509) && s.off_block_count() == 0 &&
                  in_range(overall, 0.920, 0.950) && in_range(among_neither, 0.853, 0.893) &&
                  elapsed < 5.0;
  gate.report("A1", ok,
              fmt("monotone-in-D %.4f [0.469,0.509]; off-block %llu; in-between %.4f "
                  "[0.920,0.950]; among Neither %.4f [0.853,0.893]; %.2fs < 5s",
                  monotone, static_cast<unsigned long long>(s.off_block_count()), overall,
                  among_neither, elapsed));

  // A8 uses the same run.
  const auto f = figure_stats(result.records);
  gate.report("A8", f.median_rel_pos > 0.5 && f.rank_corr_abs_youden_rel_pos < 0.0,
              fmt("median rel_pos %.4f > 0.5; rank corr(|youden|, rel_pos) %.4f < 0 "
                  "(%zu qualifying runs)",
                  f.median_rel_pos, f.rank_corr_abs_youden_rel_pos, f.n_qualifying));
}

void a2(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto thm1 = run_suite(Suite::Thm1, 100000, kSeed);
  const auto cor1 = run_suite(Suite::Cor1, 100000, kSeed);
  const double elapsed = seconds_since(t0);
  gate.report("A2", thm1.passed() && cor1.passed() && elapsed < 30.0,
              fmt("10^5 draws: monotone-in-D vs monotone-in-C mismatches %llu; in-between "
                  "violations %llu among %llu monotone draws; %.2fs < 30s",
                  static_cast<unsigned long long>(thm1.n_violations),
                  static_cast<unsigned long long>(cor1.n_violations),
                  static_cast<unsigned long long>(cor1.n_applicable), elapsed));
}

void a3(Gate& gate) {
  std::string detail;
  bool ok = true;
  for (auto suite : {Suite::Thm2, Suite::Thm3, Suite::Thm4, Suite::Thm5}) {
    const auto r = run_suite(suite, 10000, kSeed);
    ok = ok && r.passed() && r.n_applicable == 10000;
    detail += fmt("%s %llu/%llu violations; ", std::string(to_string(suite)).c_str(),
                  static_cast<unsigned long long>(r.n_violations),
                  static_cast<unsigned long long>(r.n_applicable));
  }
  const auto rate = run_suite(Suite::Thm4, 100000, kSeed);
  const double frac = rate.crude_ge_obs_fraction.value_or(-1.0);
  ok = ok && rate.passed() && in_range(frac, 0.87, 0.93);
  detail += fmt("thm4 RD_crude >= RD_obs rate %.4f [0.87,0.93] over 10^5", frac);
  gate.report("A3", ok, detail);
}

void a4(Gate& gate) {
  const auto r = run_suite(Suite::Driver, 10000, kSeed);
  gate.report("A4", r.passed(),
              fmt("10^4 driver draws: %llu violations (summary equivalence at 1e-12, alignment "
                  "transfer, sign conclusions)%s%s",
                  static_cast<unsigned long long>(r.n_violations),
                  r.passed() ? "" : "; first: ", r.first_failure.c_str()));
}

void a5(Gate& gate) {
  const auto r = run_suite(Suite::Bounds, 10000, kSeed);
  gate.report("A5", r.passed(),
              fmt("10^4 proxy + 10^4 driver draws: %llu bounds violations",
                  static_cast<unsigned long long>(r.n_violations)));
}

void a6(Gate& gate) {
  double worst = 0.0;
  auto track = [&](double x, double y) { worst = std::max(worst, std::abs(x - y)); };
  auto compare = [&](const ProxyParams& p, const oracle::Quantities& q) {
    const auto s = summarize(p);
    track(s.rd_true, q.rd_true);
    track(s.rd_obs, q.rd_obs);
    track(s.rd_crude, q.rd_crude);
    track(s.e_y_do.treated, q.e_y_do[1]);
    track(s.e_y_do.control, q.e_y_do[0]);
    track(s.s.treated, q.s[1]);
    track(s.s.control, q.s[0]);
    for (int a = 0; a < 2; ++a) {
      track(cond_mean_y_a(p, a), q.e_y_a[a]);
      for (int d = 0; d < 2; ++d) {
        track(posterior_c(p, a, d), q.post_c[a][d]);
        track(posterior_c_sigmoid(p, a, d), q.post_c[a][d]);
        track(cond_mean_y_ad(p, a, d), q.e_y_ad[a][d]);
      }
    }
  };
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto p = sample_proxy(derive_seed(kSeed, i));
    compare(p, oracle::quantities(p));
    const auto x = sample_driver(derive_seed(kSeed + 1, i));
    compare(to_proxy(x), oracle::quantities(x));
  }
  gate.report("A6", worst <= 1e-12,
              fmt("10^3 proxy + 10^3 driver draws: max |analytic - enumeration| = %.3g <= 1e-12",
                  worst));
}

// Draws a conditional whose two entries differ by at least `gap`.
Conditional separated(Rng& rng, double gap) {
  for (;;) {
    const Conditional c{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
    if (std::abs(c.given_1 - c.given_0) >= gap) return c;
  }
}

OutcomeMeans monotone_means(Rng& rng, double gap) {
  const bool up = rng.bernoulli(0.5);
  OutcomeMeans mu;
  for (int a = 0; a < 2; ++a) {
    const double lo = rng.uniform(0.05, 0.95 - gap);
    const double hi = rng.uniform(lo + gap, 0.95);
    mu.mean[a] = up ? std::array{lo, hi} : std::array{hi, lo};
  }
  return mu;
}

void a7(Gate& gate) {
  constexpr std::uint64_t n = 1000000;
  int within = 0;
  double worst_z = 0.0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const GraphParams g = k % 2 ? GraphParams{sample_driver(derive_seed(70, k))}
                                : GraphParams{sample_proxy(derive_seed(70, k))};
    const auto truth = summarize(g);
    const auto est = estimate_population(generate_dataset(g, n, derive_seed(71, k)));
    const auto rds = empirical_rds(est);
    const double z_obs = std::abs(rds.rd_obs - truth.rd_obs) / rds.se_obs;
    const double z_crude = std::abs(rds.rd_crude - truth.rd_crude) / rds.se_crude;
    if (z_obs <= 3.0 && z_crude <= 3.0) ++within;
    worst_z = std::max({worst_z, z_obs, z_crude});
  }

  // Three populations sharing p(C|D); the third takes p(Y|A,C) from the first
  // and p(A|C) from the second. Mechanism gaps are kept well above sampling
  // noise at this n so the estimated D-directions are the population ones.
  Rng rng(derive_seed(72, 0));
  int conclusive = 0, agree = 0, scenarios = 0;
  constexpr std::uint64_t n_pop = 200000;
  for (int k = 0; k < 20; ++k) {
    const Conditional c_given_d = separated(rng, 0.3);
    const OutcomeMeans mu_13 = monotone_means(rng, 0.3);
    OutcomeMeans mu_2;
    for (auto& row : mu_2.mean)
      for (auto& m : row) m = rng.uniform(0.05, 0.95);
    const DriverParams pop1{rng.uniform(0.2, 0.8), c_given_d, separated(rng, 0.3), mu_13};
    const Conditional policy_23 = separated(rng, 0.3);
    const DriverParams pop2{rng.uniform(0.2, 0.8), c_given_d, policy_23, mu_2};
    const DriverParams pop3{rng.uniform(0.2, 0.8), c_given_d, policy_23, mu_13};

    const auto e1 = estimate_population(generate_dataset(GraphParams{pop1}, n_pop, 2 * k));
    const auto e2 = estimate_population(generate_dataset(GraphParams{pop2}, n_pop, 2 * k + 1));
    const auto verdict = transport(e1, e2).verdict;
    const auto s3 = summarize(pop3);
    ++scenarios;
    if (verdict == ObsVsTrue::Inconclusive) continue;
    ++conclusive;
    const bool ge = s3.rd_obs >= s3.rd_true;
    const bool le = s3.rd_obs <= s3.rd_true;
    if ((verdict == ObsVsTrue::ObsGeTrue && ge) || (verdict == ObsVsTrue::ObsLeTrue && le)) ++agree;
  }

  gate.report("A7", within >= 9 && conclusive > 0 && agree == conclusive,
              fmt("%d/10 parameterizations within 3 SE at n=10^6 (max |z| %.2f); transport: "
                  "%d/%d conclusive verdicts match the analytic sign of RD_obs - RD_true "
                  "(%d scenarios)",
                  within, worst_z, agree, conclusive, scenarios));
}

}  // namespace

int main() {
  Gate gate;
  const std::vector<std::function<void(Gate&)>> steps{a1_a8, a2, a3, a4, a5, a6, a7};
  for (const auto& step : steps) {
    try {
      step(gate);
    } catch (const std::exception& e) {
      gate.report("ERROR", false, e.what());
    }
  }
  std::printf("%s: %d failing criteria\n", gate.failures ? "FAIL" : "PASS", gate.failures);
  return gate.failures ? 1 : 0;
}
