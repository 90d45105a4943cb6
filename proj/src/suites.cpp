#include "confounder_lab/suites.hpp"

#include <array>
#include <cmath>

#include "confounder_lab/effects.hpp"
#include "confounder_lab/monotonicity.hpp"
#include "confounder_lab/rng.hpp"

namespace confounder_lab {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 8> kSuiteNames{{
    {Suite::Thm1, "thm1"},
    {Suite::Cor1, "cor1"},
    {Suite::Thm2, "thm2"},
    {Suite::Thm3, "thm3"},
    {Suite::Thm4, "thm4"},
    {Suite::Thm5, "thm5"},
    {Suite::Driver, "driver"},
    {Suite::Bounds, "bounds"},
}};

// Outcome of one draw: nullopt when the antecedent did not hold, otherwise
// the name of the failed check or an empty string on success.
using Check = std::optional<std::string>;

Check pass() { return std::string(); }
Check fail(std::string what) { return what; }

// Effect measures read directly off the driver factorization's joint table,
// independent of the proxy-form closed forms.
EffectSummary summarize_from_joint(const JointTable& t) {
  double p_c = 0.0, p_d = 0.0;
  std::array<double, 2> p_a{};
  std::array<std::array<double, 2>, 2> p_ad{}, y_ad{};
  std::array<double, 2> y_a{};
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d) {
        const double w = t.p[a][c][d];
        if (c) p_c += w;
        if (d) p_d += w;
        p_a[a] += w;
        p_ad[a][d] += w;
        y_ad[a][d] += w * t.mu(a, c);
        y_a[a] += w * t.mu(a, c);
      }
  EffectSummary s;
  for (int a = 1; a >= 0; --a) {
    const double do_mean = t.mu(a, 1) * p_c + t.mu(a, 0) * (1.0 - p_c);
    const double std_mean = y_ad[a][1] / p_ad[a][1] * p_d + y_ad[a][0] / p_ad[a][0] * (1.0 - p_d);
    (a ? s.e_y_do.treated : s.e_y_do.control) = do_mean;
    (a ? s.s.treated : s.s.control) = std_mean;
  }
  s.rd_true = s.e_y_do.difference();
  s.rd_obs = s.s.difference();
  s.rd_crude = y_a[1] / p_a[1] - y_a[0] / p_a[0];
  return s;
}

bool close(double x, double y) { return std::abs(x - y) <= kIdentityTol; }

Check check_thm1(const ProxyParams& p) {
  const auto r = report(p);
  if (is_monotone(r.y_in_d) != is_monotone(r.y_in_c)) return fail("monotone in D <=> monotone in C");
  return pass();
}

Check check_cor1(const ProxyParams& p) {
  if (!is_monotone(report(p).y_in_d)) return std::nullopt;
  if (!in_between(summarize(p), kIdentityTol)) return fail("RD_obs between RD_true and RD_crude");
  return pass();
}

Check check_ordering(const ProxyParams& p, TheoremCase which) {
  if (!check_preconditions(p, which)) return fail("sampler produced params violating preconditions");
  if (!ordering_holds(summarize(p), which, kIdentityTol)) return fail("ordering conclusion");
  return pass();
}

Check check_driver(const DriverParams& x) {
  const ProxyParams proxy = to_proxy(x);
  const EffectSummary via_proxy = summarize(proxy);
  const EffectSummary direct = summarize_from_joint(joint_table(x));
  if (joint_table(x).max_abs_diff(joint_table(proxy)) > kIdentityTol) return fail("to_proxy joint");
  if (!close(via_proxy.rd_true, direct.rd_true) || !close(via_proxy.rd_obs, direct.rd_obs) ||
      !close(via_proxy.rd_crude, direct.rd_crude) ||
      !close(via_proxy.e_y_do.treated, direct.e_y_do.treated) ||
      !close(via_proxy.e_y_do.control, direct.e_y_do.control) ||
      !close(via_proxy.s.treated, direct.s.treated) ||
      !close(via_proxy.s.control, direct.s.control)) {
    return fail("driver/proxy summary equivalence");
  }
  const auto r = report(x);
  const Alignment in_d = alignment(r.y_in_d, r.a_in_d);
  const Alignment in_c = alignment(r.y_in_c, r.a_in_c);
  if (in_d != in_c) return fail("alignment in D == alignment in C");
  if (in_d == Alignment::Same && via_proxy.rd_obs < via_proxy.rd_true - kIdentityTol) {
    return fail("same alignment => RD_obs >= RD_true");
  }
  if (in_d == Alignment::Opposite && via_proxy.rd_obs > via_proxy.rd_true + kIdentityTol) {
    return fail("opposite alignment => RD_obs <= RD_true");
  }
  if (is_monotone(r.y_in_d) && !in_between(via_proxy, kIdentityTol)) {
    return fail("monotone in D => RD_obs between RD_true and RD_crude");
  }
  return pass();
}

bool side_consistent(BoundSide side, double s, double e_do) {
  return side == BoundSide::Upper ? s - e_do >= -kIdentityTol : s - e_do <= kIdentityTol;
}

Check check_bounds(const ProxyParams& p) {
  const auto v = bounds_verdict(p);
  const auto s = summarize(p);
  if (!side_consistent(v.treated, s.s.treated, s.e_y_do.treated)) return fail("S_a side");
  if (!side_consistent(v.control, s.s.control, s.e_y_do.control)) return fail("S_not_a side");
  return pass();
}

TheoremCase theorem_case(Suite suite) {
  switch (suite) {
    case Suite::Thm3: return TheoremCase::Thm3;
    case Suite::Thm4: return TheoremCase::Thm4;
    case Suite::Thm5: return TheoremCase::Thm5;
    default: return TheoremCase::Thm2;
  }
}

}  // namespace

std::string_view to_string(Suite suite) {
  for (const auto& [s, name] : kSuiteNames)
    if (s == suite) return name;
  return "thm1";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (const auto& [s, n] : kSuiteNames)
    if (n == name) return s;
  return std::nullopt;
}

SuiteResult run_suite(Suite suite, std::uint64_t n, std::uint64_t seed,
                      const SuiteOptions& options) {
  SuiteResult result;
  result.suite = suite;
  result.n_draws = n;

  auto record = [&](const Check& outcome, const GraphParams& params) {
    if (!outcome) return;
    ++result.n_applicable;
    bool failed = !outcome->empty();
    if (options.invert_checks) failed = !failed;
    if (!failed) return;
    if (result.n_violations++ == 0) {
      result.first_counterexample = params;
      result.first_failure = outcome->empty() ? "inverted check (test hook)" : *outcome;
    }
  };

  std::uint64_t n_crude_ge_obs = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    switch (suite) {
      case Suite::Thm1: {
        const auto p = sample_proxy(s, options.scheme);
        record(check_thm1(p), p);
        break;
      }
      case Suite::Cor1: {
        const auto p = sample_proxy(s, options.scheme);
        record(check_cor1(p), p);
        break;
      }
      case Suite::Thm2:
      case Suite::Thm3:
      case Suite::Thm4:
      case Suite::Thm5: {
        const auto which = theorem_case(suite);
        const auto p = sample_constrained(s, which);
        record(check_ordering(p, which), p);
        if (suite == Suite::Thm4) {
          const auto summary = summarize(p);
          if (summary.rd_crude >= summary.rd_obs) ++n_crude_ge_obs;
        }
        break;
      }
      case Suite::Driver: {
        const auto x = sample_driver(s, options.scheme);
        record(check_driver(x), x);
        break;
      }
      case Suite::Bounds: {
        const auto p = sample_proxy(s, options.scheme);
        record(check_bounds(p), p);
        const auto x = sample_driver(derive_seed(~seed, i), options.scheme);
        record(check_bounds(to_proxy(x)), x);
        break;
      }
    }
  }
  if (suite == Suite::Thm4 && n > 0) {
    result.crude_ge_obs_fraction = static_cast<double>(n_crude_ge_obs) / static_cast<double>(n);
  }
  return result;
}

}  // namespace confounder_lab
