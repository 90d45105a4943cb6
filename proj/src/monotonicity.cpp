#include "confounder_lab/monotonicity.hpp"

#include <algorithm>
#include <cmath>

#include "confounder_lab/rng.hpp"

namespace confounder_lab {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::NonDecreasing: return "nondecreasing";
    case Direction::NonIncreasing: return "nonincreasing";
    case Direction::Constant: return "constant";
    case Direction::Neither: return "neither";
  }
  return "neither";
}

std::optional<Direction> parse_direction(std::string_view s) {
  for (Direction d : {Direction::NonDecreasing, Direction::NonIncreasing, Direction::Constant,
                      Direction::Neither}) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

std::string_view to_string(Alignment a) {
  switch (a) {
    case Alignment::Same: return "same";
    case Alignment::Opposite: return "opposite";
    case Alignment::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(TheoremCase which) {
  switch (which) {
    case TheoremCase::Thm2: return "thm2";
    case TheoremCase::Thm3: return "thm3";
    case TheoremCase::Thm4: return "thm4";
    case TheoremCase::Thm5: return "thm5";
  }
  return "thm2";
}

std::string_view to_string(BoundSide side) {
  return side == BoundSide::Upper ? "upper" : "lower";
}

Direction direction_of(double hi1, double lo1, double hi2, double lo2, double tol) {
  const bool nondecreasing = hi1 >= lo1 - tol && hi2 >= lo2 - tol;
  const bool nonincreasing = hi1 <= lo1 + tol && hi2 <= lo2 + tol;
  if (nondecreasing && nonincreasing) return Direction::Constant;
  if (nondecreasing) return Direction::NonDecreasing;
  if (nonincreasing) return Direction::NonIncreasing;
  return Direction::Neither;
}

MonotonicityReport report(const ProxyParams& params, double tol) {
  MonotonicityReport r;
  const auto& mu = params.mu;
  r.y_in_c = direction_of(mu(1, 1), mu(1, 0), mu(0, 1), mu(0, 0), tol);

  const double y_a_d = cond_mean_y_ad(params, 1, 1);
  const double y_a_nd = cond_mean_y_ad(params, 1, 0);
  const double y_na_d = cond_mean_y_ad(params, 0, 1);
  const double y_na_nd = cond_mean_y_ad(params, 0, 0);
  r.y_in_d = direction_of(y_a_d, y_a_nd, y_na_d, y_na_nd, tol);

  const double a_c = params.p_a_given_c.given_1;
  const double a_nc = params.p_a_given_c.given_0;
  r.a_in_c = direction_of(a_c, a_nc, a_c, a_nc, tol);

  const double a_d = prob_a_given_d(params, 1);
  const double a_nd = prob_a_given_d(params, 0);
  r.a_in_d = direction_of(a_d, a_nd, a_d, a_nd, tol);
  return r;
}

MonotonicityReport report(const DriverParams& params, double tol) {
  return report(to_proxy(params), tol);
}

MonotonicityReport report(const GraphParams& params, double tol) {
  return report(as_proxy(params), tol);
}

Alignment alignment(Direction y_direction, Direction a_direction) {
  if (y_direction == Direction::Neither || a_direction == Direction::Neither) {
    return Alignment::Undetermined;
  }
  if ((allows_nondecreasing(y_direction) && allows_nondecreasing(a_direction)) ||
      (allows_nonincreasing(y_direction) && allows_nonincreasing(a_direction))) {
    return Alignment::Same;
  }
  return Alignment::Opposite;
}

bool in_between(const EffectSummary& summary, double tol) {
  const double lo = std::min(summary.rd_true, summary.rd_crude);
  const double hi = std::max(summary.rd_true, summary.rd_crude);
  return summary.rd_obs >= lo - tol && summary.rd_obs <= hi + tol;
}

namespace {

bool near(double x, double y) { return std::abs(x - y) <= kEqualityTol; }

// p(c)=.5 and p(d|c)=p(d̄|c̄) >= .5
bool symmetric_confounder_and_proxy(const ProxyParams& p, double tol) {
  const double q = p.p_d_given_c.given_1;
  return near(p.p_c, 0.5) && near(q, 1.0 - p.p_d_given_c.given_0) && q >= 0.5 - tol;
}

// mu[a][c]-mu[a][c̄] >= mu[ā][c̄]-mu[ā][c] >= 0, or the reversed chain.
bool mean_gaps_ordered(const OutcomeMeans& mu, bool increasing, double tol) {
  const double treated_gap = mu(1, 1) - mu(1, 0);
  const double control_gap = mu(0, 0) - mu(0, 1);
  if (increasing) return treated_gap >= control_gap - tol && control_gap >= -tol;
  return treated_gap <= control_gap + tol && control_gap <= tol;
}

bool thm2_probabilities(const ProxyParams& p, double tol) {
  const double q = p.p_d_given_c.given_1;
  return symmetric_confounder_and_proxy(p, tol) && near(p.p_a_given_c.given_1, q) &&
         near(p.p_a_given_c.given_0, 1.0 - q);
}

bool thm4_probabilities(const ProxyParams& p, double tol) {
  const double a_c = p.p_a_given_c.given_1;
  const double na_nc = 1.0 - p.p_a_given_c.given_0;
  return symmetric_confounder_and_proxy(p, tol) && na_nc >= a_c - tol && a_c >= 0.5 - tol;
}

}  // namespace

bool check_thm2(const ProxyParams& params, double tol) {
  return thm2_probabilities(params, tol) && mean_gaps_ordered(params.mu, true, tol);
}

bool check_thm3(const ProxyParams& params, double tol) {
  return thm2_probabilities(params, tol) && mean_gaps_ordered(params.mu, false, tol);
}

bool check_thm4(const ProxyParams& params, double tol) {
  return thm4_probabilities(params, tol) && mean_gaps_ordered(params.mu, true, tol);
}

bool check_thm5_mirror(const ProxyParams& params, double tol) {
  return thm4_probabilities(params, tol) && mean_gaps_ordered(params.mu, false, tol);
}

bool check_preconditions(const ProxyParams& params, TheoremCase which, double tol) {
  switch (which) {
    case TheoremCase::Thm2: return check_thm2(params, tol);
    case TheoremCase::Thm3: return check_thm3(params, tol);
    case TheoremCase::Thm4: return check_thm4(params, tol);
    case TheoremCase::Thm5: return check_thm5_mirror(params, tol);
  }
  return false;
}

ProxyParams sample_constrained(std::uint64_t seed, TheoremCase which) {
  Rng rng(seed);
  const bool increasing = which == TheoremCase::Thm2 || which == TheoremCase::Thm4;
  const bool shared_treatment = which == TheoremCase::Thm2 || which == TheoremCase::Thm3;
  for (;;) {
    ProxyParams p;
    p.p_c = 0.5;
    const double q = rng.uniform(0.5, 1.0);
    p.p_d_given_c = {q, 1.0 - q};
    if (shared_treatment) {
      p.p_a_given_c = {q, 1.0 - q};
    } else {
      const double u = rng.uniform(0.5, 1.0);
      const double v = rng.uniform(0.5, 1.0);
      // p(a|c) = min, p(ā|c̄) = max
      p.p_a_given_c = {std::min(u, v), 1.0 - std::max(u, v)};
    }
    do {
      for (auto& row : p.mu.mean) {
        for (double& m : row) m = rng.uniform();
      }
    } while (!mean_gaps_ordered(p.mu, increasing, 0.0));

    // Rounding can push q to exactly 1 or make P(d|c) == P(d|c̄); redraw.
    if (q < 1.0 && p.p_d_given_c.given_0 > 0.0 && q != p.p_d_given_c.given_0 &&
        p.p_a_given_c.given_1 < 1.0 && p.p_a_given_c.given_0 > 0.0 &&
        check_preconditions(p, which)) {
      return p;
    }
  }
}

bool ordering_holds(const EffectSummary& s, TheoremCase which, double tol) {
  switch (which) {
    case TheoremCase::Thm2:
      return s.rd_crude >= s.rd_obs - tol && s.rd_obs >= s.rd_true - tol;
    case TheoremCase::Thm3:
      return s.rd_crude <= s.rd_obs + tol && s.rd_obs <= s.rd_true + tol;
    case TheoremCase::Thm4:
      return s.rd_crude >= s.rd_true - tol && s.rd_obs >= s.rd_true - tol;
    case TheoremCase::Thm5:
      return s.rd_crude <= s.rd_true + tol && s.rd_obs <= s.rd_true + tol;
  }
  return false;
}

namespace {

BoundSide arm_side(double y_d, double y_nd, Direction a_in_d, bool treated_arm) {
  const Direction row = direction_of(y_d, y_nd, y_d, y_nd, kConstantTol);
  if (row == Direction::Constant || a_in_d == Direction::Constant) return BoundSide::Upper;
  const bool aligned = alignment(row, a_in_d) == Alignment::Same;
  return aligned == treated_arm ? BoundSide::Upper : BoundSide::Lower;
}

}  // namespace

BoundsVerdict bounds_verdict(const ProxyParams& params) {
  const double a_d = prob_a_given_d(params, 1);
  const double a_nd = prob_a_given_d(params, 0);
  const Direction a_in_d = direction_of(a_d, a_nd, a_d, a_nd, kConstantTol);
  BoundsVerdict v;
  v.treated =
      arm_side(cond_mean_y_ad(params, 1, 1), cond_mean_y_ad(params, 1, 0), a_in_d, true);
  v.control =
      arm_side(cond_mean_y_ad(params, 0, 1), cond_mean_y_ad(params, 0, 0), a_in_d, false);
  return v;
}

BoundsVerdict bounds_verdict(const DriverParams& params) {
  return bounds_verdict(to_proxy(params));
}

BoundsVerdict bounds_verdict(const GraphParams& params) {
  return bounds_verdict(as_proxy(params));
}

}  // namespace confounder_lab
