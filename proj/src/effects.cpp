#include "confounder_lab/effects.hpp"

#include <cmath>

namespace confounder_lab {

namespace {

double level_prob(double p1, int level) { return level ? p1 : 1.0 - p1; }

// p(a|C=c) p(d|C=c) p(C=c)
double weight(const ProxyParams& params, int a, int d, int c) {
  return level_prob(params.p_a_given_c[c], a) * level_prob(params.p_d_given_c[c], d) *
         level_prob(params.p_c, c);
}

}  // namespace

double posterior_c(const ProxyParams& params, int a, int d) {
  const double w1 = weight(params, a, d, 1);
  const double w0 = weight(params, a, d, 0);
  return w1 / (w1 + w0);
}

double log_odds_c(const ProxyParams& params, int a, int d) {
  return std::log(level_prob(params.p_a_given_c.given_1, a)) +
         std::log(level_prob(params.p_d_given_c.given_1, d)) + std::log(params.p_c) -
         std::log(level_prob(params.p_a_given_c.given_0, a)) -
         std::log(level_prob(params.p_d_given_c.given_0, d)) - std::log(1.0 - params.p_c);
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double posterior_c_sigmoid(const ProxyParams& params, int a, int d) {
  return sigmoid(log_odds_c(params, a, d));
}

double cond_mean_y_ad(const ProxyParams& params, int a, int d) {
  const double w = posterior_c(params, a, d);
  return params.mu(a, 1) * w + params.mu(a, 0) * (1.0 - w);
}

double posterior_c_given_a(const ProxyParams& params, int a) {
  const double w1 = level_prob(params.p_a_given_c.given_1, a) * params.p_c;
  const double w0 = level_prob(params.p_a_given_c.given_0, a) * (1.0 - params.p_c);
  return w1 / (w1 + w0);
}

double cond_mean_y_a(const ProxyParams& params, int a) {
  const double w = posterior_c_given_a(params, a);
  return params.mu(a, 1) * w + params.mu(a, 0) * (1.0 - w);
}

double marginal_d(const ProxyParams& params) {
  return params.p_d_given_c.given_1 * params.p_c +
         params.p_d_given_c.given_0 * (1.0 - params.p_c);
}

double prob_a_given_d(const ProxyParams& params, int d) {
  // P(a|d) = sum_c P(a|c) P(c|d)
  const double w1 = level_prob(params.p_d_given_c.given_1, d) * params.p_c;
  const double w0 = level_prob(params.p_d_given_c.given_0, d) * (1.0 - params.p_c);
  const double c_given_d = w1 / (w1 + w0);
  return params.p_a_given_c.given_1 * c_given_d +
         params.p_a_given_c.given_0 * (1.0 - c_given_d);
}

DerivedConditionals derive(const ProxyParams& params) {
  DerivedConditionals out;
  for (int a = 0; a < 2; ++a) {
    for (int d = 0; d < 2; ++d) {
      out.p_c_given_ad[a][d] = posterior_c(params, a, d);
      out.e_y_given_ad[a][d] = cond_mean_y_ad(params, a, d);
    }
  }
  out.p_d = marginal_d(params);
  for (int a = 0; a < 2; ++a) {
    // P(d|a) = sum_c P(d|c) P(c|a)
    const double c_given_a = posterior_c_given_a(params, a);
    out.p_d_given_a[a] = params.p_d_given_c.given_1 * c_given_a +
                         params.p_d_given_c.given_0 * (1.0 - c_given_a);
  }
  return out;
}

ArmPair e_y_do(const ProxyParams& params) {
  const double pc = params.p_c;
  return {params.mu(1, 1) * pc + params.mu(1, 0) * (1.0 - pc),
          params.mu(0, 1) * pc + params.mu(0, 0) * (1.0 - pc)};
}

ArmPair s_values(const ProxyParams& params) {
  const double pd = marginal_d(params);
  auto standardized = [&](int a) {
    return cond_mean_y_ad(params, a, 1) * pd + cond_mean_y_ad(params, a, 0) * (1.0 - pd);
  };
  return {standardized(1), standardized(0)};
}

double rd_true(const ProxyParams& params) { return e_y_do(params).difference(); }

double rd_obs(const ProxyParams& params) { return s_values(params).difference(); }

double rd_crude(const ProxyParams& params) {
  return cond_mean_y_a(params, 1) - cond_mean_y_a(params, 0);
}

EffectSummary summarize(const ProxyParams& params) {
  EffectSummary out;
  out.e_y_do = e_y_do(params);
  out.s = s_values(params);
  out.rd_true = out.e_y_do.difference();
  out.rd_obs = out.s.difference();
  out.rd_crude = rd_crude(params);
  return out;
}

EffectSummary summarize(const DriverParams& params) { return summarize(to_proxy(params)); }

EffectSummary summarize(const GraphParams& params) { return summarize(as_proxy(params)); }

}  // namespace confounder_lab
