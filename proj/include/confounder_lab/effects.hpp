#pragma once

// Closed-form effect measures. Everything is computed from the parameters;
// simulation-based estimates live in estimate.hpp.

#include <array>

#include "confounder_lab/model.hpp"

namespace confounder_lab {

/// A quantity under treatment (A=a) and under control (A=ā).
struct ArmPair {
  double treated = 0.0;
  double control = 0.0;

  double difference() const { return treated - control; }
};

struct EffectSummary {
  double rd_true = 0.0;   // E[Y_a] - E[Y_ā], standardized over C
  double rd_obs = 0.0;    // standardized over D
  double rd_crude = 0.0;  // E[Y|a] - E[Y|ā]
  ArmPair e_y_do;         // (E[Y_a], E[Y_ā])
  ArmPair s;              // (S_a, S_ā)
};

/// Observable conditionals implied by a proxy-graph parameterization.
struct DerivedConditionals {
  std::array<std::array<double, 2>, 2> p_c_given_ad{};  // [a][d] -> P(C=c | A=a, D=d)
  std::array<std::array<double, 2>, 2> e_y_given_ad{};  // [a][d] -> E[Y | A=a, D=d]
  double p_d = 0.0;                                     // P(D=d)
  std::array<double, 2> p_d_given_a{};                  // [a] -> P(D=d | A=a)
};

/// P(C=c | A=a, D=d) by direct Bayes ratio, using A ⊥ D | C.
double posterior_c(const ProxyParams& params, int a, int d);

/// Log posterior odds of C=c given (A=a, D=d):
///   ln[ p(a|c) p(d|c) p(c) / (p(a|c̄) p(d|c̄) p(c̄)) ].
double log_odds_c(const ProxyParams& params, int a, int d);

/// The same posterior in logistic form, sigmoid(log_odds_c). Equal to
/// posterior_c up to rounding; exposed so the two routes can be compared.
double posterior_c_sigmoid(const ProxyParams& params, int a, int d);

double sigmoid(double x);

/// E[Y | A=a, D=d] = sum_c mu[a][c] P(c | a, d), using Y ⊥ D | (A, C).
double cond_mean_y_ad(const ProxyParams& params, int a, int d);

/// E[Y | A=a] = sum_c mu[a][c] P(c | a).
double cond_mean_y_a(const ProxyParams& params, int a);

/// P(C=c | A=a).
double posterior_c_given_a(const ProxyParams& params, int a);

/// P(D=d).
double marginal_d(const ProxyParams& params);

/// P(A=a | D=d) (the d-th entry of E[A|D]).
double prob_a_given_d(const ProxyParams& params, int d);

DerivedConditionals derive(const ProxyParams& params);

double rd_true(const ProxyParams& params);
double rd_crude(const ProxyParams& params);
double rd_obs(const ProxyParams& params);
ArmPair s_values(const ProxyParams& params);
ArmPair e_y_do(const ProxyParams& params);

EffectSummary summarize(const ProxyParams& params);
/// Driver parameterizations are routed through to_proxy.
EffectSummary summarize(const DriverParams& params);
EffectSummary summarize(const GraphParams& params);

}  // namespace confounder_lab
