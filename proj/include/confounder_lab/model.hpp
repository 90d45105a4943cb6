#pragma once

// Parameterizations of the two four-variable causal graphs:
//
//   proxy graph   p(A,C,D,Y) = p(C) p(D|C) p(A|C) p(Y|A,C)   (C -> D)
//   driver graph  p(A,C,D,Y) = p(D) p(C|D) p(A|C) p(Y|A,C)   (D -> C)
//
// A, C, D are binary; level 1 is the "present" value (a, c, d) and level 0
// its complement. Y enters only through the conditional means E[Y|A,C].

#include <array>
#include <cstdint>
#include <variant>

namespace confounder_lab {

/// P(X = 1 | parent) for both parent levels. Note the member order: the
/// parent-present probability comes first, matching the JSON layout.
struct Conditional {
  double given_1 = 0.5;
  double given_0 = 0.5;

  double operator[](int parent_level) const {
    return parent_level != 0 ? given_1 : given_0;
  }
  friend bool operator==(const Conditional&, const Conditional&) = default;
};

/// mean[a][c] = E[Y | A=a, C=c].
struct OutcomeMeans {
  std::array<std::array<double, 2>, 2> mean{};

  double operator()(int a, int c) const { return mean[a][c]; }
  friend bool operator==(const OutcomeMeans&, const OutcomeMeans&) = default;
};

struct ProxyParams {
  double p_c = 0.5;         // P(C=c)
  Conditional p_d_given_c;  // P(D=d | C)
  Conditional p_a_given_c;  // P(A=a | C)
  OutcomeMeans mu;

  friend bool operator==(const ProxyParams&, const ProxyParams&) = default;
};

struct DriverParams {
  double p_d = 0.5;         // P(D=d)
  Conditional p_c_given_d;  // P(C=c | D)
  Conditional p_a_given_c;  // P(A=a | C)
  OutcomeMeans mu;

  friend bool operator==(const DriverParams&, const DriverParams&) = default;
};

using GraphParams = std::variant<ProxyParams, DriverParams>;

/// p[a][c][d] = P(A=a, C=c, D=d).
struct JointTable {
  std::array<std::array<std::array<double, 2>, 2>, 2> p{};
  OutcomeMeans mu;

  double total() const;
  double max_abs_diff(const JointTable& other) const;
};

/// Throws Error{OutOfRange} if any probability is outside the open interval
/// (0,1) or any mean is non-finite, and Error{DegenerateProxy} if C and D are
/// independent.
void validate(const ProxyParams& params);
void validate(const DriverParams& params);
void validate(const GraphParams& params);

/// How random parameterizations are drawn.
enum class SamplingScheme {
  // Each conditional distribution is two i.i.d. U(0,1) weights normalized to
  // sum to one. Reproduces the published experiment's cell frequencies.
  NormalizedWeights,
  // Each probability is a single U(0,1) draw.
  IidUniform,
};

/// Random parameterizations; pure functions of the seed. Means are U(0,1).
ProxyParams sample_proxy(std::uint64_t seed,
                         SamplingScheme scheme = SamplingScheme::NormalizedWeights);
DriverParams sample_driver(std::uint64_t seed,
                           SamplingScheme scheme = SamplingScheme::NormalizedWeights);

/// Re-expresses a driver-graph distribution on the proxy graph by Bayes
/// inversion of p(C|D). The induced joint over (A,C,D) and E[Y|A,C] is unchanged.
ProxyParams to_proxy(const DriverParams& params);

/// The proxy form of either graph (identity for proxy params).
ProxyParams as_proxy(const GraphParams& params);

JointTable joint_table(const ProxyParams& params);
JointTable joint_table(const DriverParams& params);
JointTable joint_table(const GraphParams& params);

}  // namespace confounder_lab
