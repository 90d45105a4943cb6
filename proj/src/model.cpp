#include "confounder_lab/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "confounder_lab/errors.hpp"
#include "confounder_lab/rng.hpp"

namespace confounder_lab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateProxy: return "DegenerateProxy";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptyStratum: return "EmptyStratum";
    case ErrorKind::MuOutOfRange: return "MuOutOfRange";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

void require_open_unit(double p, const char* name) {
  // NaN fails both comparisons.
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::OutOfRange,
                std::string(name) + " = " + std::to_string(p) + " is not in (0,1)");
  }
}

void require_finite(const OutcomeMeans& mu) {
  for (const auto& row : mu.mean) {
    for (double m : row) {
      if (!std::isfinite(m)) throw Error(ErrorKind::OutOfRange, "mu entry is not finite");
    }
  }
}

OutcomeMeans sample_means(Rng& rng) {
  OutcomeMeans mu;
  for (auto& row : mu.mean) {
    for (double& m : row) m = rng.uniform();
  }
  return mu;
}

double sample_probability(Rng& rng, SamplingScheme scheme) {
  if (scheme == SamplingScheme::IidUniform) return rng.uniform();
  const double w1 = rng.uniform();
  const double w0 = rng.uniform();
  return w1 / (w1 + w0);
}

bool is_valid(const auto& params) {
  try {
    validate(params);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

double JointTable::total() const {
  double s = 0.0;
  for (const auto& pa : p)
    for (const auto& pc : pa)
      for (double v : pc) s += v;
  return s;
}

double JointTable::max_abs_diff(const JointTable& other) const {
  double m = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d) m = std::max(m, std::abs(p[a][c][d] - other.p[a][c][d]));
  return m;
}

void validate(const ProxyParams& params) {
  require_open_unit(params.p_c, "p_c");
  require_open_unit(params.p_d_given_c.given_1, "p_d_given_c[c]");
  require_open_unit(params.p_d_given_c.given_0, "p_d_given_c[not c]");
  require_open_unit(params.p_a_given_c.given_1, "p_a_given_c[c]");
  require_open_unit(params.p_a_given_c.given_0, "p_a_given_c[not c]");
  require_finite(params.mu);
  if (params.p_d_given_c.given_1 == params.p_d_given_c.given_0) {
    throw Error(ErrorKind::DegenerateProxy,
                "P(d|c) == P(d|not c): C and D are independent");
  }
}

void validate(const DriverParams& params) {
  require_open_unit(params.p_d, "p_d");
  require_open_unit(params.p_c_given_d.given_1, "p_c_given_d[d]");
  require_open_unit(params.p_c_given_d.given_0, "p_c_given_d[not d]");
  require_open_unit(params.p_a_given_c.given_1, "p_a_given_c[c]");
  require_open_unit(params.p_a_given_c.given_0, "p_a_given_c[not c]");
  require_finite(params.mu);
  if (params.p_c_given_d.given_1 == params.p_c_given_d.given_0) {
    throw Error(ErrorKind::DegenerateProxy,
                "P(c|d) == P(c|not d): C and D are independent");
  }
}

void validate(const GraphParams& params) {
  std::visit([](const auto& p) { validate(p); }, params);
}

ProxyParams sample_proxy(std::uint64_t seed, SamplingScheme scheme) {
  Rng rng(seed);
  for (;;) {
    ProxyParams p;
    p.p_c = sample_probability(rng, scheme);
    p.p_d_given_c.given_1 = sample_probability(rng, scheme);
    p.p_d_given_c.given_0 = sample_probability(rng, scheme);
    p.p_a_given_c.given_1 = sample_probability(rng, scheme);
    p.p_a_given_c.given_0 = sample_probability(rng, scheme);
    p.mu = sample_means(rng);
    if (is_valid(p)) return p;
  }
}

DriverParams sample_driver(std::uint64_t seed, SamplingScheme scheme) {
  Rng rng(seed);
  for (;;) {
    DriverParams p;
    p.p_d = sample_probability(rng, scheme);
    p.p_c_given_d.given_1 = sample_probability(rng, scheme);
    p.p_c_given_d.given_0 = sample_probability(rng, scheme);
    p.p_a_given_c.given_1 = sample_probability(rng, scheme);
    p.p_a_given_c.given_0 = sample_probability(rng, scheme);
    p.mu = sample_means(rng);
    if (is_valid(p)) return p;
  }
}

ProxyParams to_proxy(const DriverParams& params) {
  const double p_d = params.p_d;
  const double p_c = params.p_c_given_d.given_1 * p_d + params.p_c_given_d.given_0 * (1.0 - p_d);

  ProxyParams out;
  out.p_c = p_c;
  out.p_d_given_c.given_1 = params.p_c_given_d.given_1 * p_d / p_c;
  out.p_d_given_c.given_0 = (1.0 - params.p_c_given_d.given_1) * p_d / (1.0 - p_c);
  out.p_a_given_c = params.p_a_given_c;
  out.mu = params.mu;
  return out;
}

ProxyParams as_proxy(const GraphParams& params) {
  if (const auto* driver = std::get_if<DriverParams>(&params)) return to_proxy(*driver);
  return std::get<ProxyParams>(params);
}

JointTable joint_table(const ProxyParams& params) {
  JointTable t;
  t.mu = params.mu;
  for (int c = 0; c < 2; ++c) {
    const double pc = c ? params.p_c : 1.0 - params.p_c;
    const double pd1 = params.p_d_given_c[c];
    const double pa1 = params.p_a_given_c[c];
    for (int a = 0; a < 2; ++a) {
      const double pa = a ? pa1 : 1.0 - pa1;
      for (int d = 0; d < 2; ++d) {
        const double pd = d ? pd1 : 1.0 - pd1;
        t.p[a][c][d] = pc * pd * pa;
      }
    }
  }
  return t;
}

JointTable joint_table(const DriverParams& params) {
  JointTable t;
  t.mu = params.mu;
  for (int d = 0; d < 2; ++d) {
    const double pd = d ? params.p_d : 1.0 - params.p_d;
    const double pc1 = params.p_c_given_d[d];
    for (int c = 0; c < 2; ++c) {
      const double pc = c ? pc1 : 1.0 - pc1;
      const double pa1 = params.p_a_given_c[c];
      for (int a = 0; a < 2; ++a) {
        const double pa = a ? pa1 : 1.0 - pa1;
        t.p[a][c][d] = pd * pc * pa;
      }
    }
  }
  return t;
}

JointTable joint_table(const GraphParams& params) {
  return std::visit([](const auto& p) { return joint_table(p); }, params);
}

}  // namespace confounder_lab
