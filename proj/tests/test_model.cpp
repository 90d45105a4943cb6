#include <cmath>
#include <limits>

#include "doctest.h"

#include "confounder_lab/errors.hpp"
#include "confounder_lab/model.hpp"
#include "confounder_lab/rng.hpp"
#include "generators.hpp"
#include "oracle/joint_oracle.hpp"

using namespace confounder_lab;

namespace {

ProxyParams interior() {
  ProxyParams p;
  p.p_c = 0.3;
  p.p_d_given_c = {0.8, 0.2};
  p.p_a_given_c = {0.7, 0.4};
  p.mu.mean = {{{0.1, 0.9}, {0.6, 0.2}}};
  return p;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("validate accepts an interior point") {
  CHECK_NOTHROW(validate(interior()));
}

TEST_CASE("validate rejects an uninformative proxy") {
  auto p = interior();
  p.p_d_given_c = {0.5, 0.5};
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::DegenerateProxy);

  DriverParams x;
  x.p_c_given_d = {0.3, 0.3};
  CHECK(kind_of([&] { validate(x); }) == ErrorKind::DegenerateProxy);
}

TEST_CASE("validate rejects boundary and non-finite values") {
  auto p = interior();
  p.p_c = 1.0;
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::OutOfRange);
  p = interior();
  p.p_a_given_c.given_0 = 0.0;
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::OutOfRange);
  p = interior();
  p.p_d_given_c.given_1 = std::numeric_limits<double>::quiet_NaN();
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::OutOfRange);
  p = interior();
  p.mu.mean[1][0] = std::numeric_limits<double>::infinity();
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::OutOfRange);

  DriverParams x;
  x.p_c_given_d = {0.9, 0.1};
  x.p_d = -0.1;
  CHECK(kind_of([&] { validate(x); }) == ErrorKind::OutOfRange);
}

TEST_CASE("equal treatment conditionals are allowed") {
  auto p = interior();
  p.p_a_given_c = {0.4, 0.4};
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("samplers are pure functions of the seed and always valid") {
  for (auto scheme : {SamplingScheme::NormalizedWeights, SamplingScheme::IidUniform}) {
    CHECK(sample_proxy(42, scheme) == sample_proxy(42, scheme));
    CHECK(sample_driver(42, scheme) == sample_driver(42, scheme));
    CHECK_FALSE(sample_proxy(42, scheme) == sample_proxy(43, scheme));
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const auto p = sample_proxy(derive_seed(7, i), scheme);
      const auto x = sample_driver(derive_seed(7, i), scheme);
      REQUIRE_NOTHROW(validate(p));
      REQUIRE_NOTHROW(validate(x));
      for (auto& row : p.mu.mean)
        for (double m : row) REQUIRE((m > 0.0 && m < 1.0));
    }
  }
}

TEST_CASE("iid scheme draws each probability uniformly") {
  // Mean of p_c over many seeds is 1/2 with sd ~ 0.29/sqrt(n).
  double sum = 0.0, sum_d = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto p = sample_proxy(derive_seed(3, i), SamplingScheme::IidUniform);
    sum += p.p_c;
    sum_d += p.p_d_given_c.given_0;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum_d / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("to_proxy: symmetric inversion") {
  DriverParams x;
  x.p_d = 0.5;
  x.p_c_given_d = {0.9, 0.1};
  x.p_a_given_c = {0.6, 0.3};
  const auto p = to_proxy(x);
  CHECK(p.p_c == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.p_d_given_c.given_1 == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(p.p_d_given_c.given_0 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(p.p_a_given_c == x.p_a_given_c);
  CHECK(p.mu == x.mu);
}

TEST_CASE("to_proxy: hand Bayes computation") {
  DriverParams x;
  x.p_d = 0.4;
  x.p_c_given_d = {0.7, 0.2};
  const auto p = to_proxy(x);
  // p_c = .4*.7 + .6*.2 = .40; P(d|c) = .7*.4/.40; P(d|c̄) = .3*.4/.60
  CHECK(std::abs(p.p_c - 0.40) < 1e-12);
  CHECK(std::abs(p.p_d_given_c.given_1 - 0.70) < 1e-12);
  CHECK(std::abs(p.p_d_given_c.given_0 - 0.20) < 1e-12);

  const auto j = oracle::enumerate(x);
  CHECK(std::abs(oracle::prob(j, -1, 1, -1) - p.p_c) < 1e-12);
  CHECK(std::abs(oracle::prob(j, -1, 1, 1) / oracle::prob(j, -1, 1, -1) - p.p_d_given_c.given_1) <
        1e-12);
  CHECK(std::abs(oracle::prob(j, -1, 0, 1) / oracle::prob(j, -1, 0, -1) - p.p_d_given_c.given_0) <
        1e-12);
}

TEST_CASE("to_proxy preserves the joint") {
  gen::Source s(11);
  for (int i = 0; i < 10000; ++i) {
    const auto x = gen::driver(s);
    const auto p = to_proxy(x);
    REQUIRE_NOTHROW(validate(p));
    REQUIRE(joint_table(x).max_abs_diff(joint_table(p)) <= 1e-12);
  }
}

TEST_CASE("joint_table: product of factors by hand") {
  ProxyParams p;
  p.p_c = 0.5;
  p.p_d_given_c = {0.6, 0.4};
  p.p_a_given_c = {0.5, 0.5};
  const auto t = joint_table(p);
  CHECK(t.p[1][1][1] == doctest::Approx(0.15));  // .5 * .6 * .5
  CHECK(t.p[1][1][0] == doctest::Approx(0.10));
  CHECK(t.p[0][0][1] == doctest::Approx(0.10));
  CHECK(t.p[0][0][0] == doctest::Approx(0.15));
  CHECK(t.total() == doctest::Approx(1.0));
}

TEST_CASE("joint_table agrees with the oracle, normalizes, and recovers p_c") {
  gen::Source s(12);
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen::proxy(s);
    const auto x = gen::driver(s);
    const auto tp = joint_table(p);
    const auto tx = joint_table(x);
    const auto jp = oracle::enumerate(p);
    const auto jx = oracle::enumerate(x);
    REQUIRE(std::abs(tp.total() - 1.0) <= 1e-12);
    REQUIRE(std::abs(tx.total() - 1.0) <= 1e-12);
    double pc = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          REQUIRE(tp.p[a][c][d] >= 0.0);
          REQUIRE(std::abs(tp.p[a][c][d] - jp.p[a][c][d]) <= 1e-15);
          REQUIRE(std::abs(tx.p[a][c][d] - jx.p[a][c][d]) <= 1e-15);
          if (c) pc += tp.p[a][c][d];
        }
    REQUIRE(std::abs(pc - p.p_c) <= 1e-12);
  }
}

TEST_CASE("GraphParams overloads dispatch") {
  DriverParams x;
  x.p_c_given_d = {0.9, 0.2};
  const GraphParams g = x;
  CHECK(as_proxy(g) == to_proxy(x));
  CHECK(joint_table(g).max_abs_diff(joint_table(x)) == 0.0);
  const GraphParams gp = interior();
  CHECK(as_proxy(gp) == interior());
  CHECK_NOTHROW(validate(gp));
}

TEST_CASE("derive_seed is counter based") {
  CHECK(derive_seed(5, 0) != derive_seed(5, 1));
  CHECK(derive_seed(5, 3) == derive_seed(5, 3));
  Rng r(9);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    REQUIRE((u > 0.0 && u < 1.0));
  }
}
