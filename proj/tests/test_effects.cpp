#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "confounder_lab/effects.hpp"
#include "confounder_lab/rng.hpp"
#include "generators.hpp"
#include "oracle/joint_oracle.hpp"

using namespace confounder_lab;

namespace {

ProxyParams symmetric(double p) {
  ProxyParams x;
  x.p_c = 0.5;
  x.p_d_given_c = {p, 1.0 - p};
  x.p_a_given_c = {p, 1.0 - p};
  x.mu.mean = {{{0.3, 0.1}, {0.2, 0.9}}};
  return x;
}

ProxyParams constant_rows(double m0, double m1) {
  ProxyParams x;
  x.p_c = 0.37;
  x.p_d_given_c = {0.81, 0.12};
  x.p_a_given_c = {0.66, 0.21};
  x.mu.mean = {{{m0, m0}, {m1, m1}}};
  return x;
}

}  // namespace

TEST_CASE("posteriors under the symmetric nonmonotone setup") {
  for (double p : {0.5 + 1e-9, 0.6, 0.75, 0.9, 0.99}) {
    const auto x = symmetric(p);
    CHECK(std::abs(posterior_c(x, 0, 1) - 0.5) < 1e-12);
    CHECK(std::abs(posterior_c(x, 1, 0) - 0.5) < 1e-12);
    const double c_ad = posterior_c(x, 1, 1);
    const double notc_notanotd = 1.0 - posterior_c(x, 0, 0);
    CHECK(std::abs(c_ad - notc_notanotd) < 1e-12);
    CHECK(c_ad >= 0.5);
  }
}

TEST_CASE("posterior and its logistic form agree with the oracle") {
  gen::Source s(21);
  for (int i = 0; i < 10000; ++i) {
    const auto x = gen::proxy(s);
    const auto q = oracle::quantities(x);
    for (int a = 0; a < 2; ++a)
      for (int d = 0; d < 2; ++d) {
        REQUIRE(std::abs(posterior_c(x, a, d) - q.post_c[a][d]) <= 1e-12);
        REQUIRE(std::abs(posterior_c_sigmoid(x, a, d) - posterior_c(x, a, d)) <= 1e-12);
      }
  }
}

TEST_CASE("sigmoid is stable at extremes") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(800.0) == 1.0);
  CHECK(sigmoid(-800.0) >= 0.0);
  CHECK(std::isfinite(sigmoid(-800.0)));
  CHECK(sigmoid(2.0) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));
}

TEST_CASE("constant mean rows") {
  const auto x = constant_rows(0.25, 0.7);
  for (int d = 0; d < 2; ++d) {
    CHECK(cond_mean_y_ad(x, 1, d) == doctest::Approx(0.7));
    CHECK(cond_mean_y_ad(x, 0, d) == doctest::Approx(0.25));
  }
  CHECK(rd_true(x) == doctest::Approx(0.45));
  CHECK(rd_obs(x) == doctest::Approx(0.45));
  CHECK(rd_crude(x) == doctest::Approx(0.45));
  CHECK(s_values(x).treated == doctest::Approx(0.7));
}

TEST_CASE("rd_true: symmetric cancellation at p_c = 0.5") {
  ProxyParams x;
  x.p_c = 0.5;
  x.p_d_given_c = {0.7, 0.2};
  x.p_a_given_c = {0.6, 0.3};
  x.mu.mean = {{{0.2, 0.8}, {0.9, 0.1}}};
  CHECK(std::abs(rd_true(x)) < 1e-15);
  const auto e = e_y_do(x);
  CHECK(e.treated == doctest::Approx((0.9 + 0.1) / 2));
  CHECK(e.control == doctest::Approx((0.2 + 0.8) / 2));
}

TEST_CASE("no confounding: crude equals true") {
  gen::Source s(22);
  for (int i = 0; i < 1000; ++i) {
    auto x = gen::proxy(s);
    x.p_a_given_c.given_0 = x.p_a_given_c.given_1;
    const auto sm = summarize(x);
    REQUIRE(gen::near(sm.rd_crude, sm.rd_true));
    REQUIRE(gen::near(sm.rd_obs, sm.rd_true));
  }
}

TEST_CASE("cond_mean_y_ad: near-certain posterior pulls toward mu[a][c]") {
  ProxyParams x;
  x.p_c = 0.5;
  x.p_d_given_c = {1.0 - 1e-9, 1e-9};
  x.p_a_given_c = {0.5, 0.5};
  x.mu.mean = {{{0.1, 0.6}, {0.3, 0.8}}};
  CHECK(cond_mean_y_ad(x, 1, 1) == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(cond_mean_y_ad(x, 1, 0) == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("perfect-proxy limit: rd_obs approaches rd_true") {
  ProxyParams x;
  x.p_c = 0.35;
  x.p_a_given_c = {0.8, 0.3};
  x.mu.mean = {{{0.2, 0.5}, {0.4, 0.95}}};
  double prev = 1.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    x.p_d_given_c = {1.0 - eps, eps};
    const double gap = std::abs(rd_obs(x) - oracle::quantities(x).rd_true);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("every effect quantity matches the oracle") {
  gen::Source s(23);
  for (int i = 0; i < 10000; ++i) {
    const auto x = gen::proxy(s);
    const auto q = oracle::quantities(x);
    const auto sm = summarize(x);
    const auto dc = derive(x);
    REQUIRE(gen::near(sm.rd_true, q.rd_true));
    REQUIRE(gen::near(sm.rd_obs, q.rd_obs));
    REQUIRE(gen::near(sm.rd_crude, q.rd_crude));
    REQUIRE(gen::near(sm.e_y_do.treated, q.e_y_do[1]));
    REQUIRE(gen::near(sm.e_y_do.control, q.e_y_do[0]));
    REQUIRE(gen::near(sm.s.treated, q.s[1]));
    REQUIRE(gen::near(sm.s.control, q.s[0]));
    REQUIRE(std::abs(marginal_d(x) - q.p_d) <= 1e-12);
    REQUIRE(std::abs(dc.p_d - q.p_d) <= 1e-12);
    for (int a = 0; a < 2; ++a) {
      REQUIRE(gen::near(cond_mean_y_a(x, a), q.e_y_a[a]));
      REQUIRE(std::abs(posterior_c_given_a(x, a) - q.p_c_given_a[a]) <= 1e-12);
      for (int d = 0; d < 2; ++d) {
        REQUIRE(gen::near(dc.e_y_given_ad[a][d], q.e_y_ad[a][d]));
        REQUIRE(std::abs(dc.p_c_given_ad[a][d] - q.post_c[a][d]) <= 1e-12);
      }
    }
    for (int d = 0; d < 2; ++d) REQUIRE(std::abs(prob_a_given_d(x, d) - q.p_a_given_d[d]) <= 1e-12);
  }
}

TEST_CASE("summary identities and convexity") {
  gen::Source s(24);
  for (int i = 0; i < 10000; ++i) {
    const auto x = gen::proxy(s);
    const auto sm = summarize(x);
    REQUIRE(gen::near(sm.rd_true, sm.e_y_do.difference()));
    REQUIRE(gen::near(sm.rd_obs, sm.s.difference()));
    for (int a = 0; a < 2; ++a) {
      const double lo = std::min(x.mu(a, 0), x.mu(a, 1));
      const double hi = std::max(x.mu(a, 0), x.mu(a, 1));
      for (int d = 0; d < 2; ++d) {
        const double m = cond_mean_y_ad(x, a, d);
        REQUIRE(m >= lo - 1e-12 * (1 + std::abs(lo)));
        REQUIRE(m <= hi + 1e-12 * (1 + std::abs(hi)));
        const double pc = posterior_c(x, a, d);
        REQUIRE((pc >= 0.0 && pc <= 1.0));
      }
    }
  }
}

void check_driver_against_oracle(gen::Source& s, int n, double tol) {
  for (int i = 0; i < n; ++i) {
    const auto x = gen::driver(s);
    const auto q = oracle::quantities(x);
    const auto sm = summarize(x);
    const auto via = summarize(to_proxy(x));
    REQUIRE(gen::near(sm.rd_true, q.rd_true, tol));
    REQUIRE(gen::near(sm.rd_obs, q.rd_obs, tol));
    REQUIRE(gen::near(sm.rd_crude, q.rd_crude, tol));
    REQUIRE(gen::near(sm.s.treated, q.s[1], tol));
    REQUIRE(gen::near(sm.s.control, q.s[0], tol));
    REQUIRE(gen::near(sm.e_y_do.treated, q.e_y_do[1], tol));
    REQUIRE(gen::near(sm.e_y_do.control, q.e_y_do[0], tol));
    REQUIRE(sm.rd_obs == via.rd_obs);
    const GraphParams g = x;
    REQUIRE(summarize(g).rd_true == sm.rd_true);
  }
}

TEST_CASE("driver summaries match the driver oracle") {
  gen::Source interior(25, false);
  check_driver_against_oracle(interior, 10000, 1e-12);
}

TEST_CASE("driver summaries near the edges of (0,1)") {
  // A conditional within 1e-7 of one leaves its complement with only ~9
  // significant digits once re-expressed in proxy form.
  gen::Source edgy(26);
  check_driver_against_oracle(edgy, 10000, 1e-9);
}
