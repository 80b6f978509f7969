#include <doctest.h>

#include <rehypo/collateral.hpp>
#include <rehypo/errors.hpp>
#include <rehypo/network.hpp>
#include <rehypo/varhoard.hpp>

#include <cmath>
#include <vector>

#include "helpers.hpp"

using rehypo::RehypoNetwork;
using rehypo::VaRConfig;
using rehypo::VaREquilibrium;
using rehypo::Vector;
using rehypo::network_from_edges;
using rehypo::var_equilibrium;

TEST_CASE("uncertainty offset reproduces normal quantiles") {
  CHECK(rehypo::uncertainty_offset(0.0, 1.0, 0.5) == doctest::Approx(0.0));
  CHECK(std::abs(rehypo::uncertainty_offset(0.0, 1.0, 0.975) - 1.959963984540054) <= 1e-9);
  CHECK(std::abs(rehypo::uncertainty_offset(5.0, 2.0, 0.975) - 8.919927969080108) <= 1e-9);
  CHECK(rehypo::uncertainty_offset(0.0, 1.0, 0.16) < 0.0);  // below-median confidence
}

TEST_CASE("uncertainty offset validates its inputs") {
  CHECK_THROWS_AS(rehypo::uncertainty_offset(0.0, 0.0, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(rehypo::uncertainty_offset(0.0, -1.0, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(rehypo::uncertainty_offset(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rehypo::uncertainty_offset(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rehypo::uncertainty_offset(0.0, 1.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("config from normal parameters stacks per bank offsets") {
  const VaRConfig cfg = VaRConfig::from_normal(Vector::Zero(2), Vector{{1.0, 2.0}},
                                               Vector::Constant(2, 0.975), 0.1);
  CHECK(std::abs(cfg.c0(0) - 1.959963984540054) <= 1e-9);
  CHECK(std::abs(cfg.c0(1) - 2.0 * 1.959963984540054) <= 1e-9);
  CHECK_THROWS_AS(
      VaRConfig::from_normal(Vector::Zero(2), Vector::Ones(3), Vector::Constant(2, 0.9), 0.1),
      std::invalid_argument);
}

TEST_CASE("two bank hoarding equilibrium matches the hand solution") {
  const RehypoNetwork net = network_from_edges(2, {{0, 1}});
  const Vector a0 = Vector::Constant(2, 100.0);
  const VaREquilibrium eq = var_equilibrium(net, a0, VaRConfig::from_offsets(Vector::Ones(2), 0.1));

  CHECK(eq.a_c(0) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(eq.a_c(1) == doctest::Approx(189.0).epsilon(1e-12));  // 100 + (0.9 * 100 - 1)
  CHECK(eq.theta_star(0) == doctest::Approx(1.0 - 1.0 / 90.0).epsilon(1e-12));
  CHECK(std::isnan(eq.theta_star(1)));  // pledges to nobody, no fraction to choose
  CHECK(eq.a_c_out(0) == doctest::Approx(100.0 - 1.0 / 0.9).epsilon(1e-12));
  CHECK(eq.a_c_out(1) == 0.0);
  CHECK(eq.s_out == doctest::Approx(100.0 - 1.0 / 0.9).epsilon(1e-12));
  // The lone pledger re-pledges nothing it received, so velocity is exactly one.
  CHECK(eq.multiplier == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eq.ratio == doctest::Approx((100.0 - 1.0 / 0.9) / 200.0).epsilon(1e-12));
  CHECK(eq.feasible);
  CHECK(eq.feasibility_margin == doctest::Approx(100.0 - 1.0 / 0.9).epsilon(1e-12));
  CHECK(eq.self_consistency <= 1e-10);
  CHECK(eq.residual <= 1e-10);
}

TEST_CASE("symmetric ring hoarding equilibrium has the closed form") {
  // a_c = a0 + (1-h) a_c - c0 per bank, so a_c = (a0 - c0) / h.
  const RehypoNetwork ring = rehypo::gen_closed_k_regular(10, 1);
  const VaREquilibrium eq = var_equilibrium(ring, Vector::Constant(10, 100.0),
                                            VaRConfig::from_offsets(Vector::Ones(10), 0.1));
  for (int i = 0; i < 10; ++i) {
    CHECK(eq.a_c(i) == doctest::Approx(990.0).epsilon(1e-11));
    CHECK(eq.theta_star(i) == doctest::Approx(1.0 - 1.0 / 891.0).epsilon(1e-11));
    CHECK(eq.a_c_out(i) == doctest::Approx(990.0 - 10.0 / 9.0).epsilon(1e-11));
  }
  CHECK(eq.multiplier == doctest::Approx(9.9).epsilon(1e-11));
  CHECK(eq.self_consistency <= 1e-9);
}

TEST_CASE("network without pledges keeps endowments and defines nothing else") {
  const RehypoNetwork net = network_from_edges(3, {});
  const VaREquilibrium eq = var_equilibrium(net, Vector::Constant(3, 50.0),
                                            VaRConfig::from_offsets(Vector::Ones(3), 0.2));
  CHECK((eq.a_c - Vector::Constant(3, 50.0)).cwiseAbs().maxCoeff() <= 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(std::isnan(eq.theta_star(i)));
  CHECK(eq.s_out == 0.0);
  CHECK(std::isnan(eq.multiplier));
  CHECK(eq.ratio == 0.0);
  CHECK(std::isnan(eq.feasibility_margin));
}

TEST_CASE("direct solve agrees with fixed point iteration from any start") {
  const RehypoNetwork net = rehypo::gen_random_directed(20, 0.15, 5);
  const Vector a0 = Vector::Constant(20, 100.0);
  const Vector c0 = Vector::Ones(20);
  const VaREquilibrium eq = var_equilibrium(net, a0, VaRConfig::from_offsets(c0, 0.1));
  const std::vector<Vector> starts = {a0, Vector::Constant(20, 1.0 / 0.9),
                                      Vector::Constant(20, 1000.0)};
  for (const Vector& start : starts) {
    const Vector picard = test_support::picard_var_oracle(net, a0, c0, 0.1, start);
    CHECK((eq.a_c - picard).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("fixed fractions chosen by hoarding reproduce the same books") {
  // Running the fixed-fraction model at theta = theta_star must return the
  // exact same balance sheets; the two solvers cross-validate each other.
  const RehypoNetwork net = rehypo::gen_random_directed(15, 0.2, 9);
  const Vector a0 = Vector::Constant(15, 100.0);
  const VaREquilibrium var = var_equilibrium(net, a0, VaRConfig::from_offsets(Vector::Ones(15), 0.1));

  rehypo::BankParams fixed;
  fixed.a0 = a0;
  fixed.haircut = 0.1;
  fixed.theta = Vector::Zero(15);
  for (int i = 0; i < 15; ++i)
    fixed.theta(i) = std::isnan(var.theta_star(i)) ? 0.0 : var.theta_star(i);

  const rehypo::FlowEquilibrium eq = rehypo::equilibrium(net, fixed);
  CHECK((eq.a_c - var.a_c).lpNorm<Eigen::Infinity>() <= 1e-8);
  CHECK((eq.a_c_out - var.a_c_out).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("hoarding fraction responds to endowments and buffers as expected") {
  // On the two bank net the pledger's books equal its endowment, which makes
  // the finite difference derivatives of theta_star clean to pin down.
  const RehypoNetwork net = network_from_edges(2, {{0, 1}});
  const auto theta0 = [&](double a0_first, double c0_first) {
    const Vector a0{{a0_first, 100.0}};
    const Vector c0{{c0_first, 1.0}};
    return var_equilibrium(net, a0, VaRConfig::from_offsets(c0, 0.1)).theta_star(0);
  };
  const double eps = 1e-3;
  const double da = (theta0(100.0 + eps, 1.0) - theta0(100.0 - eps, 1.0)) / (2.0 * eps);
  const double dc = (theta0(100.0, 1.0 + eps) - theta0(100.0, 1.0 - eps)) / (2.0 * eps);
  CHECK(da == doctest::Approx(1.0 / 9000.0).epsilon(1e-6));   // richer banks hoard less
  CHECK(dc == doctest::Approx(-1.0 / 90.0).epsilon(1e-6));    // bigger buffers bite
}

TEST_CASE("infeasible buffers raise a typed error naming the banks") {
  const RehypoNetwork pair = network_from_edges(2, {{0, 1}});
  const Vector a0{{1.0, 100.0}};
  try {
    var_equilibrium(pair, a0, VaRConfig::from_offsets(Vector::Constant(2, 5.0), 0.1));
    FAIL("expected InfeasibleHoardingError");
  } catch (const rehypo::InfeasibleHoardingError& err) {
    CHECK(err.banks() == std::vector<int>{0});
    CHECK(std::string(err.what()).find("0") != std::string::npos);
  }
}

TEST_CASE("infeasibility points at the starved bank in the middle of a chain") {
  const RehypoNetwork chain = network_from_edges(3, {{0, 1}, {1, 2}});
  const Vector a0{{100.0, 2.0, 100.0}};
  const Vector c0{{1.0, 95.0, 1.0}};
  try {
    var_equilibrium(chain, a0, VaRConfig::from_offsets(c0, 0.1));
    FAIL("expected InfeasibleHoardingError");
  } catch (const rehypo::InfeasibleHoardingError& err) {
    CHECK(err.banks() == std::vector<int>{1});  // bank 0 can cover, bank 2 pledges nothing
  }
}

TEST_CASE("hoarding solver validates shapes and the haircut range") {
  const RehypoNetwork pair = network_from_edges(2, {{0, 1}});
  const Vector a0 = Vector::Constant(2, 100.0);
  CHECK_THROWS_AS(var_equilibrium(pair, Vector::Constant(3, 100.0),
                                  VaRConfig::from_offsets(Vector::Ones(2), 0.1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(var_equilibrium(pair, a0, VaRConfig::from_offsets(Vector::Ones(3), 0.1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(var_equilibrium(pair, Vector{{-1.0, 100.0}},
                                  VaRConfig::from_offsets(Vector::Ones(2), 0.1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(var_equilibrium(pair, a0, VaRConfig::from_offsets(Vector::Ones(2), 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(var_equilibrium(pair, a0, VaRConfig::from_offsets(Vector::Ones(2), 1.0)),
                  std::invalid_argument);
}

TEST_CASE("default probability recovers the confidence complement at the buffer") {
  // Keep back exactly the offset for confidence c and the breach probability
  // is 1 - c by construction.
  const double offset = rehypo::uncertainty_offset(0.0, 1.0, 0.975);
  const double a_c = offset / ((1.0 - 0.1) * (1.0 - 0.0));
  CHECK(rehypo::default_probability(a_c, 0.0, 0.0, 1.0, 0.1) ==
        doctest::Approx(0.025).epsilon(1e-10));
}

TEST_CASE("default probability behaves across the parameter range") {
  CHECK(rehypo::default_probability(100.0, 1.0, 0.0, 1.0, 0.1) == doctest::Approx(0.5));
  CHECK(rehypo::default_probability(0.0, 0.5, 0.0, 1.0, 0.1) == doctest::Approx(0.5));
  CHECK(rehypo::default_probability(1e6, 0.5, 0.0, 1.0, 0.1) <= 1e-15);
  CHECK(rehypo::default_probability(100.0, 0.5, -1e6, 1.0, 0.1) <= 1e-15);
  // More severe expected shocks raise the breach probability.
  double prev = 0.0;
  for (double mu : {-10.0, 0.0, 10.0, 30.0}) {
    const double p = rehypo::default_probability(100.0, 0.9, mu, 5.0, 0.1);
    CHECK(p > prev);
    prev = p;
  }
  CHECK_THROWS_AS(rehypo::default_probability(100.0, 0.5, 0.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("hoarding books dominate the endowment only through received pledges") {
  // Property run: books never fall below what feasibility requires, outflow
  // stays nonnegative, and reported diagnostics stay tight.
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const RehypoNetwork net = rehypo::gen_random_directed(25, 0.15, seed);
    const Vector a0 = Vector::Constant(25, 100.0);
    const VaREquilibrium eq =
        var_equilibrium(net, a0, VaRConfig::from_offsets(Vector::Ones(25), 0.1));
    CHECK(eq.a_c_out.minCoeff() >= 0.0);
    CHECK(eq.feasibility_margin >= 0.0);
    CHECK(eq.self_consistency <= 1e-9);
    CHECK(eq.residual <= 1e-9);
    for (int i = 0; i < 25; ++i) {
      if (std::isnan(eq.theta_star(i))) continue;
      CHECK(eq.theta_star(i) <= 1.0);
      CHECK(eq.a_c_out(i) == doctest::Approx(eq.theta_star(i) * eq.a_c(i)).epsilon(1e-10));
    }
  }
}
