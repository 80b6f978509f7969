#pragma once

// Endogenous hoarding. Each pledging bank keeps back just enough collateral
// to cover a value-at-risk liquidity buffer c0 and passes on the rest, which
// couples every bank's books to its borrowers'. The resulting nonlinear-
// looking system collapses to one linear solve (the per-bank buffer enters
// additively), but we still verify the self-consistent equations afterwards.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rehypo/errors.hpp"
#include "rehypo/network.hpp"
#include "rehypo/solvers.hpp"
#include "rehypo/special_functions.hpp"

namespace rehypo {

// Buffer a bank must hold so that a normal liquidity shock N(mu, sigma)
// exceeds it only with probability 1 - confidence.
inline double uncertainty_offset(double mu, double sigma, double confidence) {
  if (!(sigma > 0.0)) throw std::invalid_argument("uncertainty_offset: sigma must be positive");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("uncertainty_offset: confidence must lie in (0, 1)");
  return sigma * std::numbers::sqrt2 * argerf(2.0 * confidence - 1.0) + mu;
}

struct VaRConfig {
  Vector c0;             // per-bank liquidity buffer
  double haircut = 0.0;  // h in (0, 1)

  // Buffers stated directly.
  static VaRConfig from_offsets(Vector c0, double haircut) {
    return VaRConfig{std::move(c0), haircut};
  }

  // Buffers derived from per-bank normal shock parameters at a confidence level.
  static VaRConfig from_normal(const Vector& mu, const Vector& sigma, const Vector& confidence,
                               double haircut) {
    if (sigma.size() != mu.size() || confidence.size() != mu.size())
      throw std::invalid_argument("VaRConfig: mu, sigma, confidence must have equal length");
    Vector c0(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i)
      c0(i) = uncertainty_offset(mu(i), sigma(i), confidence(i));
    return VaRConfig{std::move(c0), haircut};
  }
};

struct VaREquilibrium {
  Vector a_c;         // collateral under management
  Vector theta_star;  // chosen re-pledge fraction; NaN for banks that pledge to nobody
  Vector a_c_out;     // equilibrium outflow, zero for non-pledging banks
  double s_out = 0.0;
  double s0 = 0.0;
  double s0_out = 0.0;      // outflow the chosen fractions would produce from endowments alone
  double multiplier = 0.0;  // s_out / s0_out, NaN when s0_out is zero
  double ratio = 0.0;       // s_out / s0
  double residual = 0.0;    // linear solve defect, inf-norm
  double self_consistency = 0.0;  // defect of the coupled hoarding equations, inf-norm
  bool feasible = false;          // always true on return; infeasibility throws
  double feasibility_margin = 0.0;  // min over pledging banks of a_c - c0/(1-h)
};

// Solves the hoarding equilibrium. Throws InfeasibleHoardingError when some
// pledging bank cannot cover its buffer even hoarding everything; by design
// that is a hard failure, never a clamped result.
inline VaREquilibrium var_equilibrium(const RehypoNetwork& net, const Vector& a0,
                                      const VaRConfig& cfg) {
  const int n = net.node_count();
  if (a0.size() != n || cfg.c0.size() != n)
    throw std::invalid_argument("var_equilibrium: parameter vectors must have one entry per node");
  if ((a0.array() < 0.0).any())
    throw std::invalid_argument("var_equilibrium: own collateral must be nonnegative");
  if (!(cfg.haircut > 0.0 && cfg.haircut < 1.0))
    throw std::invalid_argument("var_equilibrium: haircut must lie in (0, 1)");

  const double keep = 1.0 - cfg.haircut;
  const Matrix s = share_matrix(net);
  SolveReport report =
      lu_solve(Matrix::Identity(n, n) - keep * s, a0 - s * cfg.c0);

  VaREquilibrium eq;
  eq.a_c = std::move(report.x);
  eq.residual = report.residual;

  std::vector<int> short_banks;
  eq.feasibility_margin = std::numeric_limits<double>::quiet_NaN();
  for (int j = 0; j < n; ++j) {
    if (!net.pledges()[static_cast<std::size_t>(j)]) continue;
    const double margin = eq.a_c(j) - cfg.c0(j) / keep;
    if (margin < 0.0) short_banks.push_back(j);
    if (std::isnan(eq.feasibility_margin) || margin < eq.feasibility_margin)
      eq.feasibility_margin = margin;
  }
  if (!short_banks.empty()) {
    std::string msg = "var_equilibrium: buffer exceeds what these banks can hoard:";
    for (int j : short_banks) msg += " " + std::to_string(j);
    throw InfeasibleHoardingError(msg, std::move(short_banks));
  }

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  eq.theta_star = Vector::Constant(n, nan);
  eq.a_c_out = Vector::Zero(n);
  eq.s0_out = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!net.pledges()[static_cast<std::size_t>(j)]) continue;
    eq.a_c_out(j) = eq.a_c(j) - cfg.c0(j) / keep;
    if (eq.a_c(j) > 0.0) {
      eq.theta_star(j) = 1.0 - cfg.c0(j) / (keep * eq.a_c(j));
      eq.s0_out += eq.theta_star(j) * a0(j);
    }
  }

  // The chosen fractions must reproduce a_c through the pledging network.
  eq.self_consistency =
      (eq.a_c - (a0 + s * (keep * eq.a_c - cfg.c0))).lpNorm<Eigen::Infinity>();

  eq.s_out = eq.a_c_out.sum();
  eq.s0 = a0.sum();
  eq.multiplier = eq.s0_out > 0.0 ? eq.s_out / eq.s0_out : nan;
  eq.ratio = eq.s0 > 0.0 ? eq.s_out / eq.s0 : nan;
  eq.feasible = true;
  return eq;
}

// Probability that a bank's liquidity shock eats through what it kept back.
inline double default_probability(double a_c, double theta, double mu, double sigma,
                                  double haircut) {
  if (!(sigma > 0.0)) throw std::invalid_argument("default_probability: sigma must be positive");
  const double buffer = (1.0 - haircut) * (1.0 - theta) * a_c;
  return 0.5 * (1.0 - rehypo::erf((buffer - mu) / (sigma * std::numbers::sqrt2)));
}

}  // namespace rehypo
