#pragma once

// Collateral flows with fixed re-pledge fractions. Received collateral can be
// passed on again at rate theta per bank after an h haircut, which makes the
// aggregate outflow the solution of a linear fixed point; total velocity is
// summarized by the multiplier, equilibrium outflow over initial outflow.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rehypo/network.hpp"
#include "rehypo/solvers.hpp"

namespace rehypo {

struct BankParams {
  Vector a0;     // own collateral endowment per bank, >= 0
  Vector theta;  // fraction of managed collateral a pledging bank passes on, in [0, 1]
  double haircut = 0.0;  // h in [0, 1)

  static BankParams homogeneous(int n, double a0, double theta, double haircut) {
    return BankParams{Vector::Constant(n, a0), Vector::Constant(n, theta), haircut};
  }
};

inline void check_params(const RehypoNetwork& net, const BankParams& params) {
  const int n = net.node_count();
  if (params.a0.size() != n || params.theta.size() != n)
    throw std::invalid_argument("bank parameter vectors must have one entry per node");
  if ((params.a0.array() < 0.0).any())
    throw std::invalid_argument("own collateral must be nonnegative");
  if ((params.theta.array() < 0.0).any() || (params.theta.array() > 1.0).any())
    throw std::invalid_argument("re-pledge fractions must lie in [0, 1]");
  if (!(params.haircut >= 0.0 && params.haircut < 1.0))
    throw std::invalid_argument("haircut must lie in [0, 1)");
}

inline Vector pledge_indicator(const RehypoNetwork& net) {
  const int n = net.node_count();
  Vector delta(n);
  for (int j = 0; j < n; ++j) delta(j) = net.pledges()[static_cast<std::size_t>(j)];
  return delta;
}

// Entry (i, j) is the fraction of bank j's outflow that bank i receives and
// will itself pass on: the pledging share scaled by the receiver's theta, and
// zero for receivers that pledge to nobody.
inline Matrix flow_matrix(const RehypoNetwork& net, const BankParams& params) {
  check_params(net, params);
  return (pledge_indicator(net).array() * params.theta.array()).matrix().asDiagonal() *
         share_matrix(net);
}

// Outflow injected at the first step: pledging banks pass on theta of their
// own endowment, everyone else posts nothing.
inline Vector initial_outflow(const RehypoNetwork& net, const BankParams& params) {
  check_params(net, params);
  return (pledge_indicator(net).array() * params.theta.array() * params.a0.array()).matrix();
}

// Outflow trajectory for steps 1..steps; entry t-1 holds step t. Componentwise
// nondecreasing in t, converging to the equilibrium outflow.
inline std::vector<Vector> step_dynamics(const RehypoNetwork& net, const BankParams& params,
                                         int steps) {
  if (steps < 1) throw std::invalid_argument("step_dynamics: need at least one step");
  const Matrix m = flow_matrix(net, params);
  const Vector base = initial_outflow(net, params);
  const double scale = 1.0 - params.haircut;
  std::vector<Vector> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps));
  trajectory.push_back(base);
  for (int t = 1; t < steps; ++t)
    trajectory.push_back(base + scale * (m * trajectory.back()));
  return trajectory;
}

struct FlowEquilibrium {
  Vector a_c_out;  // equilibrium outflow per bank
  Vector a_c_rm;   // collateral kept on the balance sheet
  Vector a_c;      // total collateral under management, a_c_out + a_c_rm
  double s_out = 0.0;   // sum of a_c_out
  double s0_out = 0.0;  // sum of the initial outflow
  double s0 = 0.0;      // sum of own endowments
  double multiplier = 0.0;  // s_out / s0_out, NaN when nobody pledges initially
  double ratio = 0.0;       // s_out / s0
  double residual = 0.0;    // linear solve defect, inf-norm
};

inline FlowEquilibrium equilibrium(const RehypoNetwork& net, const BankParams& params) {
  check_params(net, params);
  const int n = net.node_count();
  const double scale = 1.0 - params.haircut;
  const Matrix m = flow_matrix(net, params);
  const Vector base = initial_outflow(net, params);
  SolveReport report = lu_solve(Matrix::Identity(n, n) - scale * m, base);

  FlowEquilibrium eq;
  eq.a_c_out = std::move(report.x);
  eq.a_c = params.a0 + scale * (share_matrix(net) * eq.a_c_out);
  eq.a_c_rm = eq.a_c - eq.a_c_out;
  eq.s_out = eq.a_c_out.sum();
  eq.s0_out = base.sum();
  eq.s0 = params.a0.sum();
  eq.multiplier =
      eq.s0_out > 0.0 ? eq.s_out / eq.s0_out : std::numeric_limits<double>::quiet_NaN();
  eq.ratio = eq.s0 > 0.0 ? eq.s_out / eq.s0 : std::numeric_limits<double>::quiet_NaN();
  eq.residual = report.residual;
  return eq;
}

// Mean-field multiplier for the uniform random topology with homogeneous
// parameters: a bank fails to pledge only when all n-1 out-links are absent.
inline double expected_multiplier_random(int n, double p, double haircut, double theta) {
  if (n < 1) throw std::invalid_argument("expected_multiplier_random: need n >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("expected_multiplier_random: probability must lie in [0, 1]");
  if (!(haircut >= 0.0 && haircut < 1.0) || !(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("expected_multiplier_random: parameters out of range");
  const double pledge_prob = 1.0 - std::pow(1.0 - p, n - 1);
  return 1.0 / (1.0 - pledge_prob * (1.0 - haircut) * theta);
}

// Same mean-field argument restricted to the core of a core-periphery
// topology, where all reuse happens.
inline double expected_multiplier_core_periphery(int n_core, double p_core, double haircut,
                                                 double theta) {
  if (n_core < 1)
    throw std::invalid_argument("expected_multiplier_core_periphery: need n_core >= 1");
  if (!(p_core >= 0.0 && p_core <= 1.0))
    throw std::invalid_argument("expected_multiplier_core_periphery: probability must lie in [0, 1]");
  if (!(haircut >= 0.0 && haircut < 1.0) || !(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("expected_multiplier_core_periphery: parameters out of range");
  const double pledge_prob = 1.0 - std::pow(1.0 - p_core, n_core - 1);
  return 1.0 / (1.0 - pledge_prob * (1.0 - haircut) * theta);
}

// Core density above which a core-periphery network out-multiplies a uniform
// random network of link probability p on the same n banks.
inline double pth_threshold(int n, int n_core, double p) {
  if (n_core < 2 || n_core >= n)
    throw std::invalid_argument("pth_threshold: need 2 <= n_core < n");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("pth_threshold: probability must lie in [0, 1]");
  return 1.0 - std::pow(1.0 - p, static_cast<double>(n - 1) / (n_core - 1));
}

}  // namespace rehypo
