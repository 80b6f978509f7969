#pragma once

// Monte Carlo sweeps over network density. A density grid point is mapped to
// the matching generator parameter (k, p, or core density), `samples`
// networks are drawn with child seeds, and per-sample results are averaged.
// Sample i of a run always sees the same child seeds no matter how many
// threads run, so sweep output is reproducible byte for byte.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rehypo/cascade.hpp"
#include "rehypo/collateral.hpp"
#include "rehypo/network.hpp"
#include "rehypo/parallel.hpp"
#include "rehypo/rng.hpp"
#include "rehypo/varhoard.hpp"

namespace rehypo {

enum class TopologyKind { closed_k_regular, random_directed, core_periphery };

struct TopologySpec {
  TopologyKind kind = TopologyKind::random_directed;
  int n = 0;
  int n_core = 0;  // core_periphery only
  int k_per = 1;   // core_periphery only
};

// Generator parameter that realizes a requested overall density as closely
// as the topology family allows. k-regular rounds to the nearest integer
// degree; core-periphery inverts edges = periphery*k_per + p_core*core_pairs
// for p_core and clamps to [0, 1] where the family cannot reach the request.
inline double density_to_param(const TopologySpec& spec, double density) {
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("density_to_param: density must lie in [0, 1]");
  switch (spec.kind) {
    case TopologyKind::closed_k_regular: {
      if (spec.n < 2) throw std::invalid_argument("density_to_param: need n >= 2");
      const double k = std::round(density * (spec.n - 1));
      return std::min(std::max(k, 1.0), static_cast<double>(spec.n - 1));
    }
    case TopologyKind::random_directed:
      return density;
    case TopologyKind::core_periphery: {
      if (spec.n_core < 2 || spec.n_core >= spec.n)
        throw std::invalid_argument("density_to_param: need 2 <= n_core < n");
      const double pairs = static_cast<double>(spec.n) * (spec.n - 1);
      const double core_pairs = static_cast<double>(spec.n_core) * (spec.n_core - 1);
      const double periphery_edges = static_cast<double>(spec.n - spec.n_core) * spec.k_per;
      const double p_core = (density * pairs - periphery_edges) / core_pairs;
      return std::min(std::max(p_core, 0.0), 1.0);
    }
  }
  throw std::invalid_argument("density_to_param: unknown topology kind");
}

inline RehypoNetwork make_network(const TopologySpec& spec, double density, std::uint64_t seed) {
  const double param = density_to_param(spec, density);
  switch (spec.kind) {
    case TopologyKind::closed_k_regular:
      return gen_closed_k_regular(spec.n, static_cast<int>(param), seed);
    case TopologyKind::random_directed:
      return gen_random_directed(spec.n, param, seed);
    case TopologyKind::core_periphery:
      return gen_core_periphery(spec.n, spec.n_core, param, spec.k_per, seed);
  }
  throw std::invalid_argument("make_network: unknown topology kind");
}

struct SweepSettings {
  std::vector<double> densities;
  int samples = 0;
  std::uint64_t seed = 0;
};

struct SweepPoint {
  double density = 0.0;
  double param = 0.0;
  int samples = 0;
  int undefined_multiplier = 0;  // samples where nobody pledges at all
  double mean_s_out = 0.0;
  double stderr_s_out = 0.0;
  double mean_multiplier = 0.0;    // over defined samples; NaN when none
  double stderr_multiplier = 0.0;
  double expected_multiplier = 0.0;  // mean-field curve; NaN when no closed form applies
  double mean_ratio = 0.0;           // mean s_out / s0
};

namespace detail {

struct RunningStats {
  int count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
  double std_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / (count - 1) / count);
  }
  double value() const {
    return count > 0 ? mean : std::numeric_limits<double>::quiet_NaN();
  }
};

inline bool homogeneous(const Vector& v) {
  return v.size() == 0 || ((v.array() - v(0)).abs() <= 1e-15 * (1.0 + std::abs(v(0)))).all();
}

}  // namespace detail

// Mean-field multiplier reference for a topology at a given generator
// parameter, defined only for homogeneous theta.
inline double expected_multiplier(const TopologySpec& spec, double param, double haircut,
                                  double theta) {
  switch (spec.kind) {
    case TopologyKind::closed_k_regular:
      // every bank pledges, so the multiplier takes its ceiling exactly
      return 1.0 / (1.0 - (1.0 - haircut) * theta);
    case TopologyKind::random_directed:
      return expected_multiplier_random(spec.n, param, haircut, theta);
    case TopologyKind::core_periphery:
      return expected_multiplier_core_periphery(spec.n_core, param, haircut, theta);
  }
  throw std::invalid_argument("expected_multiplier: unknown topology kind");
}

// Fixed-theta density sweep. Sample i at grid point g uses the network seed
// split_seed(seed, g * samples + i).
inline std::vector<SweepPoint> sweep_experiment(const TopologySpec& spec, const BankParams& params,
                                                const SweepSettings& settings) {
  if (settings.samples < 1) throw std::invalid_argument("sweep_experiment: need samples >= 1");
  const int grid = static_cast<int>(settings.densities.size());
  const int total = grid * settings.samples;

  struct Sample {
    double s_out = 0.0;
    double multiplier = 0.0;
    double ratio = 0.0;
  };
  std::vector<Sample> results(static_cast<std::size_t>(total));
  parallel_for(total, [&](int idx) {
    const int g = idx / settings.samples;
    const RehypoNetwork net =
        make_network(spec, settings.densities[static_cast<std::size_t>(g)],
                     split_seed(settings.seed, static_cast<std::uint64_t>(idx)));
    const FlowEquilibrium eq = equilibrium(net, params);
    results[static_cast<std::size_t>(idx)] = Sample{eq.s_out, eq.multiplier, eq.ratio};
  });

  const bool uniform = detail::homogeneous(params.theta);
  std::vector<SweepPoint> points;
  points.reserve(static_cast<std::size_t>(grid));
  for (int g = 0; g < grid; ++g) {
    SweepPoint pt;
    pt.density = settings.densities[static_cast<std::size_t>(g)];
    pt.param = density_to_param(spec, pt.density);
    pt.samples = settings.samples;
    detail::RunningStats s_out, mult, ratio;
    for (int i = 0; i < settings.samples; ++i) {
      const Sample& smp = results[static_cast<std::size_t>(g * settings.samples + i)];
      s_out.add(smp.s_out);
      ratio.add(smp.ratio);
      if (std::isnan(smp.multiplier))
        ++pt.undefined_multiplier;
      else
        mult.add(smp.multiplier);
    }
    pt.mean_s_out = s_out.value();
    pt.stderr_s_out = s_out.std_error();
    pt.mean_multiplier = mult.value();
    pt.stderr_multiplier = mult.std_error();
    pt.mean_ratio = ratio.value();
    pt.expected_multiplier = uniform && params.theta.size() > 0
                                 ? expected_multiplier(spec, pt.param, params.haircut, params.theta(0))
                                 : std::numeric_limits<double>::quiet_NaN();
    points.push_back(pt);
  }
  return points;
}

struct CascadePoint {
  double density = 0.0;
  double param = 0.0;
  AttackMode mode = AttackMode::random;
  int samples = 0;
  int infeasible = 0;  // samples excluded because some bank could not cover its buffer
  double mean_pre_ratio = 0.0;  // pre-shock s_out / s0
  double stderr_pre_ratio = 0.0;
  double mean_post_over_pre = 0.0;
  double stderr_post_over_pre = 0.0;
};

// Cascade density sweep in one attack mode. Sample i at grid point g draws
// its network with split_seed(seed, 2 * flat) and its shocked set with
// split_seed(seed, 2 * flat + 1), flat = g * samples + i; infeasible samples
// are counted and left out of the averages.
inline std::vector<CascadePoint> density_sweep_experiment(const TopologySpec& spec,
                                                          const Vector& a0, const VaRConfig& cfg,
                                                          const ShockSpec& shock,
                                                          const SweepSettings& settings) {
  if (settings.samples < 1)
    throw std::invalid_argument("density_sweep_experiment: need samples >= 1");
  const int grid = static_cast<int>(settings.densities.size());
  const int total = grid * settings.samples;

  struct Sample {
    bool feasible = false;
    double pre_ratio = 0.0;
    double post_over_pre = 0.0;
  };
  std::vector<Sample> results(static_cast<std::size_t>(total));
  parallel_for(total, [&](int idx) {
    const int g = idx / settings.samples;
    const RehypoNetwork net =
        make_network(spec, settings.densities[static_cast<std::size_t>(g)],
                     split_seed(settings.seed, 2 * static_cast<std::uint64_t>(idx)));
    ShockSpec local = shock;
    local.seed = split_seed(settings.seed, 2 * static_cast<std::uint64_t>(idx) + 1);
    try {
      const CascadeOutcome outcome = run_cascade(net, a0, cfg, local);
      results[static_cast<std::size_t>(idx)] =
          Sample{true, outcome.pre.ratio, outcome.s_out_ratio};
    } catch (const InfeasibleHoardingError&) {
      // excluded below, recorded in the per-point count
    }
  });

  std::vector<CascadePoint> points;
  points.reserve(static_cast<std::size_t>(grid));
  for (int g = 0; g < grid; ++g) {
    CascadePoint pt;
    pt.density = settings.densities[static_cast<std::size_t>(g)];
    pt.param = density_to_param(spec, pt.density);
    pt.mode = shock.mode;
    pt.samples = settings.samples;
    detail::RunningStats pre, post;
    for (int i = 0; i < settings.samples; ++i) {
      const Sample& smp = results[static_cast<std::size_t>(g * settings.samples + i)];
      if (!smp.feasible) {
        ++pt.infeasible;
        continue;
      }
      pre.add(smp.pre_ratio);
      post.add(smp.post_over_pre);
    }
    pt.mean_pre_ratio = pre.value();
    pt.stderr_pre_ratio = pre.std_error();
    pt.mean_post_over_pre = post.value();
    pt.stderr_post_over_pre = post.std_error();
    points.push_back(pt);
  }
  return points;
}

}  // namespace rehypo
