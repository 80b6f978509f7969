#pragma once

// Buffer shocks and their system-wide effect. A shock multiplies the VaR
// buffer of selected banks by (1 + magnitude); the network is then re-solved
// and the damage read off as the post/pre ratio of total collateral outflow.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rehypo/network.hpp"
#include "rehypo/pagerank.hpp"
#include "rehypo/rng.hpp"
#include "rehypo/varhoard.hpp"

namespace rehypo {

enum class AttackMode { random, targeted };

struct ShockSpec {
  double fraction = 0.0;   // share of banks hit; the count is ceil(fraction * n)
  double magnitude = 0.0;  // relative buffer increase for shocked banks
  AttackMode mode = AttackMode::random;
  std::uint64_t seed = 0;  // drives the random mode only
};

struct ShockResult {
  Vector c1;                 // post-shock buffers
  std::vector<int> shocked;  // ascending bank indices
};

// Selects ceil(fraction * n) banks and scales their buffers. The random mode
// draws via a partial shuffle, so for one seed a larger fraction always hits
// a superset of the banks a smaller fraction hits. The targeted mode takes
// the top banks by the supplied centrality scores, ties broken toward the
// lower index.
inline ShockResult apply_shock(const Vector& c0, const ShockSpec& spec,
                               const Vector* centrality = nullptr) {
  const int n = static_cast<int>(c0.size());
  if (!(spec.fraction >= 0.0 && spec.fraction <= 1.0))
    throw std::invalid_argument("apply_shock: fraction must lie in [0, 1]");
  if (!(spec.magnitude >= 0.0))
    throw std::invalid_argument("apply_shock: magnitude must be nonnegative");
  const int count = static_cast<int>(std::ceil(spec.fraction * n));

  std::vector<int> shocked;
  if (spec.mode == AttackMode::random) {
    Rng rng(spec.seed);
    shocked = rng.sample_without_replacement(n, count);
  } else {
    if (centrality == nullptr)
      throw std::invalid_argument("apply_shock: targeted mode needs a centrality vector");
    if (centrality->size() != n)
      throw std::invalid_argument("apply_shock: centrality length does not match bank count");
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return (*centrality)(a) > (*centrality)(b);
    });
    shocked.assign(order.begin(), order.begin() + count);
  }
  std::sort(shocked.begin(), shocked.end());

  ShockResult result{c0, std::move(shocked)};
  for (int j : result.shocked) result.c1(j) *= 1.0 + spec.magnitude;
  return result;
}

struct CascadeOutcome {
  VaREquilibrium pre;
  VaREquilibrium post;
  std::vector<int> shocked;
  double s_out_ratio = 0.0;  // post s_out over pre s_out, 1 when nothing flowed before
  Vector a_c_loss;           // per-bank drop in collateral under management
};

// One-shot stress run: solve, shock the buffers, solve again. Targeted mode
// ranks banks by PageRank over the pledging network.
inline CascadeOutcome run_cascade(const RehypoNetwork& net, const Vector& a0,
                                  const VaRConfig& cfg, const ShockSpec& spec) {
  CascadeOutcome outcome;
  outcome.pre = var_equilibrium(net, a0, cfg);

  std::optional<Vector> centrality;
  if (spec.mode == AttackMode::targeted) centrality = pagerank(net).scores;
  ShockResult shock = apply_shock(cfg.c0, spec, centrality ? &*centrality : nullptr);
  outcome.shocked = std::move(shock.shocked);

  outcome.post = var_equilibrium(net, a0, VaRConfig::from_offsets(std::move(shock.c1), cfg.haircut));
  outcome.s_out_ratio = outcome.pre.s_out > 0.0 ? outcome.post.s_out / outcome.pre.s_out : 1.0;
  outcome.a_c_loss = outcome.pre.a_c - outcome.post.a_c;
  return outcome;
}

}  // namespace rehypo
