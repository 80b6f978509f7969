#pragma once

// Directed collateral-pledging networks. An edge (pledger, lender) means the
// pledger posts collateral to the lender, so values flow pledger -> lender.
// Networks are immutable after construction and stored in canonical form
// (edges sorted by pledger then lender) so equal edge sets compare equal.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rehypo/rng.hpp"

namespace rehypo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Edge {
  int pledger = 0;
  int lender = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class RehypoNetwork {
 public:
  RehypoNetwork() = default;

  int node_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& out_degree() const noexcept { return out_degree_; }
  const std::vector<int>& in_degree() const noexcept { return in_degree_; }

  // 1 when the bank pledges to anyone (positive out-degree), else 0.
  const std::vector<int>& pledges() const noexcept { return pledges_; }

  bool has_edge(int pledger, int lender) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{pledger, lender});
  }

  friend bool operator==(const RehypoNetwork&, const RehypoNetwork&) = default;

 private:
  friend RehypoNetwork network_from_edges(int, std::vector<Edge>);

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> out_degree_;
  std::vector<int> in_degree_;
  std::vector<int> pledges_;
};

// Validating constructor. Rejects out-of-range endpoints, self-loops and
// duplicate edges; the stored edge list is sorted regardless of input order.
inline RehypoNetwork network_from_edges(int n, std::vector<Edge> edges) {
  if (n < 0) throw std::invalid_argument("network_from_edges: node count must be >= 0");
  for (const Edge& e : edges) {
    if (e.pledger < 0 || e.pledger >= n || e.lender < 0 || e.lender >= n)
      throw std::out_of_range("network_from_edges: edge (" + std::to_string(e.pledger) + "," +
                              std::to_string(e.lender) + ") out of range for n=" + std::to_string(n));
    if (e.pledger == e.lender)
      throw std::invalid_argument("network_from_edges: self-loop at node " +
                                  std::to_string(e.pledger));
  }
  std::sort(edges.begin(), edges.end());
  const auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw std::invalid_argument("network_from_edges: duplicate edge (" +
                                std::to_string(dup->pledger) + "," + std::to_string(dup->lender) + ")");

  RehypoNetwork net;
  net.n_ = n;
  net.edges_ = std::move(edges);
  net.out_degree_.assign(static_cast<std::size_t>(n), 0);
  net.in_degree_.assign(static_cast<std::size_t>(n), 0);
  for (const Edge& e : net.edges_) {
    ++net.out_degree_[static_cast<std::size_t>(e.pledger)];
    ++net.in_degree_[static_cast<std::size_t>(e.lender)];
  }
  net.pledges_.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) net.pledges_[static_cast<std::size_t>(j)] = net.out_degree_[static_cast<std::size_t>(j)] > 0 ? 1 : 0;
  return net;
}

// Fraction of the n*(n-1) possible directed edges that are present.
inline double density(const RehypoNetwork& net) {
  const int n = net.node_count();
  if (n < 2) return 0.0;
  return static_cast<double>(net.edges().size()) / (static_cast<double>(n) * (n - 1));
}

// Column-stochastic-on-support pledging shares: entry (lender, pledger) is
// 1/out_degree(pledger) when the edge exists, so every pledging bank's column
// sums to one and a non-pledging bank's column is zero.
inline Matrix share_matrix(const RehypoNetwork& net) {
  const int n = net.node_count();
  Matrix s = Matrix::Zero(n, n);
  for (const Edge& e : net.edges())
    s(e.lender, e.pledger) = 1.0 / net.out_degree()[static_cast<std::size_t>(e.pledger)];
  return s;
}

// Circulant network: every node pledges to the k nodes that follow it in a
// fixed ring ordering, so all in- and out-degrees equal k and the ring itself
// (offset 1) keeps the whole graph on one cycle. The seed is accepted for
// interface uniformity with the random generators; the graph is deterministic.
inline RehypoNetwork gen_closed_k_regular(int n, int k, std::uint64_t /*seed*/ = 0) {
  if (n < 2) throw std::invalid_argument("gen_closed_k_regular: need n >= 2");
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("gen_closed_k_regular: need 1 <= k <= n-1, got k=" + std::to_string(k));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  for (int j = 0; j < n; ++j)
    for (int off = 1; off <= k; ++off) edges.push_back(Edge{j, (j + off) % n});
  return network_from_edges(n, std::move(edges));
}

// Each of the n*(n-1) ordered pairs becomes an edge independently with
// probability p. Pair order is fixed (pledger-major), so a given seed yields
// the same network bit for bit on every platform.
inline RehypoNetwork gen_random_directed(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("gen_random_directed: node count must be >= 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("gen_random_directed: probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      if (rng.bernoulli(p)) edges.push_back(Edge{j, i});
    }
  return network_from_edges(n, std::move(edges));
}

// Two-tier network. Core nodes are 0..n_core-1 and link to each other like a
// random directed graph with probability p_core. Periphery nodes each pledge
// to k_per distinct uniformly drawn core nodes and receive nothing, and the
// core never pledges outward to the periphery.
inline RehypoNetwork gen_core_periphery(int n, int n_core, double p_core, int k_per,
                                        std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_core_periphery: need n >= 2");
  if (n_core < 1 || n_core >= n)
    throw std::invalid_argument("gen_core_periphery: need 1 <= n_core < n, got n_core=" +
                                std::to_string(n_core));
  if (!(p_core >= 0.0 && p_core <= 1.0))
    throw std::invalid_argument("gen_core_periphery: probability must lie in [0, 1]");
  if (k_per < 1 || k_per > n_core)
    throw std::invalid_argument("gen_core_periphery: need 1 <= k_per <= n_core, got k_per=" +
                                std::to_string(k_per));
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int j = 0; j < n_core; ++j)
    for (int i = 0; i < n_core; ++i) {
      if (i == j) continue;
      if (rng.bernoulli(p_core)) edges.push_back(Edge{j, i});
    }
  for (int j = n_core; j < n; ++j)
    for (int target : rng.sample_without_replacement(n_core, k_per))
      edges.push_back(Edge{j, target});
  return network_from_edges(n, std::move(edges));
}

}  // namespace rehypo
