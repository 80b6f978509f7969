#pragma once

// PageRank over the pledging direction: rank flows from pledger to lender,
// so a bank is central when much collateral is routed through it. Power
// iteration with uniform teleport; banks that pledge to no one spread their
// mass uniformly (the usual dangling-node correction).

#include <cmath>
#include <cstddef>
#include <string>

#include "rehypo/errors.hpp"
#include "rehypo/network.hpp"

namespace rehypo {

struct CentralityVector {
  Vector scores;     // sums to 1
  double damping = 0.0;
  double residual = 0.0;  // L1 distance between the last two iterates
  int iterations = 0;
};

inline CentralityVector pagerank(const RehypoNetwork& net, double damping = 0.85,
                                 double tol = 1e-12, int max_iterations = 10000) {
  if (!(damping >= 0.0 && damping < 1.0))
    throw std::invalid_argument("pagerank: damping must lie in [0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("pagerank: tolerance must be positive");
  const int n = net.node_count();
  if (n == 0) throw std::invalid_argument("pagerank: empty network has no centrality");

  Vector rank = Vector::Constant(n, 1.0 / n);
  Vector next(n);
  for (int iter = 1; iter <= max_iterations; ++iter) {
    double dangling = 0.0;
    for (int j = 0; j < n; ++j)
      if (net.out_degree()[static_cast<std::size_t>(j)] == 0) dangling += rank(j);
    next.setConstant((1.0 - damping) / n + damping * dangling / n);
    for (const Edge& e : net.edges())
      next(e.lender) += damping * rank(e.pledger) / net.out_degree()[static_cast<std::size_t>(e.pledger)];

    const double residual = (next - rank).lpNorm<1>();
    rank.swap(next);
    if (residual <= tol) {
      rank /= rank.sum();  // rounding guard, the iteration conserves mass up to eps
      return CentralityVector{rank, damping, residual, iter};
    }
  }
  throw ConvergenceError("pagerank: no convergence to " + std::to_string(tol) + " within " +
                         std::to_string(max_iterations) + " iterations");
}

}  // namespace rehypo
