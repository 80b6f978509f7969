#pragma once

// Two routes to the same linear systems. lu_solve is the production path
// (partially pivoted dense LU); neumann_solve iterates the fixed point
// x = b + K x and exists both to solve and to cross-check the direct path,
// since the flow systems here always have contraction norm below one.

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <string>

#include "rehypo/errors.hpp"
#include "rehypo/network.hpp"

namespace rehypo {

struct SolveReport {
  enum class Method { direct, fixed_point };

  Vector x;
  Method method = Method::direct;
  double residual = 0.0;  // inf-norm defect of the returned x
  int iterations = 0;     // matrix applications; 0 for the direct path
};

// Pivot magnitudes below this count as an exactly singular system. Absolute
// threshold on the diagonal of the pivoted LU factor.
inline constexpr double kSingularPivot = 1e-13;

template <typename DerivedA, typename DerivedB>
SolveReport lu_solve(const Eigen::MatrixBase<DerivedA>& a_expr,
                     const Eigen::MatrixBase<DerivedB>& b_expr) {
  const Matrix a = a_expr;
  const Vector b = b_expr;
  if (a.rows() != a.cols())
    throw std::invalid_argument("lu_solve: matrix must be square, got " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()));
  if (b.size() != a.rows())
    throw std::invalid_argument("lu_solve: right-hand side length " + std::to_string(b.size()) +
                                " does not match matrix order " + std::to_string(a.rows()));

  Eigen::PartialPivLU<Matrix> lu(a);
  if (a.rows() > 0 && lu.matrixLU().diagonal().cwiseAbs().minCoeff() < kSingularPivot) {
    char threshold[32];
    std::snprintf(threshold, sizeof threshold, "%g", kSingularPivot);
    throw SingularSystemError(std::string("lu_solve: pivot below ") + threshold +
                              ", system is singular");
  }

  SolveReport report;
  report.x = lu.solve(b);
  report.method = SolveReport::Method::direct;
  report.residual = a.rows() > 0 ? (a * report.x - b).template lpNorm<Eigen::Infinity>() : 0.0;
  return report;
}

template <typename DerivedK, typename DerivedB>
SolveReport neumann_solve(const Eigen::MatrixBase<DerivedK>& k_expr,
                          const Eigen::MatrixBase<DerivedB>& b_expr, double tol = 1e-10,
                          int max_iterations = 100000) {
  const Matrix k = k_expr;
  const Vector b = b_expr;
  if (k.rows() != k.cols())
    throw std::invalid_argument("neumann_solve: matrix must be square");
  if (b.size() != k.rows())
    throw std::invalid_argument("neumann_solve: right-hand side length does not match matrix order");
  if (!(tol > 0.0)) throw std::invalid_argument("neumann_solve: tolerance must be positive");

  Vector x = b;
  Vector next(b.size());
  for (int iter = 1; iter <= max_iterations; ++iter) {
    next.noalias() = b + k * x;
    const double residual =
        b.size() > 0 ? (next - x).template lpNorm<Eigen::Infinity>() : 0.0;
    if (!std::isfinite(residual))
      throw ConvergenceError("neumann_solve: iteration diverged, contraction norm is likely >= 1");
    if (residual <= tol) {
      // x (not next) is the iterate whose fixed-point defect we just measured.
      return SolveReport{std::move(x), SolveReport::Method::fixed_point, residual, iter};
    }
    x.swap(next);
  }
  throw ConvergenceError("neumann_solve: no convergence to " + std::to_string(tol) + " within " +
                         std::to_string(max_iterations) + " iterations");
}

}  // namespace rehypo
