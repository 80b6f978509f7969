#pragma once

// Shared test utilities: temp files, CLI subprocess driving, and the
// independent reference implementations (oracles) the unit and acceptance
// tests compare the library against.

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rehypo/network.hpp"
#include "rehypo/special_functions.hpp"

namespace test_support {

inline std::string temp_path(const std::string& stem) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path();
  return (dir / (stem + "." + std::to_string(::getpid()) + "." +
                 std::to_string(counter.fetch_add(1))))
      .string();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct CliResult {
  int exit_code = -1;
  std::string output;
  std::string error;
};

// Runs the built CLI with the given argument string, capturing both streams.
inline CliResult run_cli(const std::string& args) {
  const std::string out_path = temp_path("cli_stdout");
  const std::string err_path = temp_path("cli_stderr");
  const std::string cmd =
      std::string(REHYPO_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = read_file(out_path);
  result.error = read_file(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

// Dense power-iteration PageRank, deliberately built from the full transition
// matrix rather than edge iteration, as an independent cross-check.
inline rehypo::Vector pagerank_dense_oracle(const rehypo::RehypoNetwork& net,
                                            double damping = 0.85, double tol = 1e-14) {
  using rehypo::Matrix;
  using rehypo::Vector;
  const int n = net.node_count();
  Matrix google = Matrix::Constant(n, n, (1.0 - damping) / n);
  for (int j = 0; j < n; ++j) {
    if (net.out_degree()[static_cast<std::size_t>(j)] == 0) {
      google.col(j).array() += damping / n;
    } else {
      for (const rehypo::Edge& e : net.edges())
        if (e.pledger == j)
          google(e.lender, j) += damping / net.out_degree()[static_cast<std::size_t>(j)];
    }
  }
  Vector rank = Vector::Constant(n, 1.0 / n);
  for (int iter = 0; iter < 100000; ++iter) {
    Vector next = google * rank;
    const double residual = (next - rank).lpNorm<1>();
    rank = next;
    if (residual <= tol) break;
  }
  return rank;
}

// Fixed-point iteration for the hoarding equilibrium, the slow independent
// route the linear-solve implementation must agree with.
inline rehypo::Vector picard_var_oracle(const rehypo::RehypoNetwork& net,
                                        const rehypo::Vector& a0, const rehypo::Vector& c0,
                                        double haircut, const rehypo::Vector& start,
                                        double tol = 1e-12, int max_iterations = 200000) {
  const rehypo::Matrix s = rehypo::share_matrix(net);
  rehypo::Vector x = start;
  for (int iter = 0; iter < max_iterations; ++iter) {
    rehypo::Vector next = a0 + s * ((1.0 - haircut) * x - c0);
    const double residual = (next - x).lpNorm<Eigen::Infinity>();
    x = next;
    if (residual <= tol) break;
  }
  return x;
}

// Bisection inverse of erf, the reference for the Newton implementation.
inline double argerf_bisect_oracle(double y) {
  double lo = -7.0, hi = 7.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rehypo::erf(mid) < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace test_support
