#pragma once

// Subcommand entry points. Each takes a validated RunConfig, runs the
// experiment and writes its report (JSON for solve, CSV for the sweeps,
// an edge list for gen) to config.out or stdout.

#include <string>
#include <vector>

#include "config.hpp"

namespace rehypo::cli {

void cmd_solve(const RunConfig& cfg);
void cmd_sweep(const RunConfig& cfg);
void cmd_cascade(const RunConfig& cfg);
void cmd_gen(const RunConfig& cfg);

struct PlotArgs {
  std::string in;
  std::string x;
  std::vector<std::string> ys;
  std::string group;  // empty for ungrouped
  std::string title;  // empty for none
  std::string out;
};

void cmd_plot_svg(const PlotArgs& args);

}  // namespace rehypo::cli
