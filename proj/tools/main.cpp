// Command line front end. Subcommands: solve, sweep, cascade, gen, plot-svg.
// Exit codes: 0 success, 2 configuration problems, 3 model infeasibility,
// 4 numerical failure. REHYPO_THREADS caps worker threads for the sweeps.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "rehypo/errors.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<std::string> out;
};

void add_common(CLI::App* sub, CommonArgs& args, bool with_samples) {
  sub->add_option("config", args.config_path, "JSON run configuration")->required();
  sub->add_option("--seed", [&args](const CLI::results_t& res) {
    args.seed = std::stoull(res.front());
    return true;
  }, "Override the config seed")->expected(1);
  if (with_samples)
    sub->add_option("--samples", [&args](const CLI::results_t& res) {
      args.samples = std::stoi(res.front());
      return true;
    }, "Override the config sample count")->expected(1);
  sub->add_option("--out", [&args](const CLI::results_t& res) {
    args.out = res.front();
    return true;
  }, "Write output to this file instead of the config target")->expected(1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collateral re-pledging network simulator"};
  app.require_subcommand(1);
  app.footer("The REHYPO_THREADS environment variable caps sweep parallelism.");

  CommonArgs solve_args, sweep_args, cascade_args, gen_args;
  rehypo::cli::PlotArgs plot_args;

  CLI::App* solve = app.add_subcommand("solve", "Solve one network and report the equilibrium");
  add_common(solve, solve_args, false);
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo density sweep of the flow model");
  add_common(sweep, sweep_args, true);
  CLI::App* cascade = app.add_subcommand("cascade", "Shock experiment over a density sweep");
  add_common(cascade, cascade_args, true);
  CLI::App* gen = app.add_subcommand("gen", "Sample a network and emit its edge list");
  add_common(gen, gen_args, false);

  CLI::App* plot = app.add_subcommand("plot-svg", "Render a sweep CSV as an SVG line chart");
  plot->add_option("--in", plot_args.in, "Input CSV file")->required();
  plot->add_option("--x", plot_args.x, "Column for the x axis")->required();
  plot->add_option("--y", plot_args.ys, "Column(s) for the y axis")->required();
  plot->add_option("--group", plot_args.group, "Column whose values split rows into series");
  plot->add_option("--title", plot_args.title, "Chart title");
  plot->add_option("--out", plot_args.out, "Output SVG file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    using rehypo::cli::Command;
    using rehypo::cli::load_config;
    if (*solve)
      cmd_solve(load_config(solve_args.config_path, Command::solve, solve_args.seed,
                            solve_args.samples, solve_args.out));
    else if (*sweep)
      cmd_sweep(load_config(sweep_args.config_path, Command::sweep, sweep_args.seed,
                            sweep_args.samples, sweep_args.out));
    else if (*cascade)
      cmd_cascade(load_config(cascade_args.config_path, Command::cascade, cascade_args.seed,
                              cascade_args.samples, cascade_args.out));
    else if (*gen)
      cmd_gen(load_config(gen_args.config_path, Command::gen, gen_args.seed, gen_args.samples,
                          gen_args.out));
    else if (*plot)
      cmd_plot_svg(plot_args);
  } catch (const rehypo::InfeasibleHoardingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rehypo::SingularSystemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const rehypo::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const rehypo::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rehypo::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rehypo::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // invalid_argument / out_of_range from the library mean bad inputs
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
