#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "rehypo/edge_list.hpp"
#include "rehypo/errors.hpp"
#include "rehypo/rehypo.hpp"

namespace rehypo::cli {

namespace {

// CSV and report formatting: %.12g everywhere, '-' for undefined values,
// so reruns of one build produce byte-identical files.
std::string fmt(double v) {
  if (std::isnan(v)) return "-";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

RehypoNetwork build_network(const TopologyConfig& topo, std::uint64_t seed) {
  if (topo.is_edge_list) return load_edge_list(topo.edge_list_path);
  switch (topo.spec.kind) {
    case TopologyKind::closed_k_regular: {
      const double k = topo.param.value();
      if (!(k >= 1.0) || k != std::floor(k))
        throw ConfigError("topology.k must be a positive integer");
      return gen_closed_k_regular(topo.spec.n, static_cast<int>(k), seed);
    }
    case TopologyKind::random_directed:
      return gen_random_directed(topo.spec.n, topo.param.value(), seed);
    case TopologyKind::core_periphery:
      return gen_core_periphery(topo.spec.n, topo.spec.n_core, topo.param.value(),
                                topo.spec.k_per, seed);
  }
  throw ConfigError("unknown topology kind");
}

const char* mode_name(AttackMode mode) {
  return mode == AttackMode::random ? "random" : "targeted";
}

}  // namespace

void cmd_solve(const RunConfig& cfg) {
  const TopologyConfig& topo = cfg.topologies.front();
  const RehypoNetwork net = build_network(topo, cfg.seed);
  const int n = net.node_count();

  nlohmann::ordered_json report;
  report["command"] = "solve";
  report["topology"] = topo.label;
  report["n"] = n;
  report["edges"] = net.edges().size();
  report["density"] = density(net);
  if (!topo.is_edge_list) report["seed"] = cfg.seed;
  report["haircut"] = cfg.model.haircut;

  if (cfg.model.kind == ModelConfig::Kind::fixed_theta) {
    const FlowEquilibrium eq = equilibrium(net, fixed_params(cfg.model, n));
    report["model"] = "fixed_theta";
    report["s0"] = eq.s0;
    report["s0_out"] = eq.s0_out;
    report["s_out"] = eq.s_out;
    report["multiplier"] = eq.multiplier;
    report["ratio"] = eq.ratio;
    report["residual"] = eq.residual;
    auto& banks = report["banks"] = nlohmann::ordered_json::array();
    for (int i = 0; i < n; ++i)
      banks.push_back({{"bank", i},
                       {"a_c", eq.a_c(i)},
                       {"a_c_out", eq.a_c_out(i)},
                       {"a_c_rm", eq.a_c_rm(i)}});
  } else {
    const Vector a0 = cfg.model.a0.broadcast(n, "model.a0");
    const VaREquilibrium eq = var_equilibrium(net, a0, var_params(cfg.model, n));
    report["model"] = "var";
    report["s0"] = eq.s0;
    report["s0_out"] = eq.s0_out;
    report["s_out"] = eq.s_out;
    report["multiplier"] = eq.multiplier;
    report["ratio"] = eq.ratio;
    report["residual"] = eq.residual;
    report["self_consistency"] = eq.self_consistency;
    report["feasibility_margin"] = eq.feasibility_margin;
    auto& banks = report["banks"] = nlohmann::ordered_json::array();
    for (int i = 0; i < n; ++i)
      banks.push_back({{"bank", i},
                       {"a_c", eq.a_c(i)},
                       {"theta_star", eq.theta_star(i)},  // serializes as null for non-pledgers
                       {"a_c_out", eq.a_c_out(i)}});
  }
  write_output(cfg.out, report.dump(2) + "\n");
}

void cmd_sweep(const RunConfig& cfg) {
  std::ostringstream csv;
  csv << "topology,density,param,n,samples,undefined_m,mean_s_out,stderr_s_out,"
         "mean_m,stderr_m,expected_m\n";
  for (std::size_t ti = 0; ti < cfg.topologies.size(); ++ti) {
    const TopologyConfig& topo = cfg.topologies[ti];
    const SweepSettings settings{cfg.densities, cfg.samples, split_seed(cfg.seed, ti)};
    const std::vector<SweepPoint> points =
        sweep_experiment(topo.spec, fixed_params(cfg.model, topo.spec.n), settings);
    for (const SweepPoint& pt : points)
      csv << topo.label << ',' << fmt(pt.density) << ',' << fmt(pt.param) << ',' << topo.spec.n
          << ',' << pt.samples << ',' << pt.undefined_multiplier << ',' << fmt(pt.mean_s_out)
          << ',' << fmt(pt.stderr_s_out) << ',' << fmt(pt.mean_multiplier) << ','
          << fmt(pt.stderr_multiplier) << ',' << fmt(pt.expected_multiplier) << '\n';
  }
  write_output(cfg.out, csv.str());
}

void cmd_cascade(const RunConfig& cfg) {
  const ShockConfig& shock = cfg.shock.value();
  std::vector<AttackMode> modes;
  if (shock.mode == ShockConfig::Mode::random || shock.mode == ShockConfig::Mode::both)
    modes.push_back(AttackMode::random);
  if (shock.mode == ShockConfig::Mode::targeted || shock.mode == ShockConfig::Mode::both)
    modes.push_back(AttackMode::targeted);

  std::ostringstream csv;
  csv << "topology,mode,density,param,n,samples,infeasible,mean_pre_ratio,stderr_pre_ratio,"
         "mean_post_over_pre,stderr_post_over_pre\n";
  for (std::size_t ti = 0; ti < cfg.topologies.size(); ++ti) {
    const TopologyConfig& topo = cfg.topologies[ti];
    const Vector a0 = cfg.model.a0.broadcast(topo.spec.n, "model.a0");
    const VaRConfig var_cfg = var_params(cfg.model, topo.spec.n);
    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
      const ShockSpec spec{shock.fraction, shock.magnitude, modes[mi], 0};
      const SweepSettings settings{cfg.densities, cfg.samples,
                                   split_seed(cfg.seed, 2 * ti + (modes[mi] == AttackMode::random ? 0 : 1))};
      const std::vector<CascadePoint> points =
          density_sweep_experiment(topo.spec, a0, var_cfg, spec, settings);
      for (const CascadePoint& pt : points)
        csv << topo.label << ',' << mode_name(pt.mode) << ',' << fmt(pt.density) << ','
            << fmt(pt.param) << ',' << topo.spec.n << ',' << pt.samples << ',' << pt.infeasible
            << ',' << fmt(pt.mean_pre_ratio) << ',' << fmt(pt.stderr_pre_ratio) << ','
            << fmt(pt.mean_post_over_pre) << ',' << fmt(pt.stderr_post_over_pre) << '\n';
    }
  }
  write_output(cfg.out, csv.str());
}

void cmd_gen(const RunConfig& cfg) {
  const RehypoNetwork net = build_network(cfg.topologies.front(), cfg.seed);
  std::ostringstream text;
  text << "n=" << net.node_count() << "\n";
  for (const Edge& e : net.edges()) text << e.pledger << "," << e.lender << "\n";
  write_output(cfg.out, text.str());
}

}  // namespace rehypo::cli
