#include "wslm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <string>

#include "json_util.hpp"
#include "wslm/feasibility.hpp"
#include "wslm/harness.hpp"
#include "wslm/io.hpp"

namespace wslm {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int trials = 200;
  std::string variant = "both";
  int kappa_max = 500;
  double cost_eps = 1e-9;
  bool dump_trials = false;
  bool serial = false;
};

void add_common_options(CLI::App* sub, CliOptions& o) {
  sub->add_option("--config", o.config_path, "experiment spec JSON file")->required();
  sub->add_option("--seed", o.seed, "master seed (default 1)");
  sub->add_option("--out", o.out_dir, "output directory (default .)");
  sub->add_option("--trials", o.trials, "Monte Carlo trials per sweep point (default 200)");
  sub->add_option("--variant", o.variant, "wslm|conventional|both (default both)")
      ->check(CLI::IsMember({"wslm", "conventional", "both"}));
  sub->add_option("--kappa-max", o.kappa_max, "iteration cap (default 500)");
  sub->add_option("--cost-eps", o.cost_eps, "cost stopping threshold (default 1e-9)");
  sub->add_flag("--dump-trials", o.dump_trials, "also write per-trial records CSV");
  sub->add_flag("--serial", o.serial, "run trials on one thread");
}

// CLI values override file values only when the flag was actually given.
ExperimentSpec spec_with_overrides(const CLI::App* sub, const CliOptions& o) {
  ExperimentSpec spec = load_experiment(o.config_path);
  if (sub->count("--seed")) spec.master_seed = o.seed;
  if (sub->count("--trials")) spec.trials = o.trials;
  if (sub->count("--kappa-max")) spec.solver_opts.kappa_max = o.kappa_max;
  if (sub->count("--cost-eps")) spec.solver_opts.cost_epsilon = o.cost_eps;
  if (sub->count("--variant")) {
    if (o.variant == "wslm")
      spec.variants = {Variant::Wslm};
    else if (o.variant == "conventional")
      spec.variants = {Variant::Conventional};
    else
      spec.variants = {Variant::Wslm, Variant::Conventional};
  }
  return spec;
}

fs::path out_file(const CliOptions& o, const std::string& subcommand, std::uint64_t seed,
                  const std::string& ext) {
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir) / (subcommand + "_" + std::to_string(seed) + ext);
}

json solver_opts_to_json(const SolverOptions& s) {
  return {{"kappa_max", s.kappa_max},
          {"cost_epsilon", s.cost_epsilon},
          {"delta_tolerance", s.delta_tolerance}};
}

int run_feasibility(const CLI::App* sub, const CliOptions& o, std::ostream& out) {
  ExperimentSpec spec = spec_with_overrides(sub, o);
  validate(spec);
  const FeasibilityReport rep = is_proper(spec.base_config);

  char max_nre[32];
  if (std::isinf(rep.max_nre))
    std::snprintf(max_nre, sizeof max_nre, "inf");
  else
    std::snprintf(max_nre, sizeof max_nre, "%g", rep.max_nre);

  out << "          n_eq: " << rep.n_eq << "\n";
  out << "           n_v: " << rep.n_v << "\n";
  out << "        proper: " << (rep.proper ? "true" : "false") << "\n";
  out << "       max_nre: " << max_nre << "\n";
  out << "silr_onset_nre: " << rep.silr_onset_nre << "\n";

  json j;
  j["subcommand"] = "feasibility";
  j["config"] = config_to_json(spec.base_config);
  j["n_eq"] = rep.n_eq;
  j["n_v"] = rep.n_v;
  j["proper"] = rep.proper;
  if (std::isinf(rep.max_nre))
    j["max_nre"] = "inf";
  else
    j["max_nre"] = rep.max_nre;
  j["silr_onset_nre"] = rep.silr_onset_nre;
  const std::string text = j.dump(2) + "\n";
  out << text;
  atomic_write_text(out_file(o, "feasibility", spec.master_seed, ".json"), text);
  return 0;
}

int run_converge(const CLI::App* sub, const CliOptions& o, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec = spec_with_overrides(sub, o);
  spec.trials = 1;
  ConvergenceResult res = run_convergence(spec);

  write_trajectory_csv(res.solution.cost_trajectory,
                       out_file(o, "converge", spec.master_seed, ".csv"));
  emit_trajectory_plot(res.solution.cost_trajectory,
                       out_file(o, "converge", spec.master_seed, ".svg"));

  json j;
  j["subcommand"] = "converge";
  j["master_seed"] = spec.master_seed;
  j["config"] = config_to_json(spec.base_config);
  j["solver"] = solver_opts_to_json(spec.solver_opts);
  j["proper"] = res.proper;
  j["warning"] = res.warning;
  j["solution"] = solution_to_json(res.solution);
  atomic_write_text(out_file(o, "converge", spec.master_seed, ".json"), j.dump(2) + "\n");

  if (!res.warning.empty()) err << "warning: " << res.warning << "\n";
  char cost[32];
  std::snprintf(cost, sizeof cost, "%.3e", res.solution.final_cost());
  out << "converge: " << res.solution.iterations << " iterations, final cost " << cost << ", "
      << (res.solution.converged ? "converged" : "iteration cap reached") << "\n";
  return 0;
}

int run_sweep_cmd(const CLI::App* sub, const CliOptions& o, const std::string& name,
                  SweepKind kind, std::ostream& out) {
  ExperimentSpec spec = spec_with_overrides(sub, o);
  const ExecMode mode = o.serial ? ExecMode::Serial : ExecMode::Parallel;
  std::vector<TrialRecord> records;
  SweepResult res = kind == SweepKind::Snr
                        ? sweep_snr(spec, mode, o.dump_trials ? &records : nullptr)
                        : sweep_nre(spec, mode, o.dump_trials ? &records : nullptr);

  write_csv(res, out_file(o, name, spec.master_seed, ".csv"));
  emit_plot(res, out_file(o, name, spec.master_seed, ".svg"),
            kind == SweepKind::Snr ? "SNR (dB)" : "Nre");
  if (o.dump_trials) write_trials_csv(records, out_file(o, name, spec.master_seed, "_trials.csv"));

  json rows = json::array();
  for (const SweepRow& r : res.rows)
    rows.push_back({{"sweep_value", r.sweep_value},
                    {"variant", to_string(r.variant)},
                    {"mean_ssr", r.mean_ssr},
                    {"mean_smlr", r.mean_smlr},
                    {"mean_silr", r.mean_silr},
                    {"mean_final_cost", r.mean_final_cost},
                    {"mean_iterations", r.mean_iterations},
                    {"trials", r.trials},
                    {"failed", r.failed}});
  json j;
  j["subcommand"] = name;
  j["master_seed"] = spec.master_seed;
  j["config"] = config_to_json(spec.base_config);
  j["solver"] = solver_opts_to_json(spec.solver_opts);
  j["trials"] = spec.trials;
  j["rows"] = rows;
  atomic_write_text(out_file(o, name, spec.master_seed, ".json"), j.dump(2) + "\n");

  for (std::size_t i = 0; i < res.rows.size();) {
    const double v = res.rows[i].sweep_value;
    std::string line = "[" + name + "] value " + std::to_string(v);
    char buf[96];
    for (; i < res.rows.size() && res.rows[i].sweep_value == v; ++i) {
      const SweepRow& r = res.rows[i];
      std::snprintf(buf, sizeof buf, " | %s ssr %.3f silr %.3f (%d/%d ok)",
                    to_string(r.variant).c_str(), r.mean_ssr, r.mean_silr, r.trials - r.failed,
                    r.trials);
      line += buf;
    }
    out << line << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"interference-alignment simulator for MIMO channels with an eavesdropper"};
  app.require_subcommand(1);

  CliOptions o;
  CLI::App* feas = app.add_subcommand("feasibility", "properness and leakage-onset analysis");
  CLI::App* conv = app.add_subcommand("converge", "single-realization cost trajectory");
  CLI::App* ssnr = app.add_subcommand("sweep-snr", "Monte Carlo sweep over SNR");
  CLI::App* snre = app.add_subcommand("sweep-nre", "Monte Carlo sweep over eavesdropper antennas");
  for (CLI::App* sub : {feas, conv, ssnr, snre}) add_common_options(sub, o);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return 2;
  }

  try {
    if (feas->parsed()) return run_feasibility(feas, o, out);
    if (conv->parsed()) return run_converge(conv, o, out, err);
    if (ssnr->parsed()) return run_sweep_cmd(ssnr, o, "sweep-snr", SweepKind::Snr, out);
    return run_sweep_cmd(snre, o, "sweep-nre", SweepKind::Nre, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wslm
