#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wslm/channel.hpp"
#include "wslm/rates.hpp"
#include "wslm/solver.hpp"

namespace wslm {

enum class SweepKind { None, Snr, Nre };

/// Sweep axis: Snr varies Pt as 10^(dB/10) * sigma2, Nre resizes the
/// eavesdropper array. Values must be strictly increasing.
struct SweepSpec {
  SweepKind kind = SweepKind::None;
  std::vector<double> snr_db;
  std::vector<int> nre;
};

struct ExperimentSpec {
  SystemConfig base_config;
  SweepSpec sweep;
  int trials = 200;
  std::uint64_t master_seed = 1;
  std::vector<Variant> variants{Variant::Wslm, Variant::Conventional};
  SolverOptions solver_opts;
};

/// Throws std::invalid_argument naming the offending field when the spec or
/// any config the sweep would instantiate is invalid.
void validate(const ExperimentSpec& spec);

/// Reads an experiment spec from JSON. Only "config" is required; all other
/// fields fall back to their defaults.
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Serial runs the trial loop on one thread; Parallel distributes trials over
/// OpenMP threads. Results are identical byte for byte: per-trial seeds
/// depend only on (master_seed, sweep index, trial index) and aggregation
/// always happens in fixed order.
enum class ExecMode { Serial, Parallel };

/// One (sweep value, variant) aggregate. Means are over the trials that
/// completed; `failed` counts the ones that did not.
struct SweepRow {
  double sweep_value = 0.0;
  Variant variant = Variant::Wslm;
  double mean_ssr = 0.0;
  double mean_smlr = 0.0;
  double mean_silr = 0.0;
  double mean_final_cost = 0.0;
  double mean_iterations = 0.0;
  int trials = 0;
  int failed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Raw per-trial outcome, for auditing the aggregated means.
struct TrialRecord {
  double sweep_value = 0.0;
  Variant variant = Variant::Wslm;
  int trial = 0;
  std::uint64_t channel_seed = 0;
  double ssr = 0.0;
  double smlr = 0.0;
  double silr = 0.0;
  double final_cost = 0.0;
  int iterations = 0;
  bool converged = false;
  bool failed = false;
  std::string error;
};

struct ConvergenceResult {
  IASolution solution;
  bool proper = false;
  std::string warning;  // set when the configuration is improper
};

/// Single-realization convergence run. Requires sweep none, trials == 1 and
/// the wslm variant; an improper config is a warning, not an error.
ConvergenceResult run_convergence(const ExperimentSpec& spec);

/// Monte Carlo sweeps. Every trial generates its own channel realization from
/// a seed derived from (master_seed, sweep index, trial index); both variants
/// see the same realization. `records`, when non-null, receives one
/// TrialRecord per (sweep value, variant, trial) in aggregation order.
SweepResult sweep_snr(const ExperimentSpec& spec, ExecMode mode,
                      std::vector<TrialRecord>* records = nullptr);
SweepResult sweep_nre(const ExperimentSpec& spec, ExecMode mode,
                      std::vector<TrialRecord>* records = nullptr);

/// CSV emission at full double precision (17 significant digits). Empty
/// inputs are an error and create no file.
void write_csv(const SweepResult& result, const std::filesystem::path& path);
void write_trajectory_csv(const std::vector<double>& trajectory, const std::filesystem::path& path);
void write_trials_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);

/// Self-contained SVG line charts. The sweep plot draws mean ssr/smlr/silr
/// per variant against the sweep value; the trajectory plot draws cost per
/// iteration on a log axis.
void emit_plot(const SweepResult& result, const std::filesystem::path& path,
               const std::string& x_label = "sweep value");
void emit_trajectory_plot(const std::vector<double>& trajectory, const std::filesystem::path& path);

}  // namespace wslm
