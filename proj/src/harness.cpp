#include "wslm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "json_util.hpp"
#include "wslm/feasibility.hpp"
#include "wslm/io.hpp"
#include "wslm/rng.hpp"

namespace wslm {

using nlohmann::json;

namespace {

void require_increasing(std::size_t n, const char* name, bool increasing) {
  if (n == 0)
    throw std::invalid_argument(std::string("experiment error: sweep ") + name +
                                " must be nonempty");
  if (!increasing)
    throw std::invalid_argument(std::string("experiment error: sweep ") + name +
                                " must be strictly increasing");
}

SystemConfig config_at_snr(SystemConfig c, double snr_db) {
  c.Pt = std::pow(10.0, snr_db / 10.0) * c.sigma2;
  return c;
}

SystemConfig config_at_nre(SystemConfig c, int nre) {
  c.Nre = nre;
  return c;
}

}  // namespace

void validate(const ExperimentSpec& spec) {
  validate(spec.base_config);
  if (spec.trials < 1)
    throw std::invalid_argument("experiment error: trials must be >= 1 (got " +
                                std::to_string(spec.trials) + ")");
  if (spec.variants.empty())
    throw std::invalid_argument("experiment error: variants must be nonempty");
  for (std::size_t i = 0; i + 1 < spec.variants.size(); ++i)
    for (std::size_t j = i + 1; j < spec.variants.size(); ++j)
      if (spec.variants[i] == spec.variants[j])
        throw std::invalid_argument("experiment error: variants must not repeat");
  if (spec.solver_opts.kappa_max < 1)
    throw std::invalid_argument("experiment error: kappa_max must be >= 1 (got " +
                                std::to_string(spec.solver_opts.kappa_max) + ")");
  if (!(spec.solver_opts.cost_epsilon >= 0.0))
    throw std::invalid_argument("experiment error: cost_epsilon must be >= 0");
  if (!(spec.solver_opts.delta_tolerance >= 0.0))
    throw std::invalid_argument("experiment error: delta_tolerance must be >= 0");

  switch (spec.sweep.kind) {
    case SweepKind::None:
      break;
    case SweepKind::Snr: {
      const auto& v = spec.sweep.snr_db;
      require_increasing(v.size(), "values_db", std::is_sorted(v.begin(), v.end()) &&
                                                    std::adjacent_find(v.begin(), v.end()) == v.end());
      for (double db : v) validate(config_at_snr(spec.base_config, db));
      break;
    }
    case SweepKind::Nre: {
      const auto& v = spec.sweep.nre;
      require_increasing(v.size(), "values", std::is_sorted(v.begin(), v.end()) &&
                                                 std::adjacent_find(v.begin(), v.end()) == v.end());
      for (int nre : v) {
        try {
          validate(config_at_nre(spec.base_config, nre));
        } catch (const std::invalid_argument& e) {
          throw std::invalid_argument("experiment error: sweep value " + std::to_string(nre) +
                                      " yields an invalid config: " + e.what());
        }
      }
      break;
    }
  }
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io error: cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("parse error: " + std::string(e.what()));
  }
  if (!j.is_object()) throw std::runtime_error("parse error: experiment spec must be a JSON object");
  if (!j.contains("config"))
    throw std::runtime_error("parse error: experiment spec is missing field 'config'");

  auto get_field = [](const json& src, const char* ctx, const char* field, auto& dst) {
    try {
      src.at(field).get_to(dst);
    } catch (const json::exception&) {
      throw std::runtime_error(std::string("parse error: ") + ctx + " field '" + field +
                               "' has the wrong type");
    }
  };

  ExperimentSpec spec;
  spec.base_config = config_from_json(j.at("config"));
  if (j.contains("trials")) get_field(j, "experiment spec", "trials", spec.trials);
  if (j.contains("master_seed")) get_field(j, "experiment spec", "master_seed", spec.master_seed);

  if (j.contains("variants")) {
    if (!j.at("variants").is_array())
      throw std::runtime_error("parse error: experiment spec field 'variants' must be an array");
    spec.variants.clear();
    for (const json& v : j.at("variants")) {
      if (!v.is_string())
        throw std::runtime_error("parse error: variants entries must be strings");
      try {
        spec.variants.push_back(variant_from_string(v.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("parse error: ") + e.what());
      }
    }
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    if (!s.is_object())
      throw std::runtime_error("parse error: experiment spec field 'solver' must be an object");
    if (s.contains("kappa_max")) get_field(s, "solver", "kappa_max", spec.solver_opts.kappa_max);
    if (s.contains("cost_epsilon"))
      get_field(s, "solver", "cost_epsilon", spec.solver_opts.cost_epsilon);
    if (s.contains("delta_tolerance"))
      get_field(s, "solver", "delta_tolerance", spec.solver_opts.delta_tolerance);
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    if (!s.is_object() || !s.contains("kind"))
      throw std::runtime_error("parse error: sweep must be an object with a 'kind' field");
    std::string kind;
    get_field(s, "sweep", "kind", kind);
    if (kind == "none") {
      spec.sweep.kind = SweepKind::None;
    } else if (kind == "snr") {
      spec.sweep.kind = SweepKind::Snr;
      if (!s.contains("values_db"))
        throw std::runtime_error("parse error: snr sweep is missing field 'values_db'");
      get_field(s, "sweep", "values_db", spec.sweep.snr_db);
    } else if (kind == "nre") {
      spec.sweep.kind = SweepKind::Nre;
      if (!s.contains("values"))
        throw std::runtime_error("parse error: nre sweep is missing field 'values'");
      get_field(s, "sweep", "values", spec.sweep.nre);
    } else {
      throw std::runtime_error("parse error: sweep kind must be one of none, snr, nre (got '" +
                               kind + "')");
    }
  }
  return spec;
}

ConvergenceResult run_convergence(const ExperimentSpec& spec) {
  validate(spec);
  if (spec.sweep.kind != SweepKind::None)
    throw std::invalid_argument("experiment error: convergence run requires sweep kind 'none'");
  if (spec.trials != 1)
    throw std::invalid_argument("experiment error: convergence run requires trials == 1 (got " +
                                std::to_string(spec.trials) + ")");
  if (std::find(spec.variants.begin(), spec.variants.end(), Variant::Wslm) == spec.variants.end())
    throw std::invalid_argument("experiment error: convergence run requires the wslm variant");

  ChannelSet cs = generate_channels(spec.base_config, seed_mix({spec.master_seed, 0, 0, 0}));
  ConvergenceResult out;
  out.solution = solve(cs, seed_mix({spec.master_seed, 0, 0, 1}), Variant::Wslm, spec.solver_opts);
  FeasibilityReport fr = is_proper(spec.base_config);
  out.proper = fr.proper;
  if (!fr.proper)
    out.warning = "configuration is improper (" + std::to_string(fr.n_v) + " variables < " +
                  std::to_string(fr.n_eq) + " equations); alignment may not be achievable";
  return out;
}

namespace {

SweepResult run_sweep(const ExperimentSpec& spec, SweepKind kind, ExecMode mode,
                      std::vector<TrialRecord>* records) {
  validate(spec);
  if (spec.sweep.kind != kind)
    throw std::invalid_argument(std::string("experiment error: sweep kind must be '") +
                                (kind == SweepKind::Snr ? "snr" : "nre") + "' for this run");

  std::vector<double> values;
  std::vector<SystemConfig> cfgs;
  if (kind == SweepKind::Snr) {
    for (double db : spec.sweep.snr_db) {
      values.push_back(db);
      cfgs.push_back(config_at_snr(spec.base_config, db));
    }
  } else {
    for (int nre : spec.sweep.nre) {
      values.push_back(static_cast<double>(nre));
      cfgs.push_back(config_at_nre(spec.base_config, nre));
    }
  }

  const int S = static_cast<int>(values.size());
  const int T = spec.trials;
  const int V = static_cast<int>(spec.variants.size());
  std::vector<TrialRecord> recs(static_cast<std::size_t>(S) * T * V);

  // Each task covers one channel realization; both variants solve it. Slots
  // are preassigned so scheduling cannot affect the stored results.
  auto run_task = [&](int task) {
    const int si = task / T;
    const int t = task % T;
    const std::uint64_t channel_seed =
        seed_mix({spec.master_seed, static_cast<std::uint64_t>(si), static_cast<std::uint64_t>(t), 0});
    const std::uint64_t init_seed =
        seed_mix({spec.master_seed, static_cast<std::uint64_t>(si), static_cast<std::uint64_t>(t), 1});
    ChannelSet cs;
    std::string gen_error;
    try {
      cs = generate_channels(cfgs[si], channel_seed);
    } catch (const std::exception& e) {
      gen_error = e.what();
    }
    for (int vi = 0; vi < V; ++vi) {
      TrialRecord& r = recs[(static_cast<std::size_t>(si) * V + vi) * T + t];
      r.sweep_value = values[si];
      r.variant = spec.variants[vi];
      r.trial = t;
      r.channel_seed = channel_seed;
      if (!gen_error.empty()) {
        r.failed = true;
        r.error = gen_error;
        continue;
      }
      try {
        IASolution sol = solve(cs, init_seed, spec.variants[vi], spec.solver_opts);
        RateReport rep = rate_report(cs, sol.precoders);
        r.ssr = rep.ssr;
        r.smlr = rep.smlr;
        r.silr = rep.silr;
        r.final_cost = sol.final_cost();
        r.iterations = sol.iterations;
        r.converged = sol.converged;
      } catch (const std::exception& e) {
        r.failed = true;
        r.error = e.what();
      }
    }
  };

  const int n_tasks = S * T;
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int task = 0; task < n_tasks; ++task) run_task(task);
  } else {
    for (int task = 0; task < n_tasks; ++task) run_task(task);
  }

  // Aggregation is serial and in fixed (sweep value, variant, trial) order,
  // so the result does not depend on the execution mode.
  SweepResult out;
  for (int si = 0; si < S; ++si)
    for (int vi = 0; vi < V; ++vi) {
      SweepRow row;
      row.sweep_value = values[si];
      row.variant = spec.variants[vi];
      row.trials = T;
      double ssr = 0, smlr = 0, silr = 0, cost = 0, iters = 0;
      int ok = 0;
      for (int t = 0; t < T; ++t) {
        const TrialRecord& r = recs[(static_cast<std::size_t>(si) * V + vi) * T + t];
        if (r.failed) {
          ++row.failed;
          continue;
        }
        ++ok;
        ssr += r.ssr;
        smlr += r.smlr;
        silr += r.silr;
        cost += r.final_cost;
        iters += r.iterations;
      }
      if (ok > 0) {
        row.mean_ssr = ssr / ok;
        row.mean_smlr = smlr / ok;
        row.mean_silr = silr / ok;
        row.mean_final_cost = cost / ok;
        row.mean_iterations = iters / ok;
      }
      out.rows.push_back(row);
    }

  if (records) *records = std::move(recs);
  return out;
}

}  // namespace

SweepResult sweep_snr(const ExperimentSpec& spec, ExecMode mode, std::vector<TrialRecord>* records) {
  return run_sweep(spec, SweepKind::Snr, mode, records);
}

SweepResult sweep_nre(const ExperimentSpec& spec, ExecMode mode, std::vector<TrialRecord>* records) {
  return run_sweep(spec, SweepKind::Nre, mode, records);
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  if (result.rows.empty()) throw std::invalid_argument("csv error: sweep result is empty");
  std::string s =
      "sweep_value,variant,mean_ssr,mean_smlr,mean_silr,mean_final_cost,mean_iterations,trials,"
      "failed\n";
  for (const SweepRow& r : result.rows) {
    s += g17(r.sweep_value) + "," + to_string(r.variant) + "," + g17(r.mean_ssr) + "," +
         g17(r.mean_smlr) + "," + g17(r.mean_silr) + "," + g17(r.mean_final_cost) + "," +
         g17(r.mean_iterations) + "," + std::to_string(r.trials) + "," +
         std::to_string(r.failed) + "\n";
  }
  atomic_write_text(path, s);
}

void write_trajectory_csv(const std::vector<double>& trajectory,
                          const std::filesystem::path& path) {
  if (trajectory.empty()) throw std::invalid_argument("csv error: trajectory is empty");
  std::string s = "iteration,cost\n";
  for (std::size_t i = 0; i < trajectory.size(); ++i)
    s += std::to_string(i) + "," + g17(trajectory[i]) + "\n";
  atomic_write_text(path, s);
}

void write_trials_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("csv error: trial record list is empty");
  std::string s =
      "sweep_value,variant,trial,channel_seed,ssr,smlr,silr,final_cost,iterations,converged,"
      "failed,error\n";
  for (const TrialRecord& r : records) {
    std::string err = r.error;
    for (std::size_t p = err.find('"'); p != std::string::npos; p = err.find('"', p + 2))
      err.replace(p, 1, "\"\"");
    s += g17(r.sweep_value) + "," + to_string(r.variant) + "," + std::to_string(r.trial) + "," +
         std::to_string(r.channel_seed) + "," + g17(r.ssr) + "," + g17(r.smlr) + "," +
         g17(r.silr) + "," + g17(r.final_cost) + "," + std::to_string(r.iterations) + "," +
         (r.converged ? "1" : "0") + "," + (r.failed ? "1" : "0") + ",\"" + err + "\"\n";
  }
  atomic_write_text(path, s);
}

}  // namespace wslm
