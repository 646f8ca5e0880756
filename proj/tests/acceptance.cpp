// Acceptance gate: one self-contained check per release criterion, one
// verdict line each. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wslm/feasibility.hpp"
#include "wslm/harness.hpp"
#include "wslm/rates.hpp"
#include "wslm/solver.hpp"

using namespace wslm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void verdict(int criterion, const char* name, bool pass, const std::string& detail, double secs) {
  std::printf("[%s] criterion %d (%s): %s in %.1f s\n", pass ? "PASS" : "FAIL", criterion, name,
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Criterion 1: the reference aligned system reaches cost <= 1e-9 within 50
// iterations on at least 90 of 100 seeds, in under a minute. Criterion 6
// reuses the converged solutions, so they are collected here.
struct ConvergenceOutcome {
  int reached = 0;
  double secs = 0.0;
  std::vector<ChannelSet> channels;
  std::vector<IASolution> converged;
};

ConvergenceOutcome run_criterion_1() {
  const auto start = Clock::now();
  ConvergenceOutcome out;
  const SystemConfig cfg{3, 9, 9, 6, 3, 1.0, 1.0};
  SolverOptions opts;
  opts.kappa_max = 50;
  opts.cost_epsilon = 1e-9;
  opts.delta_tolerance = 0.0;  // run the full budget instead of plateau-stopping
  for (int i = 0; i < 100; ++i) {
    ChannelSet cs = generate_channels(cfg, seed_mix({101, static_cast<std::uint64_t>(i)}));
    IASolution sol = solve(cs, seed_mix({202, static_cast<std::uint64_t>(i)}), Variant::Wslm, opts);
    if (sol.final_cost() <= 1e-9) {
      ++out.reached;
      out.channels.push_back(std::move(cs));
      out.converged.push_back(std::move(sol));
    }
  }
  out.secs = seconds_since(start);
  return out;
}

bool run_criterion_2(std::string& detail, double& secs) {
  const auto start = Clock::now();
  std::mt19937_64 rng(7);
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    SystemConfig c;
    c.K = 1 + static_cast<int>(rng() % 3);
    c.d = 1 + static_cast<int>(rng() % 3);
    auto dim = [&](int lo) { return lo + static_cast<int>(rng() % (10 - lo)); };
    c.Nt = dim(c.d);
    c.Nr = dim(c.d + 1);
    c.Nre = dim(c.d);
    std::uniform_real_distribution<double> log_pt(-1.0, 1.0);
    c.Pt = std::pow(10.0, log_pt(rng));
    c.sigma2 = 1.0;
    const Variant v = i % 2 == 0 ? Variant::Wslm : Variant::Conventional;
    ChannelSet cs = generate_channels(c, seed_mix({303, static_cast<std::uint64_t>(i)}));
    IASolution sol = solve(cs, seed_mix({404, static_cast<std::uint64_t>(i)}), v);
    for (std::size_t k = 1; k < sol.cost_trajectory.size(); ++k) {
      const double rise = sol.cost_trajectory[k] - sol.cost_trajectory[k - 1];
      if (rise > worst) worst = rise;
      if (rise > 1e-12) ++violations;
    }
  }
  secs = seconds_since(start);
  detail = fmt("%d rises beyond 1e-12 over 200 random systems (worst %.1e), runtime %s 120 s",
               violations, worst, secs < 120.0 ? "<" : ">=");
  return violations == 0 && secs < 120.0;
}

bool run_criterion_3(std::string& detail, double& secs) {
  const auto start = Clock::now();
  long long checked = 0, mismatches = 0;
  for (int K = 1; K <= 4; ++K)
    for (int d = 1; d <= 3; ++d)
      for (int Nt = d; Nt <= 10; ++Nt)
        for (int Nr = d; Nr <= 10; ++Nr)
          for (int Nre = d; Nre <= 10; ++Nre) {
            const SystemConfig c{K, Nt, Nr, Nre, d, 1.0, 1.0};
            FeasibilityReport r = is_proper(c);
            ++checked;
            if (r.proper != (variable_count(c) >= equation_count(c))) ++mismatches;
          }
  secs = seconds_since(start);
  detail = fmt("%lld mismatches across %lld configs", mismatches, checked);
  return mismatches == 0;
}

SweepResult silr_sweep(int nr, const std::vector<int>& values) {
  ExperimentSpec spec;
  spec.base_config = {3, 20, nr, 3, 3, 1000.0, 1.0};  // 30 dB SNR
  spec.sweep.kind = SweepKind::Nre;
  spec.sweep.nre = values;
  spec.trials = 50;
  spec.master_seed = 4;
  spec.variants = {Variant::Wslm};
  return sweep_nre(spec, ExecMode::Parallel);
}

bool run_criterion_4(std::string& detail, double& secs) {
  const auto start = Clock::now();

  std::vector<int> values_a;
  for (int v = 3; v <= 12; ++v) values_a.push_back(v);
  SweepResult a = silr_sweep(20, values_a);

  const double s3 = a.rows[0].mean_silr, s4 = a.rows[1].mean_silr, s5 = a.rows[2].mean_silr;
  const bool low_ok = s3 < 0.5 && s4 < 0.5 && s5 < 0.5;

  bool increasing = true;
  for (std::size_t i = 4; i < a.rows.size(); ++i)
    if (!(a.rows[i].mean_silr > a.rows[i - 1].mean_silr)) increasing = false;

  std::vector<int> values_b;
  for (int v = 3; v <= 20; ++v) values_b.push_back(v);
  SweepResult b = silr_sweep(9, values_b);
  const double baseline = b.rows[0].mean_silr;
  int onset = -1;
  for (std::size_t i = 1; i < b.rows.size() && onset < 0; ++i)
    if (b.rows[i].mean_silr > 3.0 * baseline) onset = values_b[i];
  const bool onset_ok = onset >= 16 && onset <= 18;

  secs = seconds_since(start);
  detail = fmt("20x20 silr at Nre 3/4/5 = %.2f/%.2f/%.2f (need < 0.5); 6..12 strictly "
               "increasing: %s; 20x9 onset %s (need 17 +- 1, baseline %.2f)",
               s3, s4, s5, increasing ? "yes" : "no",
               onset < 0 ? "never" : fmt("at Nre=%d", onset).c_str(), baseline);
  return low_ok && increasing && onset_ok;
}

bool run_criterion_5(std::string& detail, double& secs) {
  const auto start = Clock::now();
  ExperimentSpec spec;
  spec.base_config = {3, 9, 9, 9, 3, 1.0, 1.0};
  spec.sweep.kind = SweepKind::Snr;
  spec.sweep.snr_db = {10.0, 20.0, 30.0};
  spec.trials = 200;
  spec.master_seed = 5;
  spec.variants = {Variant::Wslm, Variant::Conventional};
  SweepResult res = sweep_snr(spec, ExecMode::Parallel);

  bool ordered = true, growing = true;
  double prev_gap = -1.0;
  std::string gaps;
  for (std::size_t i = 0; i + 1 < res.rows.size(); i += 2) {
    const double w = res.rows[i].mean_ssr, c = res.rows[i + 1].mean_ssr;
    if (!(w > c)) ordered = false;
    const double gap = w - c;
    if (gap <= prev_gap) growing = false;
    prev_gap = gap;
    gaps += fmt("%s%.2f", gaps.empty() ? "" : "/", gap);
  }
  secs = seconds_since(start);
  detail = fmt("wslm-conventional ssr gaps %s at 10/20/30 dB, ordered %s, growing %s, runtime "
               "%s 600 s",
               gaps.c_str(), ordered ? "yes" : "no", growing ? "yes" : "no",
               secs < 600.0 ? "<" : ">=");
  return ordered && growing && secs < 600.0;
}

bool run_criterion_6(const ConvergenceOutcome& c1, std::string& detail, double& secs) {
  const auto start = Clock::now();
  const double pt = 1.0, d = 3.0;
  int power_bad = 0, ortho_bad = 0, residual_bad = 0;
  const double res_limit = 1e-4 * std::sqrt(pt);
  for (std::size_t i = 0; i < c1.converged.size(); ++i) {
    const IASolution& sol = c1.converged[i];
    for (const CMat& F : sol.precoders.F) {
      if ((F.adjoint() * F - (pt / d) * CMat::Identity(3, 3)).norm() > 1e-9) ++power_bad;
    }
    for (const CMat& U : sol.subspaces.U)
      if (!is_orthonormal(U, 1e-10)) ++ortho_bad;
    if (!is_orthonormal(sol.subspaces.U_eaves, 1e-10)) ++ortho_bad;

    IAConditionReport rep = check_ia_conditions(c1.channels[i], sol, 1e-6);
    for (int k = 0; k < 3; ++k) {
      if (!rep.rank_ok[k]) ++residual_bad;
      for (int l = 0; l < 3; ++l)
        if (l != k && rep.imli_residual(k, l) > res_limit) ++residual_bad;
      if (rep.eaves_residual[k] > res_limit) ++residual_bad;
    }
  }
  secs = seconds_since(start);
  detail = fmt("%zu converged runs: %d power, %d orthonormality, %d alignment violations",
               c1.converged.size(), power_bad, ortho_bad, residual_bad);
  return !c1.converged.empty() && power_bad == 0 && ortho_bad == 0 && residual_bad == 0;
}

bool run_criterion_7(std::string& detail, double& secs) {
  const auto start = Clock::now();
  double worst_cost = 0.0, worst_rate = 0.0, worst_trace = 0.0;

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SystemConfig c{3, 3, 3, 3, 1, 2.0, 1.0};
    ChannelSet cs = generate_channels(c, seed);
    PrecoderSet P = testutil::random_precoders(c, seed + 10);
    SubspaceSet S = testutil::random_subspaces(c, seed + 20);
    for (Variant v : {Variant::Wslm, Variant::Conventional}) {
      CostTerms lib = cost_total(cs, P, S, v);
      CostTerms ora = oracle::cost(cs, P, S, v);
      worst_cost = std::max({worst_cost, std::abs(lib.j1 - ora.j1), std::abs(lib.j2 - ora.j2),
                             std::abs(lib.j - ora.j)});
    }
  }

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (const SystemConfig& c :
         {SystemConfig{3, 9, 9, 6, 3, 1.0, 1.0}, SystemConfig{2, 12, 12, 12, 3, 4.0, 1.0}}) {
      ChannelSet cs = generate_channels(c, seed + 30);
      PrecoderSet P = testutil::random_precoders(c, seed + 40);
      for (int k = 0; k < c.K; ++k) {
        worst_rate = std::max(worst_rate,
                              std::abs(main_rate(cs, P, k) - oracle::rate(cs, P, k, k)));
        worst_rate = std::max(worst_rate,
                              std::abs(leakage_rate(cs, P, k) - oracle::rate(cs, P, c.K, k)));
      }
    }
  }

  auto rng = make_rng(55);
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      CMat A = testutil::random_hermitian(n, rng);
      std::vector<double> eigs;
      {
        Eigen::SelfAdjointEigenSolver<CMat> es(A);
        for (int i = 0; i < n; ++i) eigs.push_back(es.eigenvalues()(i));
      }
      for (int m = 1; m <= n; ++m) {
        const std::vector<double> sums = oracle::subset_sums(eigs, m);
        double lo = sums[0], hi = sums[0];
        for (double s : sums) {
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
        const CMat small = select_eigvecs(A, m, EigSelect::Smallest);
        const CMat big = select_eigvecs(A, m, EigSelect::Dominant);
        worst_trace = std::max(worst_trace, std::abs(oracle::quadratic_trace(A, small) - lo));
        worst_trace = std::max(worst_trace, std::abs(oracle::quadratic_trace(A, big) - hi));
      }
    }
  }

  secs = seconds_since(start);
  detail = fmt("cost gap %.1e (tol 1e-10), rate gap %.1e (tol 1e-9), eig-subset trace gap %.1e",
               worst_cost, worst_rate, worst_trace);
  return worst_cost <= 1e-10 && worst_rate <= 1e-9 && worst_trace <= 1e-8;
}

}  // namespace

int main() {
  ConvergenceOutcome c1 = run_criterion_1();
  verdict(1, "convergence", c1.reached >= 90 && c1.secs < 60.0,
          fmt("%d/100 seeds reached cost <= 1e-9 within 50 iterations, runtime %s 60 s",
              c1.reached, c1.secs < 60.0 ? "<" : ">="),
          c1.secs);

  std::string detail;
  double secs = 0.0;

  bool ok = run_criterion_2(detail, secs);
  verdict(2, "cost monotonicity", ok, detail, secs);

  ok = run_criterion_3(detail, secs);
  verdict(3, "feasibility closed form", ok, detail, secs);

  ok = run_criterion_4(detail, secs);
  verdict(4, "silr onset", ok, detail, secs);

  ok = run_criterion_5(detail, secs);
  verdict(5, "secrecy advantage", ok, detail, secs);

  ok = run_criterion_6(c1, detail, secs);
  verdict(6, "constraint residuals", ok, detail, secs);

  ok = run_criterion_7(detail, secs);
  verdict(7, "oracle equivalence", ok, detail, secs);

  if (failures > 0) {
    std::printf("%d of 7 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 7 criteria passed\n");
  return 0;
}
