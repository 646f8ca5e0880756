// Times the Monte Carlo sweep in serial and OpenMP mode on the same spec and
// checks that both produce identical rows.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <omp.h>

#include "wslm/harness.hpp"

namespace {

double run_timed(const wslm::ExperimentSpec& spec, wslm::ExecMode mode, wslm::SweepResult& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = wslm::sweep_snr(spec, mode);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

bool rows_identical(const wslm::SweepResult& a, const wslm::SweepResult& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (std::memcmp(&x.sweep_value, &y.sweep_value, sizeof x.sweep_value) != 0 ||
        x.variant != y.variant ||
        std::memcmp(&x.mean_ssr, &y.mean_ssr, sizeof x.mean_ssr) != 0 ||
        std::memcmp(&x.mean_smlr, &y.mean_smlr, sizeof x.mean_smlr) != 0 ||
        std::memcmp(&x.mean_silr, &y.mean_silr, sizeof x.mean_silr) != 0 ||
        std::memcmp(&x.mean_final_cost, &y.mean_final_cost, sizeof x.mean_final_cost) != 0 ||
        std::memcmp(&x.mean_iterations, &y.mean_iterations, sizeof x.mean_iterations) != 0 ||
        x.trials != y.trials || x.failed != y.failed)
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int trials = 20;
  if (argc > 1) trials = std::atoi(argv[1]);
  if (trials < 1) trials = 1;

  wslm::ExperimentSpec spec;
  spec.base_config = {3, 9, 9, 9, 3, 1.0, 1.0};
  spec.sweep.kind = wslm::SweepKind::Snr;
  spec.sweep.snr_db = {10.0, 20.0, 30.0};
  spec.trials = trials;
  spec.master_seed = 7;

  std::printf("sweep-snr benchmark: (9x9,9,3)^3, 3 SNR points, %d trials, %d thread(s)\n", trials,
              omp_get_max_threads());

  wslm::SweepResult serial_res, parallel_res;
  const double ts = run_timed(spec, wslm::ExecMode::Serial, serial_res);
  const double tp = run_timed(spec, wslm::ExecMode::Parallel, parallel_res);

  std::printf("  serial:   %.3f s\n", ts);
  std::printf("  parallel: %.3f s\n", tp);
  std::printf("  speedup:  %.2fx\n", ts / tp);

  if (!rows_identical(serial_res, parallel_res)) {
    std::printf("MISMATCH: serial and parallel results differ\n");
    return 1;
  }
  std::printf("serial and parallel results identical\n");
  return 0;
}
