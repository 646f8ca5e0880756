#include "wslm/feasibility.hpp"

#include <algorithm>
#include <limits>

namespace wslm {

long long equation_count(const SystemConfig& cfg) {
  const long long K = cfg.K, d = cfg.d, Nre = cfg.Nre;
  return K * (K - 1) * d * d + K * (Nre - d) * d;
}

long long variable_count(const SystemConfig& cfg) {
  const long long K = cfg.K, d = cfg.d, Nt = cfg.Nt, Nr = cfg.Nr, Nre = cfg.Nre;
  return K * d * (Nt + Nr - 2 * d) + d * (Nre - d);
}

FeasibilityReport is_proper(const SystemConfig& cfg) {
  FeasibilityReport r;
  r.n_eq = equation_count(cfg);
  r.n_v = variable_count(cfg);
  const long long K = cfg.K, d = cfg.d, Nt = cfg.Nt, Nr = cfg.Nr, Nre = cfg.Nre;
  if (K >= 2) {
    r.proper = K * (Nt + Nr) - (K * K + 1) * d >= Nre * (K - 1);
    r.max_nre = static_cast<double>(K * (Nt + Nr) - (K * K + 1) * d) / static_cast<double>(K - 1);
  } else {
    r.proper = r.n_v >= r.n_eq;
    r.max_nre = std::numeric_limits<double>::infinity();
  }
  r.silr_onset_nre = silr_onset(cfg);
  return r;
}

int silr_onset(const SystemConfig& cfg) {
  return std::max(cfg.Nt - cfg.Nr + 2 * cfg.d, cfg.d);
}

}  // namespace wslm
