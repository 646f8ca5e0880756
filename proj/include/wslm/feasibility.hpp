#pragma once

#include "wslm/channel.hpp"

namespace wslm {

/// Properness analysis of an alignment system: equation and variable counts,
/// the resulting proper/improper verdict, the largest eavesdropper array that
/// keeps the system proper, and the eavesdropper size at which the leakage
/// rate starts to grow.
struct FeasibilityReport {
  long long n_eq = 0;
  long long n_v = 0;
  bool proper = false;
  double max_nre = 0.0;  // +inf when K == 1
  int silr_onset_nre = 0;
};

/// Number of independent alignment equations: K(K-1)d^2 cross-pair conditions
/// plus K(Nre-d)d eavesdropper conditions.
long long equation_count(const SystemConfig& cfg);

/// Number of free design variables: Kd(Nt+Nr-2d) for the precoders and
/// receive subspaces plus d(Nre-d) for the eavesdropper subspace.
long long variable_count(const SystemConfig& cfg);

/// Proper iff variables >= equations. For K >= 2 the verdict uses the closed
/// form K(Nt+Nr) - (K^2+1)d >= Nre(K-1); K == 1 falls back to the raw count
/// comparison and reports max_nre = +inf.
FeasibilityReport is_proper(const SystemConfig& cfg);

/// Eavesdropper antenna count at which the sum leakage rate starts
/// increasing: Nt - Nr + 2d, clamped below at d.
int silr_onset(const SystemConfig& cfg);

}  // namespace wslm
