#pragma once

#include <vector>

#include "wslm/channel.hpp"
#include "wslm/solver.hpp"

namespace wslm {

/// Per-pair rates in bits/s/Hz plus the three aggregates. secrecy_rates[k] is
/// the clipped difference max(main - leakage, 0); ssr, smlr, silr are the
/// respective sums.
struct RateReport {
  std::vector<double> main_rates;
  std::vector<double> leakage_rates;
  std::vector<double> secrecy_rates;
  double smlr = 0.0;
  double silr = 0.0;
  double ssr = 0.0;
};

/// Noise-plus-interference covariance at receiver `rx` (0..K-1 legitimate,
/// K the eavesdropper) with transmitter `excluded_tx` left out of the sum:
/// sigma2 * I + sum over other transmitters of (H F)(H F)^H. Positive definite
/// for sigma2 > 0.
CMat interference_covariance(const ChannelSet& cs, const PrecoderSet& P, int rx, int excluded_tx);

/// Achievable rate of main link k: log2 det(I + H F F^H H^H R^-1) evaluated
/// as logdet(R + G) - logdet(R) to avoid the explicit inverse.
double main_rate(const ChannelSet& cs, const PrecoderSet& P, int k);

/// Rate of the wiretap channel from transmitter k to the eavesdropper, same
/// determinant form with the eavesdropper's covariance.
double leakage_rate(const ChannelSet& cs, const PrecoderSet& P, int k);

RateReport rate_report(const ChannelSet& cs, const PrecoderSet& P);

}  // namespace wslm
