#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "wslm/matrix_ops.hpp"

namespace wslm {

/// Dimensions and link-budget parameters of a K-pair interference channel
/// with one eavesdropper: K Tx-Rx pairs, Nt transmit and Nr receive antennas,
/// Nre eavesdropper antennas, d streams per pair, total transmit power Pt per
/// Tx and noise variance sigma2 (both linear).
struct SystemConfig {
  int K = 0;
  int Nt = 0;
  int Nr = 0;
  int Nre = 0;
  int d = 0;
  double Pt = 1.0;
  double sigma2 = 1.0;
};

/// Throws std::invalid_argument naming the offending field if the config
/// violates any invariant (counts >= 1, Pt > 0, sigma2 > 0, d <= min(Nt, Nr),
/// d <= Nre, Nr - d >= 1).
void validate(const SystemConfig& cfg);

/// One static flat-fading channel realization for every link. Receivers are
/// 0-based with rx == K the eavesdropper; transmitters 0-based in 0..K-1.
/// Matrices are Nr x Nt for legitimate receivers and Nre x Nt for rx == K.
struct ChannelSet {
  SystemConfig config;
  std::uint64_t seed = 0;
  std::vector<CMat> mats;  // indexed rx * K + tx

  const CMat& H(int rx, int tx) const { return mats.at(static_cast<std::size_t>(rx) * config.K + tx); }
  CMat& H(int rx, int tx) { return mats.at(static_cast<std::size_t>(rx) * config.K + tx); }
};

/// Draws every channel entry i.i.d. circularly-symmetric complex Gaussian with
/// zero mean and unit variance. Each link's stream is derived from (seed, rx,
/// tx), so matrices do not depend on generation order.
ChannelSet generate_channels(const SystemConfig& cfg, std::uint64_t seed);

/// JSON persistence. Complex entries are stored as [re, im] pairs, matrices
/// row-major; round-trip through save/load is bit-exact.
void save_channels(const ChannelSet& cs, const std::filesystem::path& path);
ChannelSet load_channels(const std::filesystem::path& path);

}  // namespace wslm
