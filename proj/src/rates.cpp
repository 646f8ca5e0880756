#include "wslm/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wslm {

namespace {

constexpr double kLog2e = 1.4426950408889634;  // 1/ln 2

void check_indices(const SystemConfig& c, int rx, int excluded_tx) {
  if (rx < 0 || rx > c.K)
    throw std::out_of_range("rate error: receiver index " + std::to_string(rx) +
                            " outside 0.." + std::to_string(c.K));
  if (excluded_tx < 0 || excluded_tx >= c.K)
    throw std::out_of_range("rate error: transmitter index " + std::to_string(excluded_tx) +
                            " outside 0.." + std::to_string(c.K - 1));
}

// log2 det(I + G R^-1) for Hermitian PSD G and PD R, via two Cholesky logdets.
double rate_bits(const CMat& R, const CMat& G) {
  const double r = (logdet_psd(R + G) - logdet_psd(R)) * kLog2e;
  return std::max(r, 0.0);
}

}  // namespace

CMat interference_covariance(const ChannelSet& cs, const PrecoderSet& P, int rx, int excluded_tx) {
  const SystemConfig& c = cs.config;
  check_indices(c, rx, excluded_tx);
  const int n = rx == c.K ? c.Nre : c.Nr;
  CMat R = c.sigma2 * CMat::Identity(n, n);
  for (int l = 0; l < c.K; ++l) {
    if (l == excluded_tx) continue;
    CMat HF = cs.H(rx, l) * P.F[l];
    R += HF * HF.adjoint();
  }
  return R;
}

double main_rate(const ChannelSet& cs, const PrecoderSet& P, int k) {
  check_indices(cs.config, k, k);
  CMat HF = cs.H(k, k) * P.F[k];
  return rate_bits(interference_covariance(cs, P, k, k), HF * HF.adjoint());
}

double leakage_rate(const ChannelSet& cs, const PrecoderSet& P, int k) {
  const int e = cs.config.K;
  check_indices(cs.config, e, k);
  CMat HF = cs.H(e, k) * P.F[k];
  return rate_bits(interference_covariance(cs, P, e, k), HF * HF.adjoint());
}

RateReport rate_report(const ChannelSet& cs, const PrecoderSet& P) {
  const int K = cs.config.K;
  RateReport rep;
  rep.main_rates.reserve(K);
  rep.leakage_rates.reserve(K);
  rep.secrecy_rates.reserve(K);
  for (int k = 0; k < K; ++k) {
    const double m = main_rate(cs, P, k);
    const double e = leakage_rate(cs, P, k);
    rep.main_rates.push_back(m);
    rep.leakage_rates.push_back(e);
    rep.secrecy_rates.push_back(std::max(m - e, 0.0));
    rep.smlr += m;
    rep.silr += e;
    rep.ssr += rep.secrecy_rates.back();
  }
  return rep;
}

}  // namespace wslm
