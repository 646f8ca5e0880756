#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wslm/channel.hpp"
#include "wslm/matrix_ops.hpp"

namespace wslm {

/// Which cost the alternating minimization drives down. Wslm minimizes the
/// inter-main-link interference leakage plus the signal power left outside
/// the eavesdropper's aligned subspace; Conventional minimizes the
/// inter-main-link term only (the eavesdropper subspace is still tracked for
/// reporting).
enum class Variant { Wslm, Conventional };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// Transmit precoders, one Nt x d matrix per pair, each satisfying
/// F^H F = (Pt/d) I.
struct PrecoderSet {
  std::vector<CMat> F;
};

/// Receive-side subspace bases: U[k] is the Nr x (Nr-d) orthonormal basis of
/// the interference subspace at legitimate receiver k, U_eaves the Nre x d
/// orthonormal basis into which all transmit signals are aligned at the
/// eavesdropper.
struct SubspaceSet {
  std::vector<CMat> U;
  CMat U_eaves;
};

struct SolverOptions {
  int kappa_max = 500;
  double cost_epsilon = 1e-9;
  double delta_tolerance = 1e-12;
};

/// The two cost terms and their variant-dependent total: j1 is the
/// inter-main-link interference leakage, j2 the eavesdropper-side residual,
/// j = j1 + j2 for Wslm and j = j1 for Conventional.
struct CostTerms {
  double j1 = 0.0;
  double j2 = 0.0;
  double j = 0.0;
};

struct IASolution {
  PrecoderSet precoders;
  SubspaceSet subspaces;
  std::vector<double> cost_trajectory;  // one entry per iteration, initial value included
  int iterations = 0;
  bool converged = false;
  Variant variant = Variant::Wslm;

  double final_cost() const { return cost_trajectory.empty() ? 0.0 : cost_trajectory.back(); }
};

/// Alignment-condition residuals: rank_ok[k] says whether the filtered direct
/// link W_k^H H(k,k) F_k keeps rank d; imli_residual(k, l) is
/// ||W_k^H H(k,l) F_l||_F for l != k (diagonal entries are zero);
/// eaves_residual[l] is the leakage past the eavesdropper's aligned subspace.
struct IAConditionReport {
  std::vector<bool> rank_ok;
  Eigen::MatrixXd imli_residual;
  std::vector<double> eaves_residual;
};

/// Evaluates both cost terms by direct projection residuals. All three values
/// are returned regardless of variant; only `j` depends on it.
CostTerms cost_total(const ChannelSet& cs, const PrecoderSet& P, const SubspaceSet& S, Variant v);

/// One precoder half-step: for each transmitter the d smallest eigenvectors of
/// the summed leakage quadratic, scaled to sqrt(Pt/d). The eavesdropper term
/// enters the quadratic only for Variant::Wslm.
PrecoderSet update_precoders(const ChannelSet& cs, const SubspaceSet& S, Variant v);

/// One receive-subspace half-step: U[k] spans the (Nr-d) dominant eigenvectors
/// of the interference Gram matrix at receiver k.
std::vector<CMat> update_rx_subspaces(const ChannelSet& cs, const PrecoderSet& P);

/// Eavesdropper half-step: the d dominant eigenvectors of the total
/// received-signal Gram matrix at the eavesdropper.
CMat update_eaves_subspace(const ChannelSet& cs, const PrecoderSet& P);

/// Full alternating minimization: random orthonormal precoder init scaled to
/// the power constraint, initial subspaces, then precoder and subspace sweeps
/// until the cost or its decrement is small enough or kappa_max is reached.
/// The trajectory is nonincreasing; every iterate satisfies the power and
/// orthonormality constraints.
IASolution solve(const ChannelSet& cs, std::uint64_t seed, Variant v, const SolverOptions& opts = {});

/// W_k: the Nr x d orthonormal complement of U[k], the subspace a legitimate
/// receiver actually listens in.
std::vector<CMat> compute_receive_filters(const SubspaceSet& S);

/// Post-hoc verification of the alignment conditions for a solution.
/// `tol` is the relative singular-value threshold for the rank check.
IAConditionReport check_ia_conditions(const ChannelSet& cs, const IASolution& sol, double tol);

/// JSON dump of a solution (same complex-entry convention as channel files).
void save_solution(const IASolution& sol, const std::filesystem::path& path);

}  // namespace wslm
