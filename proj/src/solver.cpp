#include "wslm/solver.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "json_util.hpp"
#include "wslm/io.hpp"
#include "wslm/rng.hpp"

namespace wslm {

namespace {

void check_shapes(const ChannelSet& cs) {
  const SystemConfig& c = cs.config;
  validate(c);
  if (static_cast<int>(cs.mats.size()) != (c.K + 1) * c.K)
    throw std::runtime_error("dimension error: channel set holds " + std::to_string(cs.mats.size()) +
                             " matrices, expected " + std::to_string((c.K + 1) * c.K));
  for (int rx = 0; rx <= c.K; ++rx) {
    const int rows = rx == c.K ? c.Nre : c.Nr;
    for (int tx = 0; tx < c.K; ++tx) {
      const CMat& H = cs.H(rx, tx);
      if (H.rows() != rows || H.cols() != c.Nt)
        throw std::runtime_error("dimension error: channel (" + std::to_string(rx + 1) + "," +
                                 std::to_string(tx + 1) + ") is " + std::to_string(H.rows()) + "x" +
                                 std::to_string(H.cols()) + ", expected " + std::to_string(rows) +
                                 "x" + std::to_string(c.Nt));
    }
  }
}

void check_precoders(const SystemConfig& c, const PrecoderSet& P) {
  if (static_cast<int>(P.F.size()) != c.K)
    throw std::runtime_error("dimension error: precoder set holds " + std::to_string(P.F.size()) +
                             " matrices, expected " + std::to_string(c.K));
  for (const CMat& F : P.F)
    if (F.rows() != c.Nt || F.cols() != c.d)
      throw std::runtime_error("dimension error: precoder is " + std::to_string(F.rows()) + "x" +
                               std::to_string(F.cols()) + ", expected " + std::to_string(c.Nt) +
                               "x" + std::to_string(c.d));
}

void check_subspaces(const SystemConfig& c, const SubspaceSet& S) {
  if (static_cast<int>(S.U.size()) != c.K)
    throw std::runtime_error("dimension error: subspace set holds " + std::to_string(S.U.size()) +
                             " matrices, expected " + std::to_string(c.K));
  for (const CMat& U : S.U) {
    if (U.rows() != c.Nr || U.cols() != c.Nr - c.d)
      throw std::runtime_error("dimension error: receive subspace is " + std::to_string(U.rows()) +
                               "x" + std::to_string(U.cols()) + ", expected " +
                               std::to_string(c.Nr) + "x" + std::to_string(c.Nr - c.d));
    if (!is_orthonormal(U)) throw std::runtime_error("subspace error: receive basis not orthonormal");
  }
  if (S.U_eaves.rows() != c.Nre || S.U_eaves.cols() != c.d)
    throw std::runtime_error("dimension error: eavesdropper subspace is " +
                             std::to_string(S.U_eaves.rows()) + "x" +
                             std::to_string(S.U_eaves.cols()) + ", expected " +
                             std::to_string(c.Nre) + "x" + std::to_string(c.d));
  if (!is_orthonormal(S.U_eaves))
    throw std::runtime_error("subspace error: eavesdropper basis not orthonormal");
}

// Squared Frobenius norm of the part of M outside span(U). U orthonormal.
double residual_outside(const CMat& U, const CMat& M) {
  return (M - U * (U.adjoint() * M)).squaredNorm();
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::Wslm ? "wslm" : "conventional"; }

Variant variant_from_string(const std::string& s) {
  if (s == "wslm") return Variant::Wslm;
  if (s == "conventional") return Variant::Conventional;
  throw std::invalid_argument("unknown variant: " + s);
}

CostTerms cost_total(const ChannelSet& cs, const PrecoderSet& P, const SubspaceSet& S, Variant v) {
  check_shapes(cs);
  const SystemConfig& c = cs.config;
  check_precoders(c, P);
  check_subspaces(c, S);

  CostTerms out;
  for (int k = 0; k < c.K; ++k)
    for (int l = 0; l < c.K; ++l) {
      if (l == k) continue;
      out.j1 += residual_outside(S.U[k], cs.H(k, l) * P.F[l]);
    }
  for (int l = 0; l < c.K; ++l)
    out.j2 += residual_outside(S.U_eaves, cs.H(c.K, l) * P.F[l]);
  out.j = v == Variant::Wslm ? out.j1 + out.j2 : out.j1;
  return out;
}

PrecoderSet update_precoders(const ChannelSet& cs, const SubspaceSet& S, Variant v) {
  check_shapes(cs);
  const SystemConfig& c = cs.config;
  check_subspaces(c, S);

  const double scale = std::sqrt(c.Pt / c.d);
  PrecoderSet out;
  out.F.reserve(c.K);
  for (int l = 0; l < c.K; ++l) {
    CMat Q = CMat::Zero(c.Nt, c.Nt);
    for (int k = 0; k < c.K; ++k) {
      if (k == l) continue;
      const CMat& H = cs.H(k, l);
      CMat HU = H.adjoint() * S.U[k];
      Q += H.adjoint() * H - HU * HU.adjoint();
    }
    if (v == Variant::Wslm) {
      const CMat& He = cs.H(c.K, l);
      CMat HU = He.adjoint() * S.U_eaves;
      Q += He.adjoint() * He - HU * HU.adjoint();
    }
    out.F.push_back(scale * select_eigvecs(Q, c.d, EigSelect::Smallest));
  }
  return out;
}

std::vector<CMat> update_rx_subspaces(const ChannelSet& cs, const PrecoderSet& P) {
  check_shapes(cs);
  const SystemConfig& c = cs.config;
  check_precoders(c, P);

  std::vector<CMat> out;
  out.reserve(c.K);
  for (int k = 0; k < c.K; ++k) {
    CMat G = CMat::Zero(c.Nr, c.Nr);
    for (int l = 0; l < c.K; ++l) {
      if (l == k) continue;
      CMat HF = cs.H(k, l) * P.F[l];
      G += HF * HF.adjoint();
    }
    out.push_back(select_eigvecs(G, c.Nr - c.d, EigSelect::Dominant));
  }
  return out;
}

CMat update_eaves_subspace(const ChannelSet& cs, const PrecoderSet& P) {
  check_shapes(cs);
  const SystemConfig& c = cs.config;
  check_precoders(c, P);

  CMat G = CMat::Zero(c.Nre, c.Nre);
  for (int l = 0; l < c.K; ++l) {
    CMat HF = cs.H(c.K, l) * P.F[l];
    G += HF * HF.adjoint();
  }
  return select_eigvecs(G, c.d, EigSelect::Dominant);
}

IASolution solve(const ChannelSet& cs, std::uint64_t seed, Variant v, const SolverOptions& opts) {
  check_shapes(cs);
  const SystemConfig& c = cs.config;
  if (opts.kappa_max < 1)
    throw std::invalid_argument("solver options: kappa_max must be >= 1 (got " +
                                std::to_string(opts.kappa_max) + ")");
  if (!(opts.cost_epsilon >= 0.0))
    throw std::invalid_argument("solver options: cost_epsilon must be >= 0");
  if (!(opts.delta_tolerance >= 0.0))
    throw std::invalid_argument("solver options: delta_tolerance must be >= 0");

  IASolution sol;
  sol.variant = v;

  auto rng = make_rng(seed);
  const double scale = std::sqrt(c.Pt / c.d);
  sol.precoders.F.reserve(c.K);
  for (int l = 0; l < c.K; ++l) sol.precoders.F.push_back(scale * random_orthonormal(c.Nt, c.d, rng));

  sol.subspaces.U = update_rx_subspaces(cs, sol.precoders);
  sol.subspaces.U_eaves = update_eaves_subspace(cs, sol.precoders);

  CostTerms cost = cost_total(cs, sol.precoders, sol.subspaces, v);
  sol.cost_trajectory.push_back(cost.j);

  while (sol.iterations < opts.kappa_max) {
    sol.precoders = update_precoders(cs, sol.subspaces, v);
    sol.subspaces.U = update_rx_subspaces(cs, sol.precoders);
    sol.subspaces.U_eaves = update_eaves_subspace(cs, sol.precoders);
    cost = cost_total(cs, sol.precoders, sol.subspaces, v);

    const double prev = sol.cost_trajectory.back();
    sol.cost_trajectory.push_back(cost.j);
    ++sol.iterations;
    if (cost.j <= opts.cost_epsilon || std::abs(prev - cost.j) <= opts.delta_tolerance) {
      sol.converged = true;
      break;
    }
  }
  return sol;
}

std::vector<CMat> compute_receive_filters(const SubspaceSet& S) {
  std::vector<CMat> out;
  out.reserve(S.U.size());
  for (const CMat& U : S.U) out.push_back(orthonormal_complement(U));
  return out;
}

IAConditionReport check_ia_conditions(const ChannelSet& cs, const IASolution& sol, double tol) {
  check_shapes(cs);
  const SystemConfig& c = cs.config;
  check_precoders(c, sol.precoders);
  check_subspaces(c, sol.subspaces);

  IAConditionReport rep;
  rep.rank_ok.resize(c.K, false);
  rep.imli_residual = Eigen::MatrixXd::Zero(c.K, c.K);
  rep.eaves_residual.resize(c.K, 0.0);

  const std::vector<CMat> W = compute_receive_filters(sol.subspaces);
  for (int k = 0; k < c.K; ++k) {
    CMat D = W[k].adjoint() * cs.H(k, k) * sol.precoders.F[k];
    Eigen::JacobiSVD<CMat> svd(D);
    const auto& sv = svd.singularValues();
    rep.rank_ok[k] = sv(c.d - 1) > tol * sv(0);
    for (int l = 0; l < c.K; ++l) {
      if (l == k) continue;
      rep.imli_residual(k, l) = (W[k].adjoint() * cs.H(k, l) * sol.precoders.F[l]).norm();
    }
  }

  // Nre == d leaves no complement at the eavesdropper; residuals stay zero.
  CMat We = orthonormal_complement(sol.subspaces.U_eaves);
  if (We.cols() > 0)
    for (int l = 0; l < c.K; ++l)
      rep.eaves_residual[l] = (We.adjoint() * cs.H(c.K, l) * sol.precoders.F[l]).norm();
  return rep;
}

namespace {

nlohmann::json matrix_to_json(const CMat& M) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      data.push_back({M(i, j).real(), M(i, j).imag()});
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"data", std::move(data)}};
}

}  // namespace

nlohmann::json solution_to_json(const IASolution& sol) {
  nlohmann::json j;
  j["variant"] = to_string(sol.variant);
  j["iterations"] = sol.iterations;
  j["converged"] = sol.converged;
  j["final_cost"] = sol.final_cost();
  j["cost_trajectory"] = sol.cost_trajectory;
  j["precoders"] = nlohmann::json::array();
  for (const CMat& F : sol.precoders.F) j["precoders"].push_back(matrix_to_json(F));
  j["rx_subspaces"] = nlohmann::json::array();
  for (const CMat& U : sol.subspaces.U) j["rx_subspaces"].push_back(matrix_to_json(U));
  j["eaves_subspace"] = matrix_to_json(sol.subspaces.U_eaves);
  return j;
}

void save_solution(const IASolution& sol, const std::filesystem::path& path) {
  atomic_write_text(path, solution_to_json(sol).dump(2) + "\n");
}

}  // namespace wslm
