#include "wslm/matrix_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wslm {

namespace {

// Largest-magnitude entry of each column made real-positive. Ties go to the
// first such entry.
void fix_phases(CMat& V) {
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    Eigen::Index imax = 0;
    double amax = -1.0;
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
      double a = std::abs(V(i, j));
      if (a > amax) {
        amax = a;
        imax = i;
      }
    }
    if (amax > 0.0) {
      V.col(j) *= std::conj(V(imax, j)) / amax;
    }
  }
}

void require_square_hermitian(const CMat& A, const char* op) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument(std::string(op) + ": matrix must be square (got " +
                                std::to_string(A.rows()) + "x" + std::to_string(A.cols()) + ")");
  }
  double dev = (A - A.adjoint()).norm();
  if (dev > kDecompRelTol * (1.0 + A.norm())) {
    throw std::invalid_argument(std::string(op) + ": matrix is not Hermitian (||A - A^H||_F = " +
                                std::to_string(dev) + ")");
  }
}

}  // namespace

EigenPairs hermitian_eig(const CMat& A) {
  require_square_hermitian(A, "hermitian_eig");
  CMat S = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(S);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigendecomposition did not converge");
  }
  EigenPairs out{es.eigenvalues(), es.eigenvectors()};
  fix_phases(out.vectors);
  return out;
}

CMat select_eigvecs(const CMat& A, int m, EigSelect mode) {
  const Eigen::Index n = A.rows();
  if (m < 1 || m > n) {
    throw std::invalid_argument("select_eigvecs: need 1 <= m <= n, got m=" + std::to_string(m) +
                                ", n=" + std::to_string(n));
  }
  EigenPairs ep = hermitian_eig(A);
  return mode == EigSelect::Smallest ? ep.vectors.leftCols(m) : ep.vectors.rightCols(m);
}

CMat complement_projector(const CMat& U) {
  if (U.cols() > U.rows()) {
    throw std::invalid_argument("complement_projector: U has more columns than rows");
  }
  if (!is_orthonormal(U, kOrthoTol)) {
    throw std::invalid_argument("complement_projector: U does not have orthonormal columns");
  }
  const Eigen::Index n = U.rows();
  return CMat::Identity(n, n) - U * U.adjoint();
}

CMat orthonormal_complement(const CMat& U) {
  const Eigen::Index n = U.rows();
  const Eigen::Index m = U.cols();
  if (n == m) {
    if (!is_orthonormal(U, kOrthoTol)) {
      throw std::invalid_argument("orthonormal_complement: U does not have orthonormal columns");
    }
    return CMat(n, 0);
  }
  return select_eigvecs(complement_projector(U), static_cast<int>(n - m), EigSelect::Dominant);
}

double logdet_psd(const CMat& M) {
  require_square_hermitian(M, "logdet_psd");
  CMat S = 0.5 * (M + M.adjoint());
  Eigen::LLT<CMat> llt(S);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("logdet_psd: matrix is not positive definite");
  }
  double sum = 0.0;
  const auto& packed = llt.matrixLLT();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    sum += std::log(packed(i, i).real());
  }
  return 2.0 * sum;
}

CMat random_orthonormal(int n, int m, std::mt19937_64& rng) {
  if (n < 1 || m < 1 || m > n) {
    throw std::invalid_argument("random_orthonormal: need 1 <= m <= n, got n=" + std::to_string(n) +
                                ", m=" + std::to_string(m));
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat G(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      G(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<CMat> qr(G);
  CMat Q = qr.householderQ() * CMat::Identity(n, m);
  // Fix column phases so the implied R has a real-positive diagonal.
  for (int j = 0; j < m; ++j) {
    Complex r = qr.matrixQR()(j, j);
    double a = std::abs(r);
    if (a > 0.0) {
      Q.col(j) *= r / a;
    }
  }
  return Q;
}

bool is_orthonormal(const CMat& U, double tol) {
  const Eigen::Index m = U.cols();
  return (U.adjoint() * U - CMat::Identity(m, m)).norm() <= tol;
}

}  // namespace wslm
