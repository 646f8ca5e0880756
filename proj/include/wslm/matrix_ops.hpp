#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

namespace wslm {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Project-wide numerical tolerances. Orthonormality is checked in Frobenius
// norm; decompositions are checked relative to 1 + ||A||_F.
inline constexpr double kOrthoTol = 1e-10;
inline constexpr double kDecompRelTol = 1e-9;

/// Full spectrum of a Hermitian matrix. Eigenvalues are sorted ascending and
/// column j of `vectors` pairs with `values[j]`.
struct EigenPairs {
  RVec values;
  CMat vectors;
};

enum class EigSelect { Smallest, Dominant };

/// Hermitian eigendecomposition with a fixed phase convention: the
/// largest-magnitude entry of each eigenvector is made real and positive
/// (first such entry on ties), so identical inputs give identical output.
/// The input is symmetrized as (A + A^H)/2 before factorization.
/// Throws std::invalid_argument for non-square or non-Hermitian input.
EigenPairs hermitian_eig(const CMat& A);

/// n x m matrix whose orthonormal columns span the invariant subspace of the
/// m smallest (or m largest) eigenvalues of Hermitian A.
CMat select_eigvecs(const CMat& A, int m, EigSelect mode);

/// P = I - U U^H for U with orthonormal columns. P is Hermitian, idempotent,
/// and annihilates U.
CMat complement_projector(const CMat& U);

/// Orthonormal basis of the orthogonal complement of span(U): n x (n - m)
/// for an n x m input. Returns an n x 0 matrix when U is square.
CMat orthonormal_complement(const CMat& U);

/// Natural-log determinant of a Hermitian positive definite matrix via
/// Cholesky factorization. Throws std::runtime_error if the factorization
/// fails (matrix not positive definite).
double logdet_psd(const CMat& M);

/// n x m complex matrix with orthonormal columns, drawn from the given
/// generator (Gaussian fill followed by QR with a fixed phase convention).
CMat random_orthonormal(int n, int m, std::mt19937_64& rng);

/// True when ||U^H U - I||_F <= tol.
bool is_orthonormal(const CMat& U, double tol = kOrthoTol);

}  // namespace wslm
