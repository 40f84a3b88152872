#pragma once

// Dense complex linear algebra shared by the quadric and model analyses.
// Everything here is a pure function of its arguments; no hidden state.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace crkit::numerics {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

struct ToleranceConfig {
  double residual_tol = 1e-12;
  double rank_tol = 1e-9;
  double series_tail_tol = 1e-14;
  std::uint32_t max_iterations = 10000;

  /// Throws InvalidArgument unless every tolerance is positive and
  /// max_iterations >= 1.
  void validate() const;
};

/// Largest singular value.
double spectral_norm(const CMatrix& m);
double spectral_norm(const RMatrix& m);

/// Smallest singular value divided by the largest (0 for the zero matrix).
double inverse_condition(const CMatrix& m);
double inverse_condition(const RMatrix& m);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // column k pairs with values[k]
};

/// Throws NotHermitian when ||m - m^*|| exceeds residual_tol.
HermitianEigen hermitian_eigen(const CMatrix& m, double residual_tol = 1e-12);

/// Smallest eigenvalue of the Hermitian part of m, without eigenvectors.
double min_hermitian_eigenvalue(const CMatrix& m);

/// Number of singular values above tol * sigma_max; 0 for the zero matrix.
int rank_with_tol(const CMatrix& m, double tol);
int rank_with_tol(const RMatrix& m, double tol);

/// Solves m x = rhs. Throws Singular when sigma_min <= rank_tol * sigma_max.
CMatrix solve_linear(const CMatrix& m, const CMatrix& rhs, double rank_tol = 1e-9);

/// Orthonormal basis (as columns) of the numerical nullspace of m.
RMatrix real_nullspace(const RMatrix& m, double tol);

/// Real-linear view of complex vectors: stacks real parts over imaginary parts.
RVector realify(const CVector& v);

/// "Invertible" in the sense used for every d x d verdict matrix.
inline constexpr double kInvertibilityThreshold = 1e-8;
bool is_invertible(const RMatrix& m, double threshold = kInvertibilityThreshold);

}  // namespace crkit::numerics
