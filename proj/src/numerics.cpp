#include "crkit/numerics.hpp"

#include "crkit/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace crkit::numerics {

void ToleranceConfig::validate() const {
  if (!(residual_tol > 0) || !(rank_tol > 0) || !(series_tail_tol > 0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
  }
}

namespace {

template <typename M>
auto singular_values(const M& m) {
  Eigen::JacobiSVD<M> svd(m);
  return svd.singularValues();
}

template <typename M>
int rank_impl(const M& m, double tol) {
  if (m.size() == 0) return 0;
  const auto sv = singular_values(m);
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  if (top == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol * top) ++r;
  }
  return r;
}

template <typename M>
double inverse_condition_impl(const M& m) {
  if (m.size() == 0) return 0.0;
  const auto sv = singular_values(m);
  if (sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

}  // namespace

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double spectral_norm(const RMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double inverse_condition(const CMatrix& m) { return inverse_condition_impl(m); }
double inverse_condition(const RMatrix& m) { return inverse_condition_impl(m); }

HermitianEigen hermitian_eigen(const CMatrix& m, double residual_tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidArgument, "hermitian_eigen needs a square matrix");
  }
  const double defect = m.size() ? spectral_norm(CMatrix(m - m.adjoint())) : 0.0;
  if (defect > residual_tol) {
    throw Error(ErrorCode::NotHermitian,
                "||m - m^*|| = " + std::to_string(defect) + " exceeds tolerance");
  }
  const CMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  const CMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

int rank_with_tol(const CMatrix& m, double tol) { return rank_impl(m, tol); }
int rank_with_tol(const RMatrix& m, double tol) { return rank_impl(m, tol); }

CMatrix solve_linear(const CMatrix& m, const CMatrix& rhs, double rank_tol) {
  if (m.rows() != m.cols() || m.rows() != rhs.rows()) {
    throw Error(ErrorCode::InvalidArgument, "solve_linear: dimension mismatch");
  }
  if (inverse_condition(m) <= rank_tol) {
    throw Error(ErrorCode::Singular, "matrix is numerically singular");
  }
  return m.fullPivLu().solve(rhs);
}

RMatrix real_nullspace(const RMatrix& m, double tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0 || m.norm() == 0.0) {
    return RMatrix::Identity(cols, cols);
  }
  Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol * top) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

RVector realify(const CVector& v) {
  RVector out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

bool is_invertible(const RMatrix& m, double threshold) {
  return m.rows() == m.cols() && inverse_condition(m) > threshold;
}

}  // namespace crkit::numerics
