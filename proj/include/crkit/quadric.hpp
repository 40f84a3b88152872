#pragma once

// Quadric models Re w_j = z^* A_j z, j = 1..d, and the matrix machinery that
// decides D(a)-nondegeneracy and invertibility of the 1-jet map of stationary
// discs: the small solution X of P X^2 + A X + P^* = 0, the Stein series
// K_j = sum_r (X^*)^r A_j X^r, and the derivative series for dX/dRe a_s.

#include "crkit/numerics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crkit::quadric {

using numerics::CMatrix;
using numerics::CVector;
using numerics::RMatrix;
using numerics::RVector;
using numerics::ToleranceConfig;

struct QuadricModel {
  int n = 0;
  int d = 0;
  std::vector<CMatrix> A;
  /// Non-fatal findings, e.g. R-linear dependence of the A_j.
  std::vector<std::string> warnings;

  /// Throws InvariantViolation (naming j, row, col) when some A_j is not
  /// Hermitian within hermitian_tol.
  static QuadricModel make(std::vector<CMatrix> matrices, double hermitian_tol = 1e-12);
};

struct JetParameters {
  RVector b;
  CVector a;
  CVector V;

  /// sum_j a_j A_j
  CMatrix P(const QuadricModel& model) const;
  /// sum_j (b_j - a_j - conj(a_j)) A_j
  CMatrix A(const QuadricModel& model) const;
  void check_dimensions(const QuadricModel& model) const;
};

struct SmallSolution {
  CMatrix X;
  double residual = 0;
  std::uint32_t iterations = 0;
  double norm = 0;
};

/// Fixed-point iteration X <- -A^{-1}(P X^2 + P^*). Requires A invertible
/// (SingularA) and 4 ||A^{-1}P|| ||A^{-1}P^*|| < 1 (NoContraction); throws
/// NormTooLarge if the limit has ||X|| >= 1 - 1e-9.
SmallSolution solve_small_X(const QuadricModel& model, const JetParameters& params,
                            const ToleranceConfig& cfg = {});
/// Same iteration from an arbitrary starting matrix.
SmallSolution solve_small_X(const QuadricModel& model, const JetParameters& params,
                            const ToleranceConfig& cfg, const CMatrix& start);

double equation_residual(const QuadricModel& model, const JetParameters& params, const CMatrix& X);

/// K_j for the 0-based index j.
CMatrix stein_K(const QuadricModel& model, const CMatrix& X, int j, const ToleranceConfig& cfg = {});

/// dX/dRe a_s for the 0-based index s, summed from the Neumann-type series.
CMatrix diff_X_re_a(const QuadricModel& model, const JetParameters& params, const CMatrix& X, int s,
                    const ToleranceConfig& cfg = {});

/// Re sum_r V^* (X^*)^r A_j A^{-1} A_s X^r V, a real d x d matrix.
RMatrix da_matrix(const QuadricModel& model, const JetParameters& params, const CMatrix& X,
                  const ToleranceConfig& cfg = {});

/// Re sum_r V^* (I - X^*)^2 (X^*)^r K_j X_s X^r V with X_s = dX/dRe a_s.
/// The Jacobian of jet1_middle in Re a equals -2 times this.
RMatrix jet_jacobian_block(const QuadricModel& model, const JetParameters& params, const CMatrix& X,
                           const std::vector<CMatrix>& K, const std::vector<CMatrix>& dX,
                           const ToleranceConfig& cfg = {});

/// Components (V')^* K_j V' with V' = (I - X) V.
RVector jet1_middle(const QuadricModel& model, const JetParameters& params,
                    const ToleranceConfig& cfg = {});

struct OrbitSpan {
  int real_dim = 0;
  int complex_dim = 0;
  /// Orthonormal (for Re<u, v>) basis of the real span, as complex columns.
  CMatrix real_basis;
};

/// Krylov span of {V, XV, X^2V, ...} over R (inside C^n = R^2n) and over C.
OrbitSpan orbit_span(const CMatrix& X, const CVector& V, const ToleranceConfig& cfg = {});

/// Compressions B^* A_j B by the given orbit basis are R-linearly independent.
bool stationary_minimal(const QuadricModel& model, const CMatrix& orbit_basis,
                        const ToleranceConfig& cfg = {});
bool stationary_minimal(const QuadricModel& model, const CMatrix& X, const CVector& V,
                        const ToleranceConfig& cfg = {});

struct LeviNondegeneracySearch {
  std::optional<RVector> b;
  /// Set when nothing was found: absence is only evidence, not proof.
  bool probabilistic = false;
  int draws = 0;
};

LeviNondegeneracySearch strong_levi_nondegenerate(const QuadricModel& model, std::uint64_t seed = 0,
                                                  int draws = 200);

struct PseudoconvexSearch {
  std::optional<RVector> b;
  RVector best_b;
  double best_lambda_min = 0;
  int restarts = 0;
};

/// Maximises lambda_min(sum b_j A_j) over the unit sphere by seeded restarts
/// and coordinate ascent with step halving. Reports a certificate only when
/// the best value exceeds rank_tol.
PseudoconvexSearch strongly_pseudoconvex_search(const QuadricModel& model, int restarts,
                                                std::uint64_t seed = 0, const ToleranceConfig& cfg = {});

enum class DNondegeneracyOutcome { Found, DimensionObstruction, NotFound };

struct DNondegeneracy {
  DNondegeneracyOutcome outcome = DNondegeneracyOutcome::NotFound;
  std::optional<CVector> V;
  RMatrix matrix;  // the matrix for the returned V, if any
  int trials = 0;
};

/// Matrix Re(D^* (sum b_j A_j)^{-1} D), D = [A_1 V, ..., A_d V].
RMatrix d_matrix(const QuadricModel& model, const RVector& b, const CVector& V);

DNondegeneracy d_nondegenerate(const QuadricModel& model, const RVector& b, int trials = 200,
                               std::uint64_t seed = 0);

struct JetReport {
  SmallSolution X;
  std::vector<CMatrix> K;
  std::vector<CMatrix> dX;
  RMatrix da;
  RMatrix jet_block;
  OrbitSpan orbit;
  bool stationary_minimal = false;
  bool da_nondegenerate = false;
  bool jet_block_invertible = false;
  double da_determinant = 0;
  double jet_determinant = 0;
  double max_stein_residual = 0;
};

JetReport analyze_jet(const QuadricModel& model, const JetParameters& params, const ToleranceConfig& cfg = {});

}  // namespace crkit::quadric
