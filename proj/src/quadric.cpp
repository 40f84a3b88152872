#include "crkit/quadric.hpp"

#include "crkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace crkit::quadric {

using numerics::Complex;
using numerics::inverse_condition;
using numerics::spectral_norm;

namespace {

constexpr double kNormCeiling = 1.0 - 1e-9;

// Number of leading terms of a series whose r-th term is bounded by
// scale * ratio^r, so that the discarded tail is below cfg.series_tail_tol.
std::uint32_t terms_needed(double scale, double ratio, const ToleranceConfig& cfg, const char* what) {
  if (scale == 0.0 || ratio == 0.0) return 1;
  if (!(ratio < 1.0)) {
    throw Error(ErrorCode::Diverged, std::string(what) + ": decay ratio " + std::to_string(ratio) + " >= 1");
  }
  const double target = cfg.series_tail_tol * (1.0 - ratio) / scale;
  if (target >= 1.0) return 1;
  const double r = std::ceil(std::log(target) / std::log(ratio));
  if (r > cfg.max_iterations) {
    throw Error(ErrorCode::Diverged, std::string(what) + ": needs more than max_iterations terms");
  }
  return static_cast<std::uint32_t>(std::max(1.0, r));
}

CMatrix checked_inverse(const CMatrix& A) {
  if (A.rows() == 0 || inverse_condition(A) <= numerics::kInvertibilityThreshold) {
    throw Error(ErrorCode::SingularA, "sum_j (b_j - a_j - conj a_j) A_j is singular");
  }
  return A.fullPivLu().inverse();
}

void check_index(const QuadricModel& model, int j) {
  if (j < 0 || j >= model.d) throw Error(ErrorCode::InvalidArgument, "matrix index out of range");
}

void check_small(const CMatrix& X) {
  if (!(spectral_norm(X) < 1.0)) {
    throw Error(ErrorCode::Diverged, "series needs ||X|| < 1");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

QuadricModel QuadricModel::make(std::vector<CMatrix> matrices, double hermitian_tol) {
  if (matrices.empty()) throw Error(ErrorCode::InvariantViolation, "need at least one matrix");
  const auto n = matrices.front().rows();
  for (std::size_t j = 0; j < matrices.size(); ++j) {
    const CMatrix& M = matrices[j];
    if (M.rows() != n || M.cols() != n) {
      throw Error(ErrorCode::InvariantViolation, "matrix " + std::to_string(j + 1) + " is not n x n");
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        if (!std::isfinite(M(r, c).real()) || !std::isfinite(M(r, c).imag())) {
          throw Error(ErrorCode::InvariantViolation, "non-finite entry");
        }
        if (std::abs(M(r, c) - std::conj(M(c, r))) > hermitian_tol) {
          throw Error(ErrorCode::InvariantViolation,
                      "matrix " + std::to_string(j + 1) + " is not Hermitian at (" + std::to_string(r + 1) +
                          ", " + std::to_string(c + 1) + ")");
        }
      }
    }
  }
  QuadricModel model;
  model.n = static_cast<int>(n);
  model.d = static_cast<int>(matrices.size());
  model.A = std::move(matrices);

  RMatrix stacked(2 * n * n, model.d);
  for (int j = 0; j < model.d; ++j) {
    const CMatrix& M = model.A[j];
    for (Eigen::Index k = 0; k < n * n; ++k) {
      stacked(k, j) = M(k % n, k / n).real();
      stacked(n * n + k, j) = M(k % n, k / n).imag();
    }
  }
  if (numerics::rank_with_tol(stacked, 1e-9) < model.d) {
    model.warnings.emplace_back("the matrices A_j are R-linearly dependent");
  }
  return model;
}

void JetParameters::check_dimensions(const QuadricModel& model) const {
  if (b.size() != model.d || a.size() != model.d) {
    throw Error(ErrorCode::InvalidArgument, "b and a must have d entries");
  }
  if (V.size() != model.n) throw Error(ErrorCode::InvalidArgument, "V must have n entries");
}

CMatrix JetParameters::P(const QuadricModel& model) const {
  CMatrix out = CMatrix::Zero(model.n, model.n);
  for (int j = 0; j < model.d; ++j) out += a(j) * model.A[j];
  return out;
}

CMatrix JetParameters::A(const QuadricModel& model) const {
  CMatrix out = CMatrix::Zero(model.n, model.n);
  for (int j = 0; j < model.d; ++j) out += (b(j) - 2.0 * a(j).real()) * model.A[j];
  return out;
}

double equation_residual(const QuadricModel& model, const JetParameters& params, const CMatrix& X) {
  const CMatrix P = params.P(model);
  return spectral_norm(CMatrix(P * X * X + params.A(model) * X + P.adjoint()));
}

SmallSolution solve_small_X(const QuadricModel& model, const JetParameters& params, const ToleranceConfig& cfg) {
  return solve_small_X(model, params, cfg, CMatrix::Zero(model.n, model.n));
}

SmallSolution solve_small_X(const QuadricModel& model, const JetParameters& params, const ToleranceConfig& cfg,
                            const CMatrix& start) {
  cfg.validate();
  params.check_dimensions(model);
  const CMatrix A = params.A(model);
  const CMatrix P = params.P(model);
  const CMatrix Ainv = checked_inverse(A);
  const CMatrix AinvP = Ainv * P;
  const CMatrix AinvPstar = Ainv * P.adjoint();
  const double margin = 2.0 * spectral_norm(AinvP) * spectral_norm(AinvPstar);
  if (!(margin < 0.5)) {
    throw Error(ErrorCode::NoContraction,
                "2 ||A^-1 P|| ||A^-1 P^*|| = " + std::to_string(margin) + " is not below 1/2");
  }

  SmallSolution sol;
  CMatrix X = start;
  const double eps = std::numeric_limits<double>::epsilon();
  double prev_step = std::numeric_limits<double>::infinity();
  int stalls = 0;
  for (std::uint32_t it = 1; it <= cfg.max_iterations; ++it) {
    CMatrix next = -(AinvP * X * X + AinvPstar);
    const double step = (next - X).norm();
    X = std::move(next);
    sol.iterations = it;
    if (step <= 4 * eps * (1.0 + X.norm())) break;
    stalls = step >= prev_step ? stalls + 1 : 0;
    if (stalls >= 5) break;
    prev_step = step;
    if (it == cfg.max_iterations) {
      throw Error(ErrorCode::Diverged, "fixed-point iteration did not settle within max_iterations");
    }
  }
  sol.X = X;
  sol.residual = spectral_norm(CMatrix(P * X * X + A * X + P.adjoint()));
  sol.norm = spectral_norm(X);
  if (sol.residual > cfg.residual_tol * std::max(1.0, spectral_norm(A))) {
    throw Error(ErrorCode::Diverged, "residual " + std::to_string(sol.residual) + " above residual_tol");
  }
  if (sol.norm >= kNormCeiling) {
    throw Error(ErrorCode::NormTooLarge, "||X|| = " + std::to_string(sol.norm));
  }
  return sol;
}

CMatrix stein_K(const QuadricModel& model, const CMatrix& X, int j, const ToleranceConfig& cfg) {
  check_index(model, j);
  check_small(X);
  const double q = spectral_norm(X);
  const std::uint32_t terms = terms_needed(spectral_norm(model.A[j]), q * q, cfg, "stein_K");
  const CMatrix Xs = X.adjoint();
  CMatrix term = model.A[j];
  CMatrix K = term;
  for (std::uint32_t r = 1; r < terms; ++r) {
    term = Xs * term * X;
    K += term;
  }
  return (K + K.adjoint()) / 2.0;
}

CMatrix diff_X_re_a(const QuadricModel& model, const JetParameters& params, const CMatrix& X, int s,
                    const ToleranceConfig& cfg) {
  check_index(model, s);
  check_small(X);
  const int n = model.n;
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix Ainv = checked_inverse(params.A(model));
  const CMatrix AinvP = Ainv * params.P(model);
  const CMatrix M = numerics::solve_linear(I + AinvP * X, I, cfg.rank_tol);
  const CMatrix G = M * AinvP;
  const CMatrix IX = I - X;
  const CMatrix H = M * Ainv * model.A[s] * IX * IX;
  const std::uint32_t terms =
      terms_needed(spectral_norm(H), spectral_norm(G) * spectral_norm(X), cfg, "diff_X_re_a");
  // term_r = (-1)^(r+1) G^r H X^r
  CMatrix term = -H;
  CMatrix sum = term;
  for (std::uint32_t r = 1; r < terms; ++r) {
    term = -(G * term * X);
    sum += term;
  }
  return sum;
}

RMatrix da_matrix(const QuadricModel& model, const JetParameters& params, const CMatrix& X,
                  const ToleranceConfig& cfg) {
  params.check_dimensions(model);
  check_small(X);
  const CMatrix Ainv = checked_inverse(params.A(model));
  double a_scale = 0;
  for (const auto& Aj : model.A) a_scale += std::pow(spectral_norm(Aj), 2);
  const double q = spectral_norm(X);
  const std::uint32_t terms =
      terms_needed(model.d * a_scale * spectral_norm(Ainv) * params.V.squaredNorm(), q * q, cfg, "da_matrix");
  CMatrix sum = CMatrix::Zero(model.d, model.d);
  CVector y = params.V;
  CMatrix D(model.n, model.d);
  for (std::uint32_t r = 0; r < terms; ++r) {
    for (int j = 0; j < model.d; ++j) D.col(j) = model.A[j] * y;
    sum += D.adjoint() * Ainv * D;
    y = X * y;
  }
  return sum.real();
}

RMatrix jet_jacobian_block(const QuadricModel& model, const JetParameters& params, const CMatrix& X,
                           const std::vector<CMatrix>& K, const std::vector<CMatrix>& dX,
                           const ToleranceConfig& cfg) {
  params.check_dimensions(model);
  check_small(X);
  if (static_cast<int>(K.size()) != model.d || static_cast<int>(dX.size()) != model.d) {
    throw Error(ErrorCode::InvalidArgument, "need d matrices K_j and d derivatives");
  }
  const int n = model.n;
  const CMatrix IX = CMatrix::Identity(n, n) - X;
  CVector u = IX * IX * params.V;  // X^r (I - X)^2 V
  CVector y = params.V;            // X^r V
  double k_max = 0;
  double dx_max = 0;
  for (int j = 0; j < model.d; ++j) {
    k_max = std::max(k_max, spectral_norm(K[j]));
    dx_max = std::max(dx_max, spectral_norm(dX[j]));
  }
  const double q = spectral_norm(X);
  const std::uint32_t terms =
      terms_needed(model.d * u.norm() * y.norm() * k_max * dx_max, q * q, cfg, "jet_jacobian_block");
  CMatrix sum = CMatrix::Zero(model.d, model.d);
  CMatrix left(model.d, n);
  CMatrix right(n, model.d);
  for (std::uint32_t r = 0; r < terms; ++r) {
    for (int j = 0; j < model.d; ++j) left.row(j) = u.adjoint() * K[j];
    for (int s = 0; s < model.d; ++s) right.col(s) = dX[s] * y;
    sum += left * right;
    u = X * u;
    y = X * y;
  }
  return sum.real();
}

RVector jet1_middle(const QuadricModel& model, const JetParameters& params, const ToleranceConfig& cfg) {
  const SmallSolution sol = solve_small_X(model, params, cfg);
  const CVector W = (CMatrix::Identity(model.n, model.n) - sol.X) * params.V;
  RVector out(model.d);
  for (int j = 0; j < model.d; ++j) {
    out(j) = (W.adjoint() * stein_K(model, sol.X, j, cfg) * W)(0, 0).real();
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Grows an orthonormal basis of the Krylov space of X and V. With real_span the
// inner product is Re<u, v>, i.e. C^n is treated as R^2n.
CMatrix krylov_basis(const CMatrix& X, const CVector& V, bool real_span, double tol) {
  const int n = static_cast<int>(V.size());
  const int max_dim = real_span ? 2 * n : n;
  std::vector<CVector> basis;
  auto inner = [&](const CVector& a, const CVector& b) -> Complex {
    const Complex ip = a.dot(b);  // conj(a)^T b
    return real_span ? Complex(ip.real(), 0.0) : ip;
  };
  const double vn = V.norm();
  if (vn == 0.0) return CMatrix(n, 0);
  basis.push_back(V / vn);
  while (static_cast<int>(basis.size()) < max_dim) {
    CVector w = X * basis.back();
    const double wn = w.norm();
    if (wn == 0.0) break;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) w -= inner(q, w) * q;
    }
    if (w.norm() <= tol * wn) break;
    basis.push_back(w / w.norm());
  }
  CMatrix out(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = basis[k];
  return out;
}

}  // namespace

OrbitSpan orbit_span(const CMatrix& X, const CVector& V, const ToleranceConfig& cfg) {
  OrbitSpan out;
  out.real_basis = krylov_basis(X, V, true, cfg.rank_tol);
  out.real_dim = static_cast<int>(out.real_basis.cols());
  out.complex_dim = static_cast<int>(krylov_basis(X, V, false, cfg.rank_tol).cols());
  return out;
}

bool stationary_minimal(const QuadricModel& model, const CMatrix& orbit_basis, const ToleranceConfig& cfg) {
  const auto k = orbit_basis.cols();
  if (k == 0) return false;
  RMatrix stacked(2 * k * k, model.d);
  for (int j = 0; j < model.d; ++j) {
    const CMatrix M = orbit_basis.adjoint() * model.A[j] * orbit_basis;
    for (Eigen::Index e = 0; e < k * k; ++e) {
      stacked(e, j) = M(e % k, e / k).real();
      stacked(k * k + e, j) = M(e % k, e / k).imag();
    }
  }
  return numerics::rank_with_tol(stacked, cfg.rank_tol) == model.d;
}

bool stationary_minimal(const QuadricModel& model, const CMatrix& X, const CVector& V, const ToleranceConfig& cfg) {
  return stationary_minimal(model, orbit_span(X, V, cfg).real_basis, cfg);
}

// ---------------------------------------------------------------------------

namespace {

CMatrix combination(const QuadricModel& model, const RVector& b) {
  CMatrix out = CMatrix::Zero(model.n, model.n);
  for (int j = 0; j < model.d; ++j) out += b(j) * model.A[j];
  return out;
}

RVector random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RVector b(d);
  do {
    for (int j = 0; j < d; ++j) b(j) = normal(rng);
  } while (b.norm() == 0.0);
  return b / b.norm();
}

}  // namespace

LeviNondegeneracySearch strong_levi_nondegenerate(const QuadricModel& model, std::uint64_t seed, int draws) {
  LeviNondegeneracySearch out;
  auto accept = [&](const RVector& b) {
    ++out.draws;
    if (inverse_condition(combination(model, b)) > numerics::kInvertibilityThreshold) {
      out.b = b;
      return true;
    }
    return false;
  };
  for (int j = 0; j < model.d; ++j) {
    if (accept(RVector::Unit(model.d, j))) return out;
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < draws; ++k) {
    if (accept(random_unit(rng, model.d))) return out;
  }
  out.probabilistic = true;
  return out;
}

PseudoconvexSearch strongly_pseudoconvex_search(const QuadricModel& model, int restarts, std::uint64_t seed,
                                                const ToleranceConfig& cfg) {
  if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  std::mt19937_64 rng(seed);
  auto objective = [&](const RVector& b) { return numerics::min_hermitian_eigenvalue(combination(model, b)); };

  PseudoconvexSearch out;
  out.best_lambda_min = -std::numeric_limits<double>::infinity();
  out.restarts = restarts;
  for (int restart = 0; restart < restarts; ++restart) {
    RVector b;
    if (restart < 2 * model.d) {
      b = RVector::Unit(model.d, restart / 2) * (restart % 2 == 0 ? 1.0 : -1.0);
    } else {
      b = random_unit(rng, model.d);
    }
    double value = objective(b);
    double step = 0.5;
    for (int it = 0; it < 100 && step > 1e-12; ++it) {
      bool improved = false;
      for (int j = 0; j < model.d; ++j) {
        for (double sign : {1.0, -1.0}) {
          RVector cand = b;
          cand(j) += sign * step;
          if (cand.norm() == 0.0) continue;
          cand /= cand.norm();
          const double v = objective(cand);
          if (v > value) {
            b = cand;
            value = v;
            improved = true;
          }
        }
      }
      if (!improved) step /= 2;
    }
    if (value > out.best_lambda_min) {
      out.best_lambda_min = value;
      out.best_b = b;
    }
  }
  if (out.best_lambda_min > cfg.rank_tol) out.b = out.best_b;
  return out;
}

RMatrix d_matrix(const QuadricModel& model, const RVector& b, const CVector& V) {
  const CMatrix Binv = checked_inverse(combination(model, b));
  CMatrix D(model.n, model.d);
  for (int j = 0; j < model.d; ++j) D.col(j) = model.A[j] * V;
  return (D.adjoint() * Binv * D).real();
}

DNondegeneracy d_nondegenerate(const QuadricModel& model, const RVector& b, int trials, std::uint64_t seed) {
  if (b.size() != model.d) throw Error(ErrorCode::InvalidArgument, "b must have d entries");
  DNondegeneracy out;
  if (model.d > 2 * model.n) {
    out.outcome = DNondegeneracyOutcome::DimensionObstruction;
    return out;
  }
  checked_inverse(combination(model, b));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    CVector V(model.n);
    for (int k = 0; k < model.n; ++k) V(k) = Complex(normal(rng), normal(rng));
    ++out.trials;
    RMatrix M = d_matrix(model, b, V);
    if (numerics::is_invertible(M)) {
      out.outcome = DNondegeneracyOutcome::Found;
      out.V = V;
      out.matrix = std::move(M);
      return out;
    }
  }
  out.outcome = DNondegeneracyOutcome::NotFound;
  return out;
}

JetReport analyze_jet(const QuadricModel& model, const JetParameters& params, const ToleranceConfig& cfg) {
  JetReport rep;
  rep.X = solve_small_X(model, params, cfg);
  const CMatrix& X = rep.X.X;
  for (int j = 0; j < model.d; ++j) {
    rep.K.push_back(stein_K(model, X, j, cfg));
    const double res = spectral_norm(CMatrix(rep.K[j] - X.adjoint() * rep.K[j] * X - model.A[j]));
    rep.max_stein_residual = std::max(rep.max_stein_residual, res);
    rep.dX.push_back(diff_X_re_a(model, params, X, j, cfg));
  }
  rep.da = da_matrix(model, params, X, cfg);
  rep.jet_block = jet_jacobian_block(model, params, X, rep.K, rep.dX, cfg);
  rep.orbit = orbit_span(X, params.V, cfg);
  rep.stationary_minimal = stationary_minimal(model, rep.orbit.real_basis, cfg);
  rep.da_determinant = rep.da.fullPivLu().determinant();
  rep.jet_determinant = rep.jet_block.fullPivLu().determinant();
  rep.da_nondegenerate = numerics::is_invertible(rep.da);
  rep.jet_block_invertible = numerics::is_invertible(rep.jet_block);
  return rep;
}

}  // namespace crkit::quadric
