#include "crkit/errors.hpp"
#include "crkit/fixtures.hpp"
#include "crkit/quadric.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace crkit;
using namespace crkit::quadric;
using numerics::Complex;

namespace {

const Complex I(0, 1);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

CMatrix hermitian(std::mt19937_64& rng, int n) {
  const CMatrix g = testing::random_complex(rng, n, n);
  return (g + g.adjoint()) / 2.0;
}

struct RandomCase {
  QuadricModel model;
  JetParameters params;
};

// A random quadric with b chosen so that A is well conditioned and a shrunk
// until the contraction precondition holds.
RandomCase random_case(std::mt19937_64& rng, int n, int d) {
  std::vector<CMatrix> A;
  for (int j = 0; j < d; ++j) A.push_back(hermitian(rng, n));
  A[0] += 3.0 * CMatrix::Identity(n, n);
  RandomCase c{QuadricModel::make(A), {}};
  c.params.b = RVector::Zero(d);
  c.params.b(0) = 1;
  c.params.a = 0.3 * testing::random_complex(rng, d, 1);
  c.params.V = testing::random_complex(rng, n, 1);
  for (int k = 0; k < 40; ++k) {
    try {
      solve_small_X(c.model, c.params);
      break;
    } catch (const Error&) {
      c.params.a *= 0.5;
    }
  }
  return c;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("quadric") {
  TEST_CASE("loading validates hermitian matrices") {
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 1) = 0.5;
    try {
      QuadricModel::make({CMatrix::Identity(2, 2), bad});
      FAIL("accepted a non-Hermitian matrix");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvariantViolation);
      CHECK(std::string(e.what()).find("matrix 2 is not Hermitian at (1, 2)") != std::string::npos);
    }
    const auto dup = QuadricModel::make({CMatrix::Identity(2, 2), 2.0 * CMatrix::Identity(2, 2)});
    CHECK(dup.warnings.size() == 1);
  }

  TEST_CASE("small solution examples") {
    const auto model = fixtures::c10_model();
    auto params = fixtures::c10_params(0.2);
    params.a.setZero();
    CHECK(solve_small_X(model, params).X.norm() == 0.0);

    for (double eps : {0.05, 0.1, 0.2}) {
      const auto one = QuadricModel::make({CMatrix::Identity(1, 1)});
      JetParameters p{RVector::Ones(1), CVector::Constant(1, eps), CVector::Ones(1)};
      const auto s = solve_small_X(one, p);
      // small root of eps x^2 + (1 - 2 eps) x + eps = 0
      const double B = 1 - 2 * eps;
      const double root = -2 * eps / (B + std::sqrt(B * B - 4 * eps * eps));
      CHECK(std::abs(s.X(0, 0) - root) < 1e-13);
    }

    const auto s = solve_small_X(model, fixtures::c10_params(0.2));
    CHECK(std::abs(s.X(0, 0) + 0.5) < 1e-12);
    CHECK(std::abs(s.X(1, 1)) < 1e-12);
    CHECK(std::abs(s.X(2, 2) - (std::sqrt(21.0) - 5) / 2) < 1e-12);
  }

  TEST_CASE("solver errors") {
    const auto model = fixtures::c10_model();
    auto params = fixtures::c10_params(0.2);
    params.b.setZero();
    params.a.setZero();
    CHECK(code_of([&] { solve_small_X(model, params); }) == ErrorCode::SingularA);
    params = fixtures::c10_params(0.2);
    params.a *= 3.0;
    params.b(0) = 1 + 2 * params.a(0).real();
    params.b(1) = 2 * params.a(1).real();
    CHECK(code_of([&] { solve_small_X(model, params); }) == ErrorCode::NoContraction);
    params = fixtures::c10_params(0.2);
    params.V = CVector::Ones(2);
    CHECK(code_of([&] { params.check_dimensions(model); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("stein series examples") {
    const auto model = fixtures::c10_model();
    for (int j = 0; j < 7; ++j) CHECK((stein_K(model, CMatrix::Zero(3, 3), j) - model.A[j]).norm() == 0.0);
    const auto X = solve_small_X(model, fixtures::c10_params(0.2)).X;
    const double al = -0.5, ga = (std::sqrt(21.0) - 5) / 2;
    CMatrix K1 = CMatrix::Zero(3, 3);
    K1(0, 0) = 1 / (1 - al * al);
    K1(1, 1) = 1;
    K1(2, 2) = -1 / (1 - ga * ga);
    CHECK(max_abs(stein_K(model, X, 0) - K1) < 1e-12);
    CMatrix K5 = CMatrix::Zero(3, 3);
    K5(0, 2) = I / (1 - al * ga);
    K5(2, 0) = -I / (1 - al * ga);
    CHECK(max_abs(stein_K(model, X, 4) - K5) < 1e-12);
  }

  TEST_CASE("derivative series examples") {
    const auto model = fixtures::c10_model();
    auto p0 = fixtures::c10_params(0.2);
    p0.a.setZero();
    const CMatrix A = p0.A(model);
    for (int s = 0; s < 7; ++s) {
      const CMatrix expect = -A.inverse() * model.A[s];
      CHECK(max_abs(diff_X_re_a(model, p0, CMatrix::Zero(3, 3), s) - expect) < 1e-14);
    }
    const double eps = 0.2, al = -0.5, ga = (std::sqrt(21.0) - 5) / 2;
    const auto params = fixtures::c10_params(eps);
    const auto X = solve_small_X(model, params).X;
    CMatrix d1 = CMatrix::Zero(3, 3);
    d1(0, 0) = -(1 - al) * (1 - al) / (1 + 4 * eps * al);
    d1(1, 1) = -1;
    d1(2, 2) = -(1 - ga) * (1 - ga) / (1 + 2 * eps * ga);
    CHECK(max_abs(diff_X_re_a(model, params, X, 0) - d1) < 1e-10);
    CMatrix d7 = CMatrix::Zero(3, 3);
    d7(0, 1) = -I / (1 + 2 * eps * al);
    d7(1, 0) = I * (1 - al) * (1 - al);
    CHECK(max_abs(diff_X_re_a(model, params, X, 6) - d7) < 1e-10);
  }

  TEST_CASE("nondegeneracy matrices at a = 0 collapse to one term") {
    const auto model = fixtures::c10_model();
    auto p = fixtures::c10_params(0.2);
    p.a.setZero();
    p.V << Complex(1, 0.5), Complex(-0.3, 0), Complex(0.2, 2);
    const CMatrix X = CMatrix::Zero(3, 3);
    const RMatrix da = da_matrix(model, p, X);
    CHECK(max_abs(da - d_matrix(model, p.b, p.V)) < 1e-13);
    std::vector<CMatrix> K, dX;
    for (int j = 0; j < 7; ++j) {
      K.push_back(stein_K(model, X, j));
      dX.push_back(diff_X_re_a(model, p, X, j));
    }
    CHECK(max_abs(jet_jacobian_block(model, p, X, K, dX) + da) < 1e-13);
    const RVector mid = jet1_middle(model, p);
    for (int j = 0; j < 7; ++j) {
      CHECK(std::abs(mid(j) - (p.V.adjoint() * model.A[j] * p.V)(0, 0).real()) < 1e-14);
    }
  }

  TEST_CASE("c10 blocks and the 1-jet map") {
    const auto model = fixtures::c10_model();
    const auto params = fixtures::c10_params(0.2);
    const auto cf = fixtures::c10_closed_forms(0.2);
    const auto rep = analyze_jet(model, params);
    CHECK(max_abs(rep.da.topLeftCorner(4, 4) - cf.B1) < 1e-10);
    CHECK(max_abs(rep.da.bottomRightCorner(3, 3) - cf.B2) < 1e-10);
    CHECK(max_abs(rep.jet_block.topLeftCorner(4, 4) - cf.C1) < 1e-8);
    CHECK(max_abs(rep.jet_block.bottomRightCorner(3, 3) - cf.C2) < 1e-8);
    CHECK(rep.da_nondegenerate);
    CHECK(rep.jet_block_invertible);
    const double al = cf.alpha, ga = cf.gamma;
    const double j1 = (1 - al) * (1 - al) / (1 - al * al) + 1 - (1 - ga) * (1 - ga) / (1 - ga * ga);
    CHECK(std::abs(jet1_middle(model, params)(0) - j1) < 1e-12);
  }

  TEST_CASE("orbit span examples") {
    const CVector V = CVector::Ones(3);
    auto o = orbit_span(CMatrix::Zero(3, 3), V);
    CHECK(o.real_dim == 1);
    CHECK(o.complex_dim == 1);
    const auto X = solve_small_X(fixtures::c10_model(), fixtures::c10_params(0.2)).X;
    o = orbit_span(X, V);
    CHECK(o.complex_dim == 3);
    CHECK(o.real_dim == 3);
    CMatrix Y = CMatrix::Zero(2, 2);
    Y(0, 0) = Complex(0, 0.3);
    o = orbit_span(Y, CVector::Ones(2));
    CHECK(o.real_dim == 3);
    CHECK(o.complex_dim == 2);
  }

  TEST_CASE("stationary minimality examples") {
    const auto model = fixtures::c10_model();
    const auto X = solve_small_X(model, fixtures::c10_params(0.2)).X;
    CHECK(stationary_minimal(model, X, CVector::Ones(3)));
    CMatrix e1 = CMatrix::Zero(2, 2), e2 = CMatrix::Zero(2, 2);
    e1(0, 0) = 1;
    e2(1, 1) = 1;
    const auto diag = QuadricModel::make({e1, e2});
    CHECK(!stationary_minimal(diag, CMatrix::Zero(2, 2), CVector::Unit(2, 0)));
  }

  TEST_CASE("levi nondegeneracy and pseudoconvexity searches") {
    const auto model = fixtures::c10_model();
    const auto levi = strong_levi_nondegenerate(model, 0);
    REQUIRE(levi.b);
    CHECK((*levi.b - RVector::Unit(7, 0)).norm() == 0.0);
    CHECK(!strong_levi_nondegenerate(QuadricModel::make({CMatrix::Zero(2, 2)})).b);
    CMatrix e1 = CMatrix::Zero(2, 2), e2 = CMatrix::Zero(2, 2);
    e1(0, 0) = 1;
    e2(1, 1) = 1;
    CHECK(strong_levi_nondegenerate(QuadricModel::make({e1, e2})).b);

    const auto pc = strongly_pseudoconvex_search(model, 50, 0);
    CHECK(!pc.b);
    CHECK(pc.best_lambda_min <= 1e-9);
    const auto id = strongly_pseudoconvex_search(QuadricModel::make({CMatrix::Identity(2, 2)}), 5, 0);
    REQUIRE(id.b);
    CHECK(std::abs(id.best_lambda_min - 1) < 1e-12);
    CMatrix ind = CMatrix::Identity(2, 2);
    ind(1, 1) = -1;
    CHECK(!strongly_pseudoconvex_search(QuadricModel::make({ind}), 5, 0).b);
  }

  TEST_CASE("D-nondegeneracy examples") {
    const auto model = fixtures::c10_model();
    const auto r = d_nondegenerate(model, RVector::Unit(7, 0));
    CHECK(r.outcome == DNondegeneracyOutcome::DimensionObstruction);
    CHECK(!r.V);
    const auto one = d_nondegenerate(QuadricModel::make({CMatrix::Identity(1, 1)}), RVector::Ones(1));
    CHECK(one.outcome == DNondegeneracyOutcome::Found);
    CHECK(code_of([&] { d_nondegenerate(QuadricModel::make({CMatrix::Zero(1, 1)}), RVector::Ones(1)); }) ==
          ErrorCode::SingularA);
  }

  TEST_CASE("property: solver fixed point and uniqueness") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
      const int n = testing::uniform_int(rng, 1, 4);
      const auto c = random_case(rng, n, testing::uniform_int(rng, 1, 4));
      const auto s = solve_small_X(c.model, c.params);
      CHECK(s.residual <= 1e-12);
      CHECK(equation_residual(c.model, c.params, s.X) <= 1e-12);
      CHECK(numerics::spectral_norm(s.X) < 1);
      const CMatrix A = c.params.A(c.model);
      const CMatrix start = -A.inverse() * c.params.P(c.model).adjoint();
      const auto s2 = solve_small_X(c.model, c.params, {}, start);
      CHECK(max_abs(s.X - s2.X) < 1e-10);
      for (int j = 0; j < c.model.d; ++j) {
        const CMatrix K = stein_K(c.model, s.X, j);
        CHECK((K - s.X.adjoint() * K * s.X - c.model.A[j]).norm() <= 1e-12 * std::max(1.0, K.norm()));
        CHECK((K - K.adjoint()).norm() <= 1e-12);
      }
    }
  }

  TEST_CASE("property: derivative and jacobian consistency on the c10 quadric") {
    const auto model = fixtures::c10_model();
    std::mt19937_64 rng(32);
    const double h = 1e-5;
    for (int t = 0; t < 50; ++t) {
      JetParameters p = fixtures::c10_params(0.05);
      p.a = 0.05 * testing::random_complex(rng, 7, 1);
      p.V = testing::random_complex(rng, 3, 1);
      const auto rep = analyze_jet(model, p);
      const int s = testing::uniform_int(rng, 0, 6);
      JetParameters plus = p, minus = p;
      plus.a(s) += h;
      minus.a(s) -= h;
      const CMatrix fd = (solve_small_X(model, plus).X - solve_small_X(model, minus).X) / (2 * h);
      CHECK(max_abs(fd - rep.dX[s]) <= 1e-6 * std::max(1.0, max_abs(rep.dX[s])));
      const RVector jfd = (jet1_middle(model, plus) - jet1_middle(model, minus)) / (2 * h);
      const RVector col = -2.0 * rep.jet_block.col(s);
      CHECK((jfd - col).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, col.cwiseAbs().maxCoeff()));
    }
  }

  TEST_CASE("property: stationary minimality ignores the choice of orbit basis") {
    std::mt19937_64 rng(33);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
      const int n = testing::uniform_int(rng, 2, 4);
      const auto c = random_case(rng, n, testing::uniform_int(rng, 1, 2 * n));
      const auto X = solve_small_X(c.model, c.params).X;
      const auto o = orbit_span(X, c.params.V);
      RMatrix T(o.real_dim, o.real_dim);
      for (Eigen::Index k = 0; k < T.size(); ++k) T(k) = g(rng);
      T += 3.0 * RMatrix::Identity(o.real_dim, o.real_dim);
      const CMatrix recombined = o.real_basis * T.cast<Complex>();
      CHECK(stationary_minimal(c.model, o.real_basis) == stationary_minimal(c.model, recombined));
    }
  }
}
