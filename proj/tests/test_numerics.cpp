#include "crkit/errors.hpp"
#include "crkit/fixtures.hpp"
#include "crkit/numerics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace crkit;
using namespace crkit::numerics;

namespace {

CMatrix cdiag(std::initializer_list<Complex> d) {
  CVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (auto x : d) v(k++) = x;
  return v.asDiagonal();
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("spectral norm examples") {
    CHECK(spectral_norm(CMatrix(CMatrix::Identity(3, 3))) == doctest::Approx(1.0));
    CHECK(spectral_norm(cdiag({-0.5, 0.0, (std::sqrt(21.0) - 5) / 2})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(spectral_norm(CMatrix(CMatrix::Zero(2, 2))) == 0.0);
  }

  TEST_CASE("hermitian eigen examples") {
    auto e = hermitian_eigen(cdiag({1, 1, -1}));
    CHECK(e.values(0) == doctest::Approx(-1));
    CHECK(e.values(1) == doctest::Approx(1));
    CHECK(e.values(2) == doctest::Approx(1));
    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    e = hermitian_eigen(swap);
    CHECK(e.values(0) == doctest::Approx(-1));
    CHECK(e.values(1) == doctest::Approx(1));
    e = hermitian_eigen(fixtures::c10_model().A[0]);
    CHECK(e.values(0) == doctest::Approx(-1));
    CHECK(e.values(2) == doctest::Approx(1));
  }

  TEST_CASE("hermitian eigen rejects non-Hermitian input") {
    CMatrix m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_eigen(m), Error);
    try {
      hermitian_eigen(m);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotHermitian);
    }
  }

  TEST_CASE("rank examples") {
    CHECK(rank_with_tol(CMatrix(CMatrix::Identity(4, 4)), 1e-9) == 4);
    CVector v(3);
    v << Complex(1, 2), Complex(0, -1), 3.0;
    CHECK(rank_with_tol(CMatrix(v * v.adjoint()), 1e-9) == 1);
    CHECK(rank_with_tol(CMatrix(CMatrix::Zero(3, 3)), 1e-9) == 0);
    const auto model = fixtures::c10_model();
    CMatrix stacked(9, 7);
    for (int j = 0; j < 7; ++j) stacked.col(j) = model.A[j].reshaped();
    RMatrix real_stack(18, 7);
    real_stack << stacked.real(), stacked.imag();
    CHECK(rank_with_tol(real_stack, 1e-9) == 7);
  }

  TEST_CASE("solve_linear examples") {
    std::mt19937_64 rng(3);
    const CMatrix rhs = testing::random_complex(rng, 3, 2);
    CHECK((solve_linear(CMatrix::Identity(3, 3), rhs) - rhs).norm() < 1e-14);
    CVector e3 = CVector::Unit(3, 2);
    CHECK((solve_linear(cdiag({1, 1, -1}), e3) + e3).norm() < 1e-15);
    CVector b(3);
    b << 2, 1, 3;
    CHECK((solve_linear(cdiag({2, 1, 3}), b) - CVector::Ones(3)).norm() < 1e-15);
    CHECK_THROWS_AS(solve_linear(cdiag({1, 0}), CVector::Ones(2)), Error);
  }

  TEST_CASE("real nullspace examples") {
    CHECK(real_nullspace(RMatrix::Zero(2, 3), 1e-9).cols() == 3);
    CHECK(real_nullspace(RMatrix::Identity(3, 3), 1e-9).cols() == 0);
    RMatrix m(1, 2);
    m << 1, -1;
    const RMatrix ns = real_nullspace(m, 1e-9);
    REQUIRE(ns.cols() == 1);
    CHECK(std::abs(std::abs(ns(0, 0)) - 1 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(ns(0, 0) - ns(1, 0)) < 1e-12);
  }

  TEST_CASE("tolerance config validation") {
    ToleranceConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.rank_tol = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
  }

  TEST_CASE("property: eigen reconstruction") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
      const int n = testing::uniform_int(rng, 1, 6);
      const CMatrix g = testing::random_complex(rng, n, n);
      const CMatrix h = g + g.adjoint();
      const auto e = hermitian_eigen(h);
      const CMatrix rebuilt = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
      CHECK((rebuilt - h).norm() <= 1e-9 * h.norm());
      CHECK((e.vectors.adjoint() * e.vectors - CMatrix::Identity(n, n)).norm() < 1e-10);
      for (int k = 1; k < n; ++k) CHECK(e.values(k - 1) <= e.values(k));
    }
  }

  TEST_CASE("property: spectral norm is submultiplicative") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 50; ++t) {
      const CMatrix a = testing::random_complex(rng, 5, 5);
      const CMatrix b = testing::random_complex(rng, 5, 5);
      CHECK(spectral_norm(CMatrix(a * b)) <= spectral_norm(a) * spectral_norm(b) * (1 + 1e-12));
    }
  }

  TEST_CASE("property: rank is unitarily invariant") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
      const int n = 5;
      const int r = testing::uniform_int(rng, 0, n);
      const CMatrix m = testing::random_complex(rng, n, r) * testing::random_complex(rng, r, n);
      const CMatrix u = testing::random_unitary(rng, n);
      const CMatrix v = testing::random_unitary(rng, n);
      CHECK(rank_with_tol(m, 1e-9) == r);
      CHECK(rank_with_tol(CMatrix(u * m * v), 1e-9) == r);
    }
  }
}
