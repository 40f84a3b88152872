#include "crkit/errors.hpp"
#include "crkit/fixtures.hpp"
#include "crkit/model_lie.hpp"
#include "crkit/vector_field.hpp"
#include "support.hpp"

#include <doctest.h>

#include <functional>

using namespace crkit;
using namespace crkit::lie;
using poly::Exponent;
using poly::Variable;

namespace {

const GaussianRational I = GaussianRational::i();

HermPoly z(int n, int j) { return HermPoly::z(n, j); }
HermPoly zb(int n, int j) { return HermPoly::zbar(n, j); }
HermPoly abs2(int n, int j) { return poly::multiply(z(n, j), zb(n, j)); }

ModelHypersurface model_of(const HermPoly& q) { return ModelHypersurface::make(q); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

GradedVectorField linear_field(const std::vector<std::vector<GaussianRational>>& L) {
  const int n = static_cast<int>(L.size());
  auto Y = GradedVectorField::zero(n, 0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (!L[j][k].is_zero()) Y.f[j] = Y.f[j] + L[j][k] * z(n, k);
    }
  }
  return Y;
}

// The weight 1 - 1/m equation with the factor placement 2 sum(... + 2i Q(...)),
// i.e. 4i in front of Q once expanded.
HermPoly item5_verbatim_residual(const HermPoly& Q, const GradedVectorField& Z) {
  const int n = Q.n();
  HermPoly lhs(n), inner(n);
  for (int j = 0; j < n; ++j) {
    const HermPoly qz = poly::differentiate(Q, Variable::Z, j);
    const HermPoly qzb = poly::differentiate(Q, Variable::ZBar, j);
    lhs += poly::multiply(Z.f[j], qz) + poly::multiply(Z.f[j].conj(), qzb);
    inner += poly::multiply(Z.f_w[j], qz) - poly::multiply(Z.f_w[j].conj(), qzb);
  }
  lhs = GaussianRational(2) * (lhs + GaussianRational(0, 2) * poly::multiply(Q, inner));
  return lhs - poly::multiply(Q, Z.g1 + Z.g1.conj());
}

}  // namespace

TEST_SUITE("model_lie") {
  TEST_CASE("admissible weights") {
    const auto w = admissible_weights(4);
    REQUIRE(w.size() == 7);
    CHECK(w.front() == -1);
    CHECK(w[1] == Rational(-1, 4));
    CHECK(w[3] == Rational(1, 4));
    CHECK(w[4] == Rational(1, 2));
    CHECK(w[5] == Rational(3, 4));
    CHECK(w.back() == 1);
    CHECK(admissible_weights(2).size() == 5);
  }

  TEST_CASE("lewy components") {
    const auto lewy = fixtures::lewy_model();
    const std::vector<std::pair<Rational, int>> expect = {
        {-1, 1}, {Rational(-1, 2), 2}, {0, 2}, {Rational(1, 2), 2}, {1, 1}};
    for (const auto& [w, dim] : expect) {
      const auto c = graded_component(lewy, w);
      CHECK(c.real_dimension == dim);
      CHECK(testing::sampled_component_dimension(lewy.Q, 2, w) == dim);
      for (const auto& f : c.basis) CHECK(is_tangent(lewy.Q, f));
    }
    const auto top = graded_component(lewy, -1);
    REQUIRE(top.basis.size() == 1);
    CHECK(top.basis[0].g0.is_homogeneous(0));
    CHECK(!top.basis[0].g0.is_zero());
    CHECK(code_of([&] { graded_component(lewy, Rational(1, 3)); }) == ErrorCode::BadWeight);
  }

  TEST_CASE("weight -1 is always spanned by d/dw") {
    for (const auto& m : {fixtures::octic1_model(), fixtures::octic2_model(), fixtures::chain_model()}) {
      const auto c = graded_component(m, -1);
      REQUIRE(c.real_dimension == 1);
      const auto& f = c.basis[0];
      for (const auto& fj : f.f) CHECK(fj.is_zero());
      CHECK(f.g0.is_homogeneous(0));
      CHECK(f.g0.coefficient(Exponent(2 * m.n, 0)).im() == 0);
    }
  }

  TEST_CASE("top degree component vanishes for the chain and octic models") {
    CHECK(graded_component(fixtures::chain_model(), 1).real_dimension == 0);
    CHECK(graded_component(fixtures::octic1_model(), 1).real_dimension == 0);
    CHECK(graded_component(fixtures::octic2_model(), 1).real_dimension == 0);
  }

  TEST_CASE("the weight 1 - 1/m equation with 4i yields non-tangent fields") {
    const auto lewy = fixtures::lewy_model();
    const auto c = graded_component(lewy, Rational(1, 2));
    bool verbatim_fails = false;
    for (const auto& f : c.basis) {
      CHECK(is_tangent(lewy.Q, f));
      verbatim_fails = verbatim_fails || !item5_verbatim_residual(lewy.Q, f).is_zero();
    }
    CHECK(verbatim_fails);
  }

  TEST_CASE("lewy brackets close") {
    const auto comps = all_components(fixtures::lewy_model());
    for (const auto& a : comps) {
      for (const auto& b : comps) {
        const Rational sum = a.weight + b.weight;
        for (const auto& x : a.basis) {
          for (const auto& y : b.basis) {
            const auto br = lie_bracket(x, y);
            if (sum < -1 || sum > 1) {
              CHECK(br.is_zero());
              continue;
            }
            const auto it = std::find_if(comps.begin(), comps.end(), [&](const auto& c) { return c.weight == sum; });
            if (it == comps.end()) {
              CHECK(br.is_zero());
            } else {
              CHECK(in_real_span(br, it->basis));
            }
          }
        }
      }
    }
  }

  TEST_CASE("rigid rotations") {
    const auto lewy = rigid_rotations(fixtures::lewy_model());
    REQUIRE(lewy.size() == 1);
    CHECK(lewy[0].f[0] == GaussianRational(lewy[0].f[0].coefficient({1, 0})) * z(1, 0));
    CHECK(lewy[0].f[0].coefficient({1, 0}).re() == 0);
    CHECK(rigid_rotations(model_of(abs2(2, 0) + abs2(2, 1))).size() == 4);
    // Sum of cubes with an unbalanced cross term: no rigid symmetry survives.
    const HermPoly q = poly::multiply(poly::multiply(z(2, 0), z(2, 0)), zb(2, 0)) +
                       poly::multiply(poly::multiply(z(2, 1), z(2, 1)), zb(2, 1)) +
                       poly::multiply(poly::multiply(z(2, 0), z(2, 1)), zb(2, 1));
    const auto generic = model_of(q + q.conj());
    CHECK(rigid_rotations(generic).empty());
    CHECK(testing::sampled_component_dimension(generic.Q, 3, 0) == 1);
  }

  TEST_CASE("rotation classification examples") {
    auto r = classify_rotation(linear_field({{I}}));
    CHECK(r.imaginary_diagonal_present);
    CHECK(!r.real_diagonal_present);
    CHECK(!r.nilpotent_present);
    r = classify_rotation(linear_field({{1, 0}, {0, -1}}));
    CHECK(r.real_diagonal_present);
    CHECK(!r.nilpotent_present);
    r = classify_rotation(linear_field({{0, 1}, {0, 0}}));
    CHECK(r.nilpotent_present);
    CHECK(!r.real_diagonal_present);
    CHECK(!r.imaginary_diagonal_present);
    r = classify_rotation(linear_field({{GaussianRational(2) + I, 1}, {0, GaussianRational(2) + I}}));
    CHECK((r.real_diag_part + r.imag_diag_part + r.nilpotent_part - r.linear_map).norm() < 1e-10);
    CHECK((r.nilpotent_part * r.nilpotent_part).norm() < 1e-8);
    CHECK(r.real_diagonal_present);
    CHECK(r.imaginary_diagonal_present);
    CHECK(r.nilpotent_present);
    auto w = linear_field({{1}});
    w.f[0] = poly::multiply(z(1, 0), z(1, 0));
    CHECK(code_of([&] { classify_rotation(w); }) == ErrorCode::PreconditionViolation);
  }

  TEST_CASE("holomorphic nondegeneracy examples") {
    const auto deg = holomorphically_nondegenerate(model_of(abs2(2, 0)));
    CHECK(!deg.nondegenerate);
    REQUIRE(deg.witness);
    CHECK(deg.witness->f[0].is_zero());
    CHECK(!deg.witness->f[1].is_zero());
    CHECK(holomorphically_nondegenerate(fixtures::octic2_model()).nondegenerate);
    const HermPoly mixed = poly::multiply(z(2, 0), zb(2, 1)) + poly::multiply(z(2, 1), zb(2, 0));
    CHECK(holomorphically_nondegenerate(model_of(mixed), 3).nondegenerate);
  }

  TEST_CASE("levi form examples") {
    auto L = levi_form(abs2(1, 0));
    CHECK(L[0][0] == HermPoly::constant(1, 1));
    const HermPoly P = fixtures::chain_P(), R = fixtures::chain_R();
    L = levi_form(poly::multiply(P, R.conj()) + poly::multiply(R, P.conj()));
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) {
        const HermPoly pi = poly::differentiate(P, Variable::Z, i), ri = poly::differentiate(R, Variable::Z, i);
        const HermPoly pk = poly::differentiate(P, Variable::Z, k), rk = poly::differentiate(R, Variable::Z, k);
        CHECK(L[i][k] == poly::multiply(pi, rk.conj()) + poly::multiply(ri, pk.conj()));
      }
    }
  }

  TEST_CASE("pseudoconvexity scan examples") {
    const HermPoly q4 = poly::power(abs2(2, 0), 2);
    const HermPoly r4 = poly::power(abs2(2, 1), 2);
    CHECK(!pseudoconvexity_scan(model_of(q4 + r4), 2000, 0).witness_found);
    const auto neg = pseudoconvexity_scan(model_of(q4 - r4), 2000, 0);
    REQUIRE(neg.witness_found);
    CHECK(neg.lambda_min < 0);
    CHECK(pseudoconvexity_scan(fixtures::chain_model(), 10000, 0).witness_found);
  }

  TEST_CASE("levi determinant identity examples") {
    CHECK(levi_determinant_identity_check(z(2, 0), z(2, 1)));
    CHECK(levi_determinant_identity_check(fixtures::chain_P(), fixtures::chain_R()));
  }

  TEST_CASE("sum of squares examples") {
    const auto s = sos_decompose(abs2(2, 0) + abs2(2, 1));
    CHECK(s.psd);
    CHECK(s.verified);
    CHECK(s.factors.size() == 2);
    CHECK(s.reconstruction_error <= 1e-10);
    const HermPoly mixed = poly::multiply(z(2, 0), zb(2, 1)) + poly::multiply(z(2, 1), zb(2, 0));
    const auto t = sos_decompose(mixed);
    CHECK(!t.psd);
    CHECK(t.min_eigenvalue < 0);
    CHECK(code_of([&] { sos_decompose(fixtures::octic2_model().Q); }) == ErrorCode::NotBihomogeneous);
  }

  TEST_CASE("chain verification") {
    const auto model = fixtures::chain_model();
    auto spec = fixtures::chain_spec();
    const auto v = verify_chain(model, spec);
    CHECK(v.ok);
    CHECK(v.decomposition_residual_terms == 0);
    spec.c[0] = spec.c[0] * GaussianRational(2);
    const auto bad = verify_chain(model, spec);
    CHECK(!bad.ok);
    CHECK(!bad.u_relations);

    ChainSpec lone{GradedVectorField::zero(2, 0), {z(2, 0)}, {z(2, 0)}, {}, {}};
    const auto q = model_of(abs2(2, 0) + abs2(2, 1));
    CHECK(code_of([&] { verify_chain(q, lone); }) == ErrorCode::PreconditionViolation);
    spec = fixtures::chain_spec();
    spec.V.pop_back();
    CHECK(code_of([&] { verify_chain(model, spec); }) == ErrorCode::LengthMismatch);
  }

  TEST_CASE("annihilator examples") {
    auto raise = GradedVectorField::zero(2, 0);
    raise.f[1] = z(2, 0);
    CHECK(annihilator_dimension(raise, 2) == 1);
    CHECK(annihilator_dimension(fixtures::chain_field(), 9) == 1);
    auto euler = GradedVectorField::zero(2, 0);
    euler.f[0] = z(2, 0);
    CHECK(code_of([&] { annihilator_dimension(euler, 2); }) == ErrorCode::PreconditionViolation);
  }

  TEST_CASE("property: circular models have no intermediate components") {
    for (int k = 2; k <= 4; ++k) {
      const auto model = model_of(poly::power(abs2(1, 0), k));
      const int m = 2 * k;
      CHECK(graded_component(model, 1).real_dimension > 0);
      for (const auto& r : rigid_rotations(model)) CHECK(!classify_rotation(r).real_diagonal_present);
      int total = 0;
      for (const auto& c : all_components(model)) {
        total += c.real_dimension;
        CHECK(c.real_dimension == testing::sampled_component_dimension(model.Q, m, c.weight));
        if (c.weight > 0 && c.weight < 1 - Rational(1, m)) CHECK(c.real_dimension == 0);
      }
      CHECK(total == 4);
    }
  }

  TEST_CASE("property: exact components agree with the sampled oracle") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 12; ++t) {
      // Real, balanced-degree models Re(F conj G) + |z1|^2k, n = 2.
      const int k = testing::uniform_int(rng, 1, 2);
      const HermPoly F = testing::random_holo(rng, 2, k, 2);
      const HermPoly G = testing::random_holo(rng, 2, k, 2);
      const HermPoly q = poly::multiply(F, G.conj()) + poly::multiply(G, F.conj()) + poly::power(abs2(2, 0), k);
      if (q.has_pluriharmonic_terms() || q.is_zero()) continue;
      const auto model = model_of(q);
      for (const auto& c : all_components(model)) {
        for (const auto& f : c.basis) CHECK(is_tangent(q, f));
        CHECK(c.real_dimension == testing::sampled_component_dimension(q, model.m, c.weight));
      }
    }
  }
}
