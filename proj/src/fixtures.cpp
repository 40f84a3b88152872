#include "crkit/fixtures.hpp"

#include "crkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace crkit::fixtures {

using numerics::CMatrix;
using numerics::Complex;
using numerics::RMatrix;
using poly::GaussianRational;
using poly::HermPoly;
using poly::Rational;

namespace {

constexpr Complex kI{0.0, 1.0};

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

class CaseBuilder {
 public:
  CaseBuilder(std::string name, std::string description) {
    c_.name = std::move(name);
    c_.description = std::move(description);
  }

  void near(std::string name, double value, double expected, double tol, std::string source,
            std::string oracle = "") {
    add(std::move(name), value, expected, tol, Comparison::Near, std::move(source), std::move(oracle));
  }
  void at_most(std::string name, double value, double bound, std::string source, std::string oracle = "") {
    add(std::move(name), value, bound, 0, Comparison::AtMost, std::move(source), std::move(oracle));
  }
  void greater(std::string name, double value, double bound, std::string source, std::string oracle = "") {
    add(std::move(name), value, bound, 0, Comparison::Greater, std::move(source), std::move(oracle));
  }
  void equal(std::string name, double value, double expected, std::string source, std::string oracle = "") {
    add(std::move(name), value, expected, 0, Comparison::Equal, std::move(source), std::move(oracle));
  }
  /// Records a failed check when a computation throws instead of returning.
  template <typename F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      Check c;
      c.name = name + " [" + e.what() + "]";
      c.value = std::nan("");
      c.source = "elementary";
      c.pass = false;
      c_.checks.push_back(std::move(c));
    }
  }

  FixtureCase take() { return std::move(c_); }

 private:
  void add(std::string name, double value, double expected, double tol, Comparison cmp, std::string source,
           std::string oracle) {
    Check c{std::move(name), value, expected, tol, cmp, std::move(source), std::move(oracle), false};
    switch (cmp) {
      case Comparison::Near:
        c.pass = std::abs(value - expected) <= tol;
        break;
      case Comparison::Greater:
        c.pass = value > expected;
        break;
      case Comparison::AtMost:
        c.pass = value <= expected;
        break;
      case Comparison::Equal:
        c.pass = value == expected;
        break;
    }
    c_.checks.push_back(std::move(c));
  }

  FixtureCase c_;
};

HermPoly zz(int n, int j) { return HermPoly::z(n, j); }
HermPoly zb(int n, int j) { return HermPoly::zbar(n, j); }

std::string weight_label(const Rational& w) { return w.get_str(); }

}  // namespace

bool FixtureCase::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

// ---------------------------------------------------------------------------
// c10

quadric::QuadricModel c10_model() {
  std::vector<CMatrix> A(7, CMatrix::Zero(3, 3));
  A[0].diagonal() << 1, 1, -1;
  A[1].diagonal() << 1, -1, 0;
  A[2](1, 2) = A[2](2, 1) = 1;
  A[3](0, 1) = A[3](1, 0) = 1;
  A[4](0, 2) = kI;
  A[4](2, 0) = -kI;
  A[5](1, 2) = kI;
  A[5](2, 1) = -kI;
  A[6](0, 1) = kI;
  A[6](1, 0) = -kI;
  return quadric::QuadricModel::make(std::move(A));
}

quadric::JetParameters c10_params(double eps) {
  quadric::JetParameters p;
  p.b = numerics::RVector::Zero(7);
  p.b(0) = 1 + 2 * eps;
  p.b(1) = 2 * eps;
  p.a = numerics::CVector::Zero(7);
  p.a(0) = eps;
  p.a(1) = eps;
  p.V = numerics::CVector::Ones(3);
  return p;
}

C10ClosedForms c10_closed_forms(double e) {
  C10ClosedForms f;
  // Small roots by the cancellation-free form of the quadratic formula.
  const double a = -4 * e / (1 + std::sqrt(1 - 16 * e * e));
  const double g = -2 * e / (1 + std::sqrt(1 - 4 * e * e));
  f.alpha = a;
  f.gamma = g;
  f.X = CMatrix::Zero(3, 3);
  f.X.diagonal() << a, 0, g;

  auto M3 = [] { return CMatrix(CMatrix::Zero(3, 3)); };
  f.K.assign(7, M3());
  f.K[0].diagonal() << 1 / (1 - a * a), 1, -1 / (1 - g * g);
  f.K[1].diagonal() << 1 / (1 - a * a), -1, 0;
  f.K[2](1, 2) = f.K[2](2, 1) = 1;
  f.K[3](0, 1) = f.K[3](1, 0) = 1;
  f.K[4](0, 2) = kI / (1 - a * g);
  f.K[4](2, 0) = -kI / (1 - a * g);
  f.K[5](1, 2) = kI;
  f.K[5](2, 1) = -kI;
  f.K[6](0, 1) = kI;
  f.K[6](1, 0) = -kI;

  const double ua = (1 - a) * (1 - a);
  const double ug = (1 - g) * (1 - g);
  f.dX.assign(7, M3());
  f.dX[0].diagonal() << -ua / (1 + 4 * e * a), -1, -ug / (1 + 2 * e * g);
  f.dX[1].diagonal() << -ua / (1 + 4 * e * a), 1, 0;
  f.dX[2](1, 2) = -ug;
  f.dX[2](2, 1) = 1 / (1 + e * g);
  f.dX[3](0, 1) = -1 / (1 + 2 * e * a);
  f.dX[3](1, 0) = -ua;
  f.dX[4](0, 2) = -kI * ug / (1 + 2 * e * (a + g));
  f.dX[4](2, 0) = -kI * ua / (1 + e * (a + g));
  f.dX[5](1, 2) = -kI * ug;
  f.dX[5](2, 1) = -kI / (1 + e * g);
  f.dX[6](0, 1) = -kI / (1 + 2 * e * a);
  f.dX[6](1, 0) = kI * ua;

  const double ra = a * a / (1 - a * a);
  const double rg = g * g / (1 - g * g);
  const double rag = a * g / (1 - a * g);
  f.B1.resize(4, 4);
  f.B1 << 1 + ra - rg, ra, 2, 2,
          ra, 2 + ra, -1, 0,
          2, -1, rg, 1 + rag,
          2, 0, 1 + rag, 2 + ra;
  f.B2.resize(3, 3);
  f.B2 << 1 / (1 - g * g) - 1 / (1 - a * a), -1, 1,
          -1, -1 + 1 / (1 - g * g), -1 / (1 - a * g),
          1, -1 / (1 - a * g), 1 + 1 / (1 - a * a);

  const double s4 = (1 + 4 * e * a) * (1 + a) * (1 + a);
  f.C1.resize(4, 4);
  f.C1 << -1 - ua / s4 + ug / ((1 + g) * (1 + g) * (1 + 2 * e * g)), 1 - ua / s4, -2 * (1 - g) / (1 + g),
          -2 * (1 - a) / (1 + a),
          1 - ua / s4, -1 - ua / s4, ug, 4 * e * a * (1 - a) / ((1 + a) * (1 + 2 * e * a)),
          -2 * ug * (1 + e * g) / (1 + 2 * e * g), ug, 1 / (1 + e * g) - ug * (1 - g) / (1 + g),
          -ua * ug / (1 - a * g),
          -2 * ua * (1 + 2 * e * a) / (1 + 4 * e * a), 4 * ua * e * a / (1 + 4 * e * a), -ua * ug / (1 - a * g),
          -1 / (1 + 2 * e * a) - ua * (1 - a) / (1 + a);

  const double ta = ua * (1 - a) / (1 + a);
  const double tg = ug * (1 - g) / (1 + g);
  const double half = 1 + e * (a + g);
  const double full = 1 + 2 * e * (a + g);
  f.C2.resize(3, 3);
  f.C2 << (ta / half - tg / full) / (1 - a * g), ua / ((1 + e * g) * (1 - a * g)), -ug / ((1 - a * g) * (1 + 2 * e * a)),
          ua / half, 1 / (1 + e * g) - tg, ua * ug / (1 - a * g),
          -ug / full, ua * ug / (1 - a * g), -1 / (1 + 2 * e * a) - ta;
  f.C2_variant = f.C2;
  f.C2_variant(0, 0) = (ta - tg) / ((1 - a * g) * full);
  f.C2_variant(1, 0) = ua / full;
  return f;
}

FixtureCase run_c10(double eps) {
  CaseBuilder cb("c10", "codimension-7 quadric in C^10, eps = " + std::to_string(eps));
  const auto model = c10_model();
  const auto params = c10_params(eps);
  const auto cf = c10_closed_forms(eps);
  const numerics::ToleranceConfig cfg;
  const std::string qf = "quadratic formula for 2 eps x^2 + x + 2 eps = 0 and eps x^2 + x + eps = 0";

  cb.guarded("linear independence", [&] {
    RMatrix stacked(18, 7);
    for (int j = 0; j < 7; ++j) {
      for (int k = 0; k < 9; ++k) {
        stacked(k, j) = model.A[j](k % 3, k / 3).real();
        stacked(9 + k, j) = model.A[j](k % 3, k / 3).imag();
      }
    }
    cb.equal("rank of vectorized A_j", numerics::rank_with_tol(stacked, cfg.rank_tol), 7, "reference");
  });

  cb.guarded("jet analysis", [&] {
    const auto rep = quadric::analyze_jet(model, params, cfg);
    cb.near("X entries", max_abs(CMatrix(rep.X.X - cf.X)), 0, 1e-12, "oracle", qf);
    cb.at_most("X equation residual", rep.X.residual, 1e-12, "elementary");
    cb.near("spectral norm of X", rep.X.norm, std::max(std::abs(cf.alpha), std::abs(cf.gamma)), 1e-12, "oracle",
            qf);
    for (int j = 0; j < 7; ++j) {
      cb.near("K_" + std::to_string(j + 1), max_abs(CMatrix(rep.K[j] - cf.K[j])), 0, 1e-12, "reference");
    }
    cb.at_most("Stein residual", rep.max_stein_residual, 1e-12, "elementary");
    for (int s = 0; s < 7; ++s) {
      cb.near("dX/dRe a_" + std::to_string(s + 1), max_abs(CMatrix(rep.dX[s] - cf.dX[s])), 0, 1e-10, "reference");
    }
    const double h = 1e-5;
    for (int s = 0; s < 7; ++s) {
      auto plus = params;
      auto minus = params;
      plus.a(s) += h;
      minus.a(s) -= h;
      const CMatrix fd = (quadric::solve_small_X(model, plus, cfg).X - quadric::solve_small_X(model, minus, cfg).X) /
                         (2 * h);
      const double rel = max_abs(CMatrix(fd - rep.dX[s])) / std::max(1.0, max_abs(rep.dX[s]));
      cb.at_most("finite differences dX/dRe a_" + std::to_string(s + 1), rel, 1e-6, "oracle",
                 "central differences of the solver, step 1e-5");
    }

    RMatrix off_da = rep.da;
    off_da.topLeftCorner(4, 4).setZero();
    off_da.bottomRightCorner(3, 3).setZero();
    cb.near("Da block B1", max_abs(RMatrix(rep.da.topLeftCorner(4, 4) - cf.B1)), 0, 1e-10, "reference");
    cb.near("Da block B2", max_abs(RMatrix(rep.da.bottomRightCorner(3, 3) - cf.B2)), 0, 1e-10, "reference");
    cb.near("Da off-diagonal blocks", max_abs(off_da), 0, 1e-10, "reference");
    cb.greater("|det B1|", std::abs(RMatrix(rep.da.topLeftCorner(4, 4)).determinant()), 1e-6, "reference");
    cb.greater("|det B2|", std::abs(RMatrix(rep.da.bottomRightCorner(3, 3)).determinant()), 1e-6, "reference");
    cb.equal("Da nondegenerate", rep.da_nondegenerate, 1, "reference");

    const RMatrix C1 = rep.jet_block.topLeftCorner(4, 4);
    const RMatrix C2 = rep.jet_block.bottomRightCorner(3, 3);
    RMatrix off_c = rep.jet_block;
    off_c.topLeftCorner(4, 4).setZero();
    off_c.bottomRightCorner(3, 3).setZero();
    cb.near("jet block C1", max_abs(RMatrix(C1 - cf.C1)), 0, 1e-8, "reference");
    cb.near("jet block C2 (two denominators corrected)", max_abs(RMatrix(C2 - cf.C2)), 0, 1e-8, "oracle",
            "C2 with 1 + eps(alpha + gamma) on the alpha terms; confirmed by finite differences");
    cb.near("jet off-diagonal blocks", max_abs(off_c), 0, 1e-8, "reference");
    int variant_mismatch = 0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) variant_mismatch += std::abs(C2(r, c) - cf.C2_variant(r, c)) > 1e-8;
    }
    cb.equal("entries where the C2 variant differs", variant_mismatch, 2, "oracle",
             "entrywise comparison with the variant");
    cb.greater("|det C1|", std::abs(C1.determinant()), 1e-6, "reference");
    cb.greater("|det C2|", std::abs(C2.determinant()), 1e-6, "reference");
    cb.equal("jet block invertible", rep.jet_block_invertible, 1, "reference");

    RMatrix J(7, 7);
    for (int s = 0; s < 7; ++s) {
      auto plus = params;
      auto minus = params;
      plus.a(s) += h;
      minus.a(s) -= h;
      J.col(s) = (quadric::jet1_middle(model, plus, cfg) - quadric::jet1_middle(model, minus, cfg)) / (2 * h);
    }
    const RMatrix target = -2.0 * rep.jet_block;
    cb.at_most("finite differences of the 1-jet middle block", max_abs(RMatrix(J - target)) / max_abs(target), 1e-5,
               "oracle", "central differences of jet1_middle, step 1e-5");

    cb.equal("orbit complex dimension", rep.orbit.complex_dim, 3, "reference");
    cb.equal("orbit real dimension", rep.orbit.real_dim, 3, "oracle", "brute-force real rank of {V, XV, X^2 V}");
    cb.equal("stationary minimal", rep.stationary_minimal, 1, "oracle", "rank of vectorized compressions");
  });

  cb.guarded("searches", [&] {
    const auto levi = quadric::strong_levi_nondegenerate(model);
    cb.equal("strong Levi nondegeneracy with b = e1",
             levi.b.has_value() && (*levi.b - numerics::RVector::Unit(7, 0)).norm() == 0.0, 1, "reference");
    const auto dn = quadric::d_nondegenerate(model, numerics::RVector::Unit(7, 0));
    cb.equal("D-nondegeneracy ruled out by dimension (d > 2n)",
             dn.outcome == quadric::DNondegeneracyOutcome::DimensionObstruction, 1, "reference");
    const auto pc = quadric::strongly_pseudoconvex_search(model, 1000, 0, cfg);
    cb.at_most("best lambda_min over 1000 restarts", pc.best_lambda_min, 1e-9, "reference");
  });
  return cb.take();
}

// ---------------------------------------------------------------------------
// Polynomial models

poly::ModelHypersurface lewy_model() { return poly::ModelHypersurface::make(zz(1, 0) * zb(1, 0)); }

namespace {

HermPoly octic_part(int n) {
  const HermPoly r = zz(n, 0) * zb(n, 0);
  const HermPoly re = (zz(n, 0) + zb(n, 0)) * GaussianRational(Rational(1, 2));
  return poly::power(r, 4) + poly::power(r, 3) * re * re;
}

}  // namespace

poly::ModelHypersurface octic2_model() {
  return poly::ModelHypersurface::make(octic_part(2) + poly::power(zz(2, 1) * zb(2, 1), 4));
}

poly::ModelHypersurface octic1_model() { return poly::ModelHypersurface::make(octic_part(1)); }

HermPoly chain_P() {
  return GaussianRational::i() * (zz(2, 0) * zz(2, 0) * poly::power(zz(2, 1), 3) * (zz(2, 0) - zz(2, 1)));
}

HermPoly chain_R() {
  return GaussianRational(3) * (poly::power(zz(2, 0), 3) * poly::power(zz(2, 1), 5) * (zz(2, 0) - zz(2, 1)));
}

poly::ModelHypersurface chain_model() {
  const HermPoly P = chain_P();
  const HermPoly R = chain_R();
  return poly::ModelHypersurface::make(P * R.conj() + R * P.conj());
}

poly::GradedVectorField chain_field() {
  auto Y = poly::GradedVectorField::zero(2, Rational(1, 5));
  const HermPoly z1 = zz(2, 0);
  const HermPoly z2 = zz(2, 1);
  Y.f[0] = z1 * z2 * z2 * (GaussianRational(5) * z1 - GaussianRational(6) * z2);
  Y.f[1] = -(poly::power(z2, 3) * (GaussianRational(4) * z1 - GaussianRational(3) * z2));
  return Y;
}

lie::ChainSpec chain_spec() {
  lie::ChainSpec spec;
  spec.Y = chain_field();
  spec.U = {chain_P(), chain_R()};
  spec.V = spec.U;
  spec.c = {GaussianRational::i()};
  spec.d = {GaussianRational::i()};
  return spec;
}

FixtureCase run_lewy() {
  CaseBuilder cb("lewy", "Im w = |z|^2");
  cb.guarded("components", [&] {
    const auto model = lewy_model();
    const auto comps = lie::all_components(model);
    const std::vector<int> expected{1, 2, 2, 2, 1};
    int total = 0;
    int not_tangent = 0;
    cb.equal("number of weights", static_cast<double>(comps.size()), 5, "elementary");
    for (std::size_t k = 0; k < comps.size() && k < expected.size(); ++k) {
      cb.equal("dim g_" + weight_label(comps[k].weight), comps[k].real_dimension, expected[k], "oracle",
               "nullspace of the unrestricted weighted coefficient system");
      total += comps[k].real_dimension;
      for (const auto& Y : comps[k].basis) not_tangent += !poly::is_tangent(model.Q, Y);
    }
    cb.equal("total dimension", total, 8, "oracle", "nullspace of the unrestricted weighted coefficient system");
    cb.equal("weights strictly between 0 and 1 - 1/m", static_cast<double>(comps.size()) - 5, 0, "elementary");
    cb.equal("basis fields failing exact tangency", not_tangent, 0, "elementary");

    int bracket_failures = 0;
    for (const auto& ca : comps) {
      for (const auto& cb2 : comps) {
        for (const auto& X : ca.basis) {
          for (const auto& Y : cb2.basis) {
            try {
              const auto Z = poly::lie_bracket(X, Y);
              const auto target = std::find_if(comps.begin(), comps.end(),
                                               [&](const lie::GradedComponentBasis& c) { return c.weight == Z.weight; });
              const bool ok = target == comps.end() ? Z.is_zero() : poly::in_real_span(Z, target->basis);
              bracket_failures += !ok;
            } catch (const Error&) {
              ++bracket_failures;
            }
          }
        }
      }
    }
    cb.equal("brackets outside the computed algebra", bracket_failures, 0, "elementary");

    const auto rigid = lie::rigid_rotations(model);
    cb.equal("rigid rotations", static_cast<double>(rigid.size()), 1, "oracle", "nullspace with a = 0");
    if (!rigid.empty()) {
      const auto rc = lie::classify_rotation(rigid.front());
      cb.equal("rigid rotation is imaginary diagonal",
               rc.imaginary_diagonal_present && !rc.real_diagonal_present && !rc.nilpotent_present, 1, "elementary");
    }
  });
  return cb.take();
}

namespace {

void octic_checks(CaseBuilder& cb, const poly::ModelHypersurface& model) {
  const auto hn = lie::holomorphically_nondegenerate(model);
  cb.equal("holomorphically nondegenerate (degree bound m)", hn.nondegenerate, 1, "reference");
  cb.equal("dim g_1", lie::graded_component(model, 1).real_dimension, 0, "reference");
  const auto scan = lie::pseudoconvexity_scan(model, 10000, 0);
  cb.equal("negative Levi eigenvalue found in 10^4 samples", scan.witness_found, 0, "reference");
}

}  // namespace

FixtureCase run_octic2() {
  CaseBuilder cb("octic2", "Im w = |z1|^8 + |z1|^6 (Re z1)^2 + |z2|^8");
  cb.guarded("analysis", [&] {
    const auto model = octic2_model();
    octic_checks(cb, model);
    bool not_bihomogeneous = false;
    try {
      lie::sos_decompose(model.Q);
    } catch (const Error& e) {
      not_bihomogeneous = e.code() == ErrorCode::NotBihomogeneous;
    }
    cb.equal("sum of squares test rejects mixed bidegrees", not_bihomogeneous, 1, "elementary");
  });
  return cb.take();
}

FixtureCase run_octic1() {
  CaseBuilder cb("octic1", "Im w = |z|^8 + |z|^6 (Re z)^2");
  cb.guarded("analysis", [&] {
    const auto model = octic1_model();
    octic_checks(cb, model);
    // Levi form = Laplacian / 4 = r^6 (96 + 30 cos 2 theta) / 4 on this model.
    const auto L = lie::levi_form(model.Q);
    const double theta = 0.3;
    const double value = L[0][0].evaluate({std::polar(1.0, theta)}).real();
    cb.near("Levi form at e^{0.3i}", value, (96 + 30 * std::cos(2 * theta)) / 4, 1e-12, "oracle",
            "Laplacian in polar coordinates");
  });
  return cb.take();
}

FixtureCase run_chain() {
  CaseBuilder cb("chain", "single symmetric chain, Q = P conj(R) + R conj(P), m = 15");
  cb.guarded("analysis", [&] {
    const auto model = chain_model();
    const auto spec = chain_spec();
    const auto v = lie::verify_chain(model, spec);
    cb.equal("chain verified", v.ok, 1, "reference");
    cb.equal("decomposition residual terms", static_cast<double>(v.decomposition_residual_terms), 0, "reference");
    cb.equal("Y(P) = i R", poly::apply_field(spec.Y, chain_P()) == chain_R() * GaussianRational::i(), 1, "oracle",
             "exact expansion");
    cb.equal("Y(R) = 0", poly::apply_field(spec.Y, chain_R()).is_zero(), 1, "oracle", "exact expansion");
    cb.equal("model degree", model.m, 15, "elementary");
    const auto gc = lie::graded_component(model, Rational(1, 5));
    cb.equal("Y lies in g_{1/5}", poly::in_real_span(spec.Y, gc.basis), 1, "reference");
    cb.equal("dim g_1", lie::graded_component(model, 1).real_dimension, 0, "reference");
    cb.equal("annihilator dimension at degree 9", lie::annihilator_dimension(spec.Y, 9), 1, "oracle",
             "exact kernel of Y on degree-9 polynomials");
    cb.equal("Levi determinant identity", lie::levi_determinant_identity_check(chain_P(), chain_R()), 1, "oracle",
             "exact expansion");
    const auto scan = lie::pseudoconvexity_scan(model, 10000, 0);
    cb.equal("negative Levi eigenvalue found in 10^4 samples", scan.witness_found, 1, "reference");
  });
  return cb.take();
}

// ---------------------------------------------------------------------------

std::vector<std::string> fixture_names() { return {"c10", "lewy", "octic2", "octic1", "chain"}; }

std::vector<FixtureCase> run(const std::string& name, double eps, bool sweep) {
  const auto names = fixture_names();
  if (name != "all" && std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorCode::UnknownFixture, "no fixture named '" + name + "'");
  }
  std::vector<FixtureCase> out;
  auto want = [&](const std::string& n) { return name == "all" || name == n; };
  if (want("c10")) {
    if (sweep) {
      for (double e : eps_sweep()) out.push_back(run_c10(e));
    } else {
      out.push_back(run_c10(eps));
    }
  }
  if (want("lewy")) out.push_back(run_lewy());
  if (want("octic2")) out.push_back(run_octic2());
  if (want("octic1")) out.push_back(run_octic1());
  if (want("chain")) out.push_back(run_chain());
  return out;
}

nlohmann::json to_json(const std::vector<FixtureCase>& cases) {
  nlohmann::json out;
  out["cases"] = nlohmann::json::array();
  bool all = true;
  for (const auto& c : cases) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["description"] = c.description;
    jc["passed"] = c.passed();
    jc["checks"] = nlohmann::json::array();
    for (const auto& k : c.checks) {
      nlohmann::json jk;
      jk["name"] = k.name;
      jk["value"] = std::isfinite(k.value) ? nlohmann::json(k.value) : nlohmann::json(nullptr);
      jk["expected"] = k.expected;
      static const char* names[] = {"near", "greater", "at_most", "equal"};
      jk["comparison"] = names[static_cast<int>(k.comparison)];
      if (k.comparison == Comparison::Near) jk["tol"] = k.tol;
      jk["source"] = k.source;
      if (!k.oracle.empty()) jk["oracle"] = k.oracle;
      jk["pass"] = k.pass;
      jc["checks"].push_back(std::move(jk));
    }
    all = all && c.passed();
    out["cases"].push_back(std::move(jc));
  }
  out["passed"] = all;
  return out;
}

}  // namespace crkit::fixtures
