#include "crkit/model_lie.hpp"

#include "crkit/errors.hpp"
#include "crkit/exact_linalg.hpp"
#include "crkit/poly_json.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace crkit::lie {

using poly::EchelonBasis;
using poly::Exponent;
using poly::Variable;

namespace {

HermPoly holo(int n, const std::vector<int>& alpha, const GaussianRational& c = 1) {
  return HermPoly::holo_monomial(n, alpha, c);
}

// The coefficient template of one graded piece: each generator carries one
// real unknown, so a solution is a real combination of generators.
struct ComponentSystem {
  std::vector<GradedVectorField> generators;
  EchelonBasis<Rational> equations{0};
  int dilation_index = -1;  // generator holding the real w d/dw (or w^2 d/dw) scalar
};

ComponentSystem build_system(const ModelHypersurface& model, const Rational& mu) {
  const int n = model.n;
  const int m = model.m;
  const GaussianRational i = GaussianRational::i();
  ComponentSystem sys;
  auto gen = [&]() { return GradedVectorField::zero(n, mu); };
  auto add_complex = [&](auto&& setter) {
    for (const GaussianRational& c : {GaussianRational(1), i}) {
      GradedVectorField Y = gen();
      setter(Y, c);
      sys.generators.push_back(std::move(Y));
    }
  };
  auto add_f = [&](int degree, bool times_w) {
    for (int j = 0; j < n; ++j) {
      for (const auto& alpha : poly::multi_indices(n, degree)) {
        add_complex([&](GradedVectorField& Y, const GaussianRational& c) {
          (times_w ? Y.f_w : Y.f)[j] = holo(n, alpha, c);
        });
      }
    }
  };

  const Rational tau = mu * m;
  if (mu == -1) {
    GradedVectorField Y = gen();
    Y.g0 = HermPoly::constant(n, 1);
    sys.generators.push_back(std::move(Y));
  } else if (mu == Rational(-1, m)) {
    add_f(0, false);
    for (const auto& alpha : poly::multi_indices(n, m - 1)) {
      add_complex([&](GradedVectorField& Y, const GaussianRational& c) { Y.g0 = holo(n, alpha, c); });
    }
  } else if (mu == 0) {
    add_f(1, false);
    GradedVectorField Y = gen();
    Y.g1 = HermPoly::constant(n, 1);
    sys.dilation_index = static_cast<int>(sys.generators.size());
    sys.generators.push_back(std::move(Y));
  } else if (mu == 1) {
    add_f(1, true);
    GradedVectorField Y = gen();
    Y.g2 = 1;
    sys.dilation_index = static_cast<int>(sys.generators.size());
    sys.generators.push_back(std::move(Y));
  } else if (mu == Rational(m - 1, m)) {
    add_f(m, false);
    add_f(0, true);
    for (const auto& alpha : poly::multi_indices(n, m - 1)) {
      add_complex([&](GradedVectorField& Y, const GaussianRational& c) { Y.g1 = holo(n, alpha, c); });
    }
  } else if (tau.get_den() == 1 && tau >= 1 && tau <= m - 2) {
    add_f(static_cast<int>(tau.get_num().get_si()) + 1, false);
  } else {
    throw Error(ErrorCode::BadWeight, "weight " + mu.get_str() + " is not admissible for m = " + std::to_string(m));
  }

  // One real equation per (residual part, monomial, re/im).
  const std::size_t cols = sys.generators.size();
  std::map<std::pair<int, Exponent>, std::vector<GaussianRational>> rows;
  for (std::size_t k = 0; k < cols; ++k) {
    const auto residual = poly::tangency_residual(model.Q, sys.generators[k]);
    for (int part = 0; part < 3; ++part) {
      for (const auto& [e, c] : residual[part].terms()) {
        auto it = rows.try_emplace({part, e}, std::vector<GaussianRational>(cols)).first;
        it->second[k] = c;
      }
    }
  }
  sys.equations = EchelonBasis<Rational>(cols);
  for (const auto& kv : rows) {
    std::vector<Rational> re(cols), im(cols);
    for (std::size_t k = 0; k < cols; ++k) {
      re[k] = kv.second[k].re();
      im[k] = kv.second[k].im();
    }
    sys.equations.insert(std::move(re));
    sys.equations.insert(std::move(im));
  }
  return sys;
}

std::vector<GradedVectorField> combine(const ComponentSystem& sys, int n, const Rational& mu,
                                       const std::vector<std::vector<Rational>>& null) {
  std::vector<GradedVectorField> out;
  for (const auto& x : null) {
    GradedVectorField Y = GradedVectorField::zero(n, mu);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (sgn(x[k]) != 0) Y += GaussianRational(x[k]) * sys.generators[k];
    }
    out.push_back(std::move(Y));
  }
  return out;
}

}  // namespace

std::vector<Rational> admissible_weights(int m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "model degree must be >= 2");
  std::vector<Rational> out{Rational(-1), Rational(-1, m), Rational(0)};
  for (int tau = 1; tau <= m - 2; ++tau) out.emplace_back(tau, m);
  out.emplace_back(m - 1, m);
  out.emplace_back(1);
  for (auto& q : out) q.canonicalize();
  return out;
}

GradedComponentBasis graded_component(const ModelHypersurface& model, const Rational& weight) {
  Rational mu = weight;
  mu.canonicalize();
  const ComponentSystem sys = build_system(model, mu);
  GradedComponentBasis out;
  out.weight = mu;
  out.unknowns = static_cast<int>(sys.generators.size());
  out.basis = combine(sys, model.n, mu, sys.equations.nullspace());
  out.real_dimension = static_cast<int>(out.basis.size());
  return out;
}

std::vector<GradedComponentBasis> all_components(const ModelHypersurface& model) {
  std::vector<GradedComponentBasis> out;
  for (const auto& mu : admissible_weights(model.m)) out.push_back(graded_component(model, mu));
  return out;
}

std::vector<GradedVectorField> rigid_rotations(const ModelHypersurface& model) {
  ComponentSystem sys = build_system(model, 0);
  std::vector<Rational> pin(sys.generators.size(), 0);
  pin[sys.dilation_index] = 1;
  sys.equations.insert(std::move(pin));
  return combine(sys, model.n, 0, sys.equations.nullspace());
}

// ---------------------------------------------------------------------------

RotationClassification classify_rotation(const GradedVectorField& field, double tol) {
  const int n = field.n;
  if (field.weight != 0) throw Error(ErrorCode::PreconditionViolation, "rotation must have weight 0");
  for (const auto& p : field.f_w) {
    if (!p.is_zero()) throw Error(ErrorCode::PreconditionViolation, "rotation has a w d/dz part");
  }
  RotationClassification out;
  out.linear_map = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (!field.f[j].is_zero() && !field.f[j].is_homogeneous(1)) {
      throw Error(ErrorCode::PreconditionViolation, "rotation coefficients must be linear");
    }
    for (int k = 0; k < n; ++k) {
      Exponent e(2 * n, 0);
      e[k] = 1;
      out.linear_map(j, k) = field.f[j].coefficient(e).to_complex();
    }
  }
  const CMatrix& L = out.linear_map;
  const double scale = std::max(1.0, numerics::spectral_norm(L));
  const double ctol = std::max(tol, 1e-7 * scale);

  Eigen::ComplexEigenSolver<CMatrix> es(L, false);
  struct Cluster {
    Complex center;
    int size;
  };
  std::vector<Cluster> clusters;
  for (int k = 0; k < n; ++k) {
    const Complex lam = es.eigenvalues()(k);
    out.eigenvalues.push_back(lam);
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const Cluster& c) { return std::abs(c.center - lam) <= ctol; });
    if (it == clusters.end()) {
      clusters.push_back({lam, 1});
    } else {
      it->center = (it->center * static_cast<double>(it->size) + lam) / static_cast<double>(it->size + 1);
      ++it->size;
    }
  }

  // Generalized eigenspaces: the right singular vectors of (L - c I)^k for the
  // k smallest singular values.
  CMatrix T(n, n);
  std::vector<Complex> diag;
  int col = 0;
  for (const auto& c : clusters) {
    CMatrix shifted = L - c.center * CMatrix::Identity(n, n);
    CMatrix power = CMatrix::Identity(n, n);
    for (int r = 0; r < c.size; ++r) power = power * shifted;
    Eigen::JacobiSVD<CMatrix> svd(power, Eigen::ComputeFullV);
    T.middleCols(col, c.size) = svd.matrixV().rightCols(c.size);
    for (int r = 0; r < c.size; ++r) diag.push_back(c.center);
    col += c.size;
  }
  const CMatrix Tinv = T.fullPivLu().inverse();
  CMatrix re_diag = CMatrix::Zero(n, n);
  CMatrix im_diag = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    re_diag(k, k) = diag[k].real();
    im_diag(k, k) = Complex(0, diag[k].imag());
  }
  out.real_diag_part = T * re_diag * Tinv;
  out.imag_diag_part = T * im_diag * Tinv;
  out.nilpotent_part = L - out.real_diag_part - out.imag_diag_part;
  for (const auto& c : clusters) {
    out.real_diagonal_present = out.real_diagonal_present || std::abs(c.center.real()) > ctol;
    out.imaginary_diagonal_present = out.imaginary_diagonal_present || std::abs(c.center.imag()) > ctol;
  }
  out.nilpotent_present = numerics::spectral_norm(out.nilpotent_part) > 10 * ctol;
  return out;
}

// ---------------------------------------------------------------------------

HolomorphicNondegeneracy holomorphically_nondegenerate(const ModelHypersurface& model, int degree_bound) {
  const int n = model.n;
  HolomorphicNondegeneracy out;
  out.degree_bound = degree_bound > 0 ? degree_bound : model.m;
  std::vector<HermPoly> qz;
  for (int j = 0; j < n; ++j) qz.push_back(differentiate(model.Q, Variable::Z, j));

  for (int k = 0; k <= out.degree_bound; ++k) {
    const auto monos = poly::multi_indices(n, k);
    std::vector<std::pair<int, std::vector<int>>> unknowns;
    for (int j = 0; j < n; ++j) {
      for (const auto& alpha : monos) unknowns.emplace_back(j, alpha);
    }
    const std::size_t cols = unknowns.size();
    std::map<Exponent, std::vector<GaussianRational>> rows;
    for (std::size_t u = 0; u < cols; ++u) {
      const HermPoly image = holo(n, unknowns[u].second) * qz[unknowns[u].first];
      for (const auto& [e, c] : image.terms()) {
        bool antiholo = false;
        for (int b = 0; b < n; ++b) antiholo = antiholo || e[n + b] != 0;
        if (!antiholo) continue;
        auto it = rows.try_emplace(e, std::vector<GaussianRational>(cols)).first;
        it->second[u] = c;
      }
    }
    EchelonBasis<GaussianRational> system(cols);
    for (auto& kv : rows) system.insert(std::move(kv.second));
    const auto null = system.nullspace();
    if (null.empty()) continue;
    GradedVectorField Y = GradedVectorField::zero(n, Rational(k - 1, model.m));
    Y.weight.canonicalize();
    for (std::size_t u = 0; u < cols; ++u) {
      if (!null.front()[u].is_zero()) Y.f[unknowns[u].first] += holo(n, unknowns[u].second, null.front()[u]);
    }
    out.nondegenerate = false;
    out.witness = std::move(Y);
    return out;
  }
  return out;
}

std::vector<std::vector<HermPoly>> levi_form(const HermPoly& Q) {
  const int n = Q.n();
  std::vector<std::vector<HermPoly>> L(n, std::vector<HermPoly>(n, HermPoly(n)));
  for (int i = 0; i < n; ++i) {
    const HermPoly qi = differentiate(Q, Variable::Z, i);
    for (int k = 0; k < n; ++k) L[i][k] = differentiate(qi, Variable::ZBar, k);
  }
  return L;
}

PseudoconvexityScan pseudoconvexity_scan(const ModelHypersurface& model, int samples, std::uint64_t seed,
                                         double tol) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  const int n = model.n;
  const auto L = levi_form(model.Q);
  std::vector<std::vector<poly::CompiledPoly>> compiled(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) compiled[i].emplace_back(L[i][k]);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  PseudoconvexityScan out;
  out.min_relative_lambda = std::numeric_limits<double>::infinity();
  std::vector<Complex> z(n);
  CMatrix M(n, n);
  for (int s = 0; s < samples; ++s) {
    double norm2 = 0;
    for (int j = 0; j < n; ++j) {
      z[j] = Complex(normal(rng), normal(rng));
      norm2 += std::norm(z[j]);
    }
    const double radius = std::ldexp(1.0, -(s % 8));
    const double factor = norm2 > 0 ? radius / std::sqrt(norm2) : 0.0;
    for (auto& v : z) v *= factor;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) M(i, k) = compiled[i][k](z);
    }
    out.samples_used = s + 1;
    const double scale = numerics::spectral_norm(M);
    if (scale == 0.0) continue;
    const double lam = numerics::min_hermitian_eigenvalue(M);
    if (lam / scale < out.min_relative_lambda) {
      out.min_relative_lambda = lam / scale;
      out.lambda_min = lam;
    }
    if (lam < -tol * scale) {
      out.witness_found = true;
      out.witness = z;
      out.lambda_min = lam;
      return out;
    }
  }
  if (!std::isfinite(out.min_relative_lambda)) out.min_relative_lambda = 0;
  return out;
}

bool levi_determinant_identity_check(const HermPoly& P, const HermPoly& Q) {
  if (P.n() != 2 || Q.n() != 2) throw Error(ErrorCode::PreconditionViolation, "identity needs n = 2");
  if (!P.is_holomorphic() || !Q.is_holomorphic()) {
    throw Error(ErrorCode::PreconditionViolation, "P and Q must be holomorphic");
  }
  const HermPoly model = P * Q.conj() + Q * P.conj();
  const auto L = levi_form(model);
  const HermPoly det = L[0][0] * L[1][1] - L[0][1] * L[1][0];
  const HermPoly J = differentiate(P, Variable::Z, 0) * differentiate(Q, Variable::Z, 1) -
                     differentiate(P, Variable::Z, 1) * differentiate(Q, Variable::Z, 0);
  return det == -(J * J.conj());
}

// ---------------------------------------------------------------------------

SosDecomposition sos_decompose(const HermPoly& Q) {
  const int n = Q.n();
  const int m = Q.total_degree();
  if (m <= 0) throw Error(ErrorCode::InvalidArgument, "sum of squares test needs a nonconstant polynomial");
  if (m % 2 != 0) throw Error(ErrorCode::NotBihomogeneous, "odd degree");
  const int h = m / 2;
  for (const auto& [e, c] : Q.terms()) {
    int a = 0;
    int b = 0;
    for (int j = 0; j < n; ++j) {
      a += e[j];
      b += e[n + j];
    }
    if (a != h || b != h) {
      throw Error(ErrorCode::NotBihomogeneous,
                  "term of bidegree (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  }
  const auto monos = poly::multi_indices(n, h);
  const auto size = static_cast<Eigen::Index>(monos.size());
  CMatrix C(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    for (Eigen::Index b = 0; b < size; ++b) {
      Exponent e(monos[a]);
      e.insert(e.end(), monos[b].begin(), monos[b].end());
      C(a, b) = Q.coefficient(e).to_complex();
    }
  }
  SosDecomposition out;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(C);
  const auto& lam = es.eigenvalues();
  out.min_eigenvalue = lam(0);
  out.gram_norm = std::max(std::abs(lam(0)), std::abs(lam(size - 1)));
  out.psd = out.min_eigenvalue >= -1e-10 * out.gram_norm;
  if (!out.psd) return out;

  HermPoly rebuilt(n);
  for (Eigen::Index k = 0; k < size; ++k) {
    if (lam(k) <= 1e-10 * out.gram_norm) continue;
    const double root = std::sqrt(lam(k));
    HermPoly P(n);
    for (Eigen::Index a = 0; a < size; ++a) {
      const Complex c = root * es.eigenvectors()(a, k);
      if (c != Complex(0, 0)) P += holo(n, monos[a], GaussianRational::from_complex(c));
    }
    rebuilt += P * P.conj();
    out.factors.push_back(std::move(P));
  }
  const HermPoly diff = rebuilt - Q;
  for (const auto& [e, c] : diff.terms()) {
    out.reconstruction_error = std::max(out.reconstruction_error, std::abs(c.to_complex()));
  }
  out.verified = out.reconstruction_error <= 1e-10;
  return out;
}

// ---------------------------------------------------------------------------

ChainVerification verify_chain(const ModelHypersurface& model, const ChainSpec& spec) {
  const std::size_t N = spec.U.size();
  if (N == 0) throw Error(ErrorCode::LengthMismatch, "chain is empty");
  if (spec.V.size() != N) throw Error(ErrorCode::LengthMismatch, "U and V have different lengths");
  if (spec.c.size() != N - 1 || spec.d.size() != N - 1) {
    throw Error(ErrorCode::LengthMismatch, "c and d need N - 1 entries");
  }
  if (spec.Y.n != model.n) throw Error(ErrorCode::InvalidArgument, "field and model have different n");
  if (spec.Y.is_zero()) throw Error(ErrorCode::PreconditionViolation, "chain field Y must be nonzero");
  for (std::size_t j = 0; j + 1 < N; ++j) {
    if (spec.c[j].is_zero() || spec.d[j].is_zero()) {
      throw Error(ErrorCode::PreconditionViolation, "chain constants must be nonzero");
    }
  }
  auto relations = [&](const std::vector<HermPoly>& chain, const std::vector<GaussianRational>& k) {
    for (std::size_t j = 0; j < N; ++j) {
      const HermPoly image = poly::apply_field(spec.Y, chain[j]);
      const HermPoly expected = j + 1 < N ? chain[j + 1] * k[j] : HermPoly(model.n);
      if (!(image == expected)) return false;
    }
    return true;
  };
  ChainVerification out;
  out.u_relations = relations(spec.U, spec.c);
  out.v_relations = relations(spec.V, spec.d);
  out.symmetric_constants = true;
  for (std::size_t j = 1; j < N; ++j) {
    out.symmetric_constants = out.symmetric_constants && spec.c[j - 1] == -spec.d[N - j - 1].conj();
  }
  HermPoly sum(model.n);
  for (std::size_t k = 0; k < N; ++k) sum += spec.U[k] * spec.V[N - 1 - k].conj();
  const HermPoly residual = model.Q - sum.real_part();
  out.decomposition_residual_terms = residual.size();
  out.decomposition = residual.is_zero();
  out.tangent = poly::is_tangent(model.Q, spec.Y);
  out.ok = out.u_relations && out.v_relations && out.symmetric_constants && out.decomposition && out.tangent;
  return out;
}

ChainSpec chain_from_json(const nlohmann::json& j) {
  try {
    ChainSpec spec;
    spec.Y = poly::field_from_json(j.at("Y"));
    for (const auto& p : j.at("U")) spec.U.push_back(poly::poly_from_json(p));
    for (const auto& p : j.at("V")) spec.V.push_back(poly::poly_from_json(p));
    for (const auto& c : j.at("c")) spec.c.push_back(poly::gaussian_from_json(c));
    for (const auto& d : j.at("d")) spec.d.push_back(poly::gaussian_from_json(d));
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("chain: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

int annihilator_dimension(const GradedVectorField& Y, int nu) {
  if (Y.n != 2) throw Error(ErrorCode::PreconditionViolation, "annihilator dimension needs n = 2");
  if (nu < 0) throw Error(ErrorCode::InvalidArgument, "nu must be >= 0");
  if (Y.depends_on_w()) throw Error(ErrorCode::PreconditionViolation, "field depends on w");
  int k = -1;
  for (const auto& f : Y.f) {
    if (f.is_zero()) continue;
    const int deg = f.total_degree();
    if (!f.is_holomorphic() || !f.is_homogeneous(deg) || (k >= 0 && deg != k)) {
      throw Error(ErrorCode::PreconditionViolation, "coefficients must be homogeneous of one degree");
    }
    k = deg;
  }
  if (k < 0) throw Error(ErrorCode::PreconditionViolation, "field must be nonzero");
  if (k == 0) throw Error(ErrorCode::PreconditionViolation, "constant fields have negative weight");
  if (k == 1) {
    // Only a nilpotent linear part raises a degree filtration; L^2 = 0 for 2 x 2.
    GaussianRational L[2][2];
    for (int j = 0; j < 2; ++j) {
      for (int c = 0; c < 2; ++c) L[j][c] = Y.f[j].coefficient(Exponent{c == 0, c == 1, 0, 0});
    }
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        if (!(L[r][0] * L[0][c] + L[r][1] * L[1][c]).is_zero()) {
          throw Error(ErrorCode::PreconditionViolation, "linear field is not nilpotent (weight 0)");
        }
      }
    }
  }
  const auto monos = poly::multi_indices(2, nu);
  const std::size_t cols = monos.size();
  std::map<Exponent, std::vector<GaussianRational>> rows;
  for (std::size_t u = 0; u < cols; ++u) {
    const HermPoly image = poly::apply_field(Y, holo(2, monos[u]));
    for (const auto& [e, c] : image.terms()) {
      auto it = rows.try_emplace(e, std::vector<GaussianRational>(cols)).first;
      it->second[u] = c;
    }
  }
  EchelonBasis<GaussianRational> system(cols);
  for (auto& kv : rows) system.insert(std::move(kv.second));
  return static_cast<int>(cols - system.rank());
}

}  // namespace crkit::lie
