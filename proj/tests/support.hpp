#pragma once

// Seeded generators and independent oracles shared by the test programs.

#include "crkit/numerics.hpp"
#include "crkit/polyalg.hpp"
#include "crkit/vector_field.hpp"

#include <Eigen/SVD>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace crkit::testing {

using numerics::CMatrix;
using numerics::Complex;
using numerics::RMatrix;
using poly::GaussianRational;
using poly::HermPoly;
using poly::Rational;

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Gaussian integer with parts in [-r, r].
inline GaussianRational small_gaussian(std::mt19937_64& rng, int r = 3) {
  return {Rational(uniform_int(rng, -r, r)), Rational(uniform_int(rng, -r, r))};
}

/// Random holomorphic polynomial, homogeneous of degree deg, never zero.
inline HermPoly random_holo(std::mt19937_64& rng, int n, int deg, int r = 3) {
  HermPoly p(n);
  while (p.is_zero()) {
    for (const auto& alpha : poly::multi_indices(n, deg)) {
      if (uniform_int(rng, 0, 2) == 0) continue;
      p = p + HermPoly::holo_monomial(n, alpha, small_gaussian(rng, r));
    }
  }
  return p;
}

inline CMatrix random_complex(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = {g(rng), g(rng)};
  }
  return m;
}

inline CMatrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<CMatrix> qr(random_complex(rng, n, n));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

inline std::vector<Complex> random_point(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<Complex> z(n);
  for (auto& c : z) c = {g(rng), g(rng)};
  return z;
}

/// Floating-point count of the weight-mu piece of the symmetry algebra of
/// Im w = Q, independent of the exact solver: every weighted homogeneous
/// field f_j(z, w) d/dz_j + g(z, w) d/dw of the right weight is admitted
/// (z has weight 1/m, w weight 1), and 2 Re Z(Im w - Q) is sampled at random
/// points of the hypersurface. Returns the numerical nullity.
inline int sampled_component_dimension(const HermPoly& Q, int m, const Rational& weight, std::uint64_t seed = 7) {
  const int n = Q.n();
  struct Unknown {
    int target;  // -1 for g, otherwise the index j of f_j
    std::vector<int> alpha;
    int wpow;
  };
  std::vector<Unknown> unknowns;
  auto collect = [&](int target, const Rational& deg) {
    // |alpha| / m + b = deg
    for (int b = 0; Rational(b) <= deg; ++b) {
      const Rational rest = (deg - b) * m;
      if (rest.get_den() != 1 || rest < 0) continue;
      const int k = static_cast<int>(rest.get_num().get_si());
      for (const auto& alpha : poly::multi_indices(n, k)) unknowns.push_back({target, alpha, b});
    }
  };
  for (int j = 0; j < n; ++j) collect(j, weight + Rational(1, m));
  collect(-1, weight + 1);
  if (unknowns.empty()) return 0;

  std::vector<poly::CompiledPoly> dQ;
  for (int j = 0; j < n; ++j) dQ.emplace_back(poly::differentiate(Q, poly::Variable::Z, j));
  const poly::CompiledPoly q(Q);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const int cols = 2 * static_cast<int>(unknowns.size());
  const int rows = 3 * cols + 10;
  RMatrix M(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto z = random_point(rng, n);
    const Complex w(g(rng), q(z).real());
    std::vector<Complex> qz(n);
    for (int j = 0; j < n; ++j) qz[j] = dQ[j](z);
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
      Complex mono = std::pow(w, unknowns[k].wpow);
      for (int j = 0; j < n; ++j) mono *= std::pow(z[j], unknowns[k].alpha[j]);
      // d(Im w - Q) applied to the unknown's d/dz_j or d/dw part.
      const Complex factor = unknowns[k].target < 0 ? Complex(0, -0.5) : -qz[unknowns[k].target];
      const Complex v = mono * factor;
      M(r, 2 * k) = 2 * v.real();                      // real part of the coefficient
      M(r, 2 * k + 1) = 2 * (Complex(0, 1) * v).real();  // imaginary part
    }
  }
  Eigen::JacobiSVD<RMatrix> svd(M);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) rank += s(k) > 1e-9 * s(0);
  return cols - rank;
}

}  // namespace crkit::testing
