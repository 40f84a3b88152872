#pragma once

// Exact polynomials in (z_1..z_n, zbar_1..zbar_n) over the Gaussian rationals.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace crkit::poly {

using Rational = mpq_class;

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im = 0);

  static GaussianRational i() { return {0, 1}; }
  /// Exact conversion; every finite double is a dyadic rational.
  static GaussianRational from_complex(std::complex<double> z);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_ = 0;
  Rational im_ = 0;
};

/// Exponents of one monomial: alpha (powers of z) followed by beta (powers of
/// zbar), so the vector has length 2n.
using Exponent = std::vector<int>;

class HermPoly {
 public:
  using Terms = std::map<Exponent, GaussianRational>;

  HermPoly() = default;
  explicit HermPoly(int n) : n_(n) {}

  static HermPoly constant(int n, const GaussianRational& c);
  static HermPoly z(int n, int j);
  static HermPoly zbar(int n, int j);
  static HermPoly monomial(int n, const Exponent& e, const GaussianRational& c = 1);
  static HermPoly holo_monomial(int n, const std::vector<int>& alpha, const GaussianRational& c = 1);

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c to the coefficient of e; zero results are erased.
  void add_term(const Exponent& e, const GaussianRational& c);
  GaussianRational coefficient(const Exponent& e) const;

  HermPoly& operator+=(const HermPoly& o);
  HermPoly& operator-=(const HermPoly& o);
  HermPoly& operator*=(const GaussianRational& c);
  friend HermPoly operator+(HermPoly a, const HermPoly& b) { return a += b; }
  friend HermPoly operator-(HermPoly a, const HermPoly& b) { return a -= b; }
  friend HermPoly operator-(const HermPoly& a) { return a * GaussianRational(-1); }
  friend HermPoly operator*(HermPoly a, const GaussianRational& c) { return a *= c; }
  friend HermPoly operator*(const GaussianRational& c, HermPoly a) { return a *= c; }
  friend HermPoly operator*(const HermPoly& a, const HermPoly& b);
  friend bool operator==(const HermPoly& a, const HermPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Formal complex conjugate: swaps alpha and beta and conjugates coefficients.
  HermPoly conj() const;
  /// (p + conj p) / 2.
  HermPoly real_part() const;

  bool is_holomorphic() const;
  bool is_real_valued() const;
  /// Total degree |alpha| + |beta|; -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous(int degree) const;
  /// True if some term has alpha = 0 or beta = 0.
  bool has_pluriharmonic_terms() const;

  /// Numeric value with zbar taken as the conjugate of z.
  std::complex<double> evaluate(const std::vector<std::complex<double>>& z) const;

  std::string to_string() const;

 private:
  void check_same_n(const HermPoly& o) const;

  int n_ = 0;
  Terms terms_;
};

HermPoly multiply(const HermPoly& p, const HermPoly& q);
HermPoly power(const HermPoly& p, int k);

enum class Variable { Z, ZBar };

/// Formal partial derivative with respect to z_j or zbar_j (0-based j).
HermPoly differentiate(const HermPoly& p, Variable kind, int j);

/// Average of p(lambda z0, conj(lambda z0)) over |lambda| = radius using the
/// trapezoid rule; exact for trigonometric polynomials once
/// quadrature_points >= 2 * total_degree + 1.
std::complex<double> circle_mean(const HermPoly& p, const std::vector<std::complex<double>>& z0,
                                 double radius, int quadrature_points);

/// All multi-indices of length n and total degree k in lexicographic order.
std::vector<std::vector<int>> multi_indices(int n, int k);

/// Numerically compiled form of a polynomial for repeated evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const HermPoly& p);
  std::complex<double> operator()(const std::vector<std::complex<double>>& z) const;

 private:
  int n_ = 0;
  std::vector<Exponent> exps_;
  std::vector<std::complex<double>> coeffs_;
};

/// The model hypersurface Im w = Q(z, zbar).
struct ModelHypersurface {
  int n = 0;
  int m = 0;
  HermPoly Q;

  /// Validates realness, homogeneity and (unless allowed) the absence of
  /// pluriharmonic terms; throws InvariantViolation naming the first issue.
  static ModelHypersurface make(HermPoly q, bool allow_pluriharmonic = false);
};

}  // namespace crkit::poly
