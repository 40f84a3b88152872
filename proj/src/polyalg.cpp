#include "crkit/polyalg.hpp"

#include "crkit/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace crkit::poly {

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_complex(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  }
  return {Rational(z.real()), Rational(z.imag())};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational d = o.norm2();
  if (sgn(d) == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  Rational re = (re_ * o.re_ + im_ * o.im_) / d;
  Rational im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  std::string s = re_.get_str();
  s += sgn(im_) > 0 ? "+" : "";
  return s + im_.get_str() + "i";
}

// ---------------------------------------------------------------------------
// HermPoly

HermPoly HermPoly::constant(int n, const GaussianRational& c) {
  HermPoly p(n);
  p.add_term(Exponent(2 * n, 0), c);
  return p;
}

HermPoly HermPoly::z(int n, int j) {
  Exponent e(2 * n, 0);
  e.at(j) = 1;
  return monomial(n, e);
}

HermPoly HermPoly::zbar(int n, int j) {
  Exponent e(2 * n, 0);
  e.at(n + j) = 1;
  return monomial(n, e);
}

HermPoly HermPoly::monomial(int n, const Exponent& e, const GaussianRational& c) {
  if (static_cast<int>(e.size()) != 2 * n) {
    throw Error(ErrorCode::InvalidArgument, "exponent length must be 2n");
  }
  HermPoly p(n);
  p.add_term(e, c);
  return p;
}

HermPoly HermPoly::holo_monomial(int n, const std::vector<int>& alpha, const GaussianRational& c) {
  Exponent e(2 * n, 0);
  for (int j = 0; j < n; ++j) e[j] = alpha.at(j);
  return monomial(n, e, c);
}

void HermPoly::add_term(const Exponent& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GaussianRational HermPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void HermPoly::check_same_n(const HermPoly& o) const {
  if (n_ != o.n_) {
    throw Error(ErrorCode::InvalidArgument, "polynomials over different variable counts");
  }
}

HermPoly& HermPoly::operator+=(const HermPoly& o) {
  check_same_n(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HermPoly& HermPoly::operator-=(const HermPoly& o) {
  check_same_n(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

HermPoly& HermPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

HermPoly operator*(const HermPoly& a, const HermPoly& b) {
  a.check_same_n(b);
  HermPoly out(a.n_);
  Exponent e(2 * a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

HermPoly HermPoly::conj() const {
  HermPoly out(n_);
  Exponent swapped(2 * n_);
  for (const auto& [e, c] : terms_) {
    for (int j = 0; j < n_; ++j) {
      swapped[j] = e[n_ + j];
      swapped[n_ + j] = e[j];
    }
    out.terms_.emplace(swapped, c.conj());
  }
  return out;
}

HermPoly HermPoly::real_part() const {
  HermPoly out = *this + conj();
  out *= GaussianRational(Rational(1, 2));
  return out;
}

bool HermPoly::is_holomorphic() const {
  for (const auto& [e, c] : terms_) {
    for (int j = 0; j < n_; ++j) {
      if (e[n_ + j] != 0) return false;
    }
  }
  return true;
}

bool HermPoly::is_real_valued() const { return *this == conj(); }

int HermPoly::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int v : e) d += v;
    deg = std::max(deg, d);
  }
  return deg;
}

bool HermPoly::is_homogeneous(int degree) const {
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int v : e) d += v;
    if (d != degree) return false;
  }
  return true;
}

bool HermPoly::has_pluriharmonic_terms() const {
  for (const auto& [e, c] : terms_) {
    int za = 0;
    int zb = 0;
    for (int j = 0; j < n_; ++j) {
      za += e[j];
      zb += e[n_ + j];
    }
    if (za == 0 || zb == 0) return true;
  }
  return false;
}

std::complex<double> HermPoly::evaluate(const std::vector<std::complex<double>>& z) const {
  return CompiledPoly(*this)(z);
}

std::string HermPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int j = 0; j < n_; ++j) {
      if (e[j] > 0) os << "*z" << (j + 1) << (e[j] > 1 ? "^" + std::to_string(e[j]) : "");
    }
    for (int j = 0; j < n_; ++j) {
      if (e[n_ + j] > 0) os << "*zb" << (j + 1) << (e[n_ + j] > 1 ? "^" + std::to_string(e[n_ + j]) : "");
    }
  }
  return os.str();
}

HermPoly multiply(const HermPoly& p, const HermPoly& q) { return p * q; }

HermPoly power(const HermPoly& p, int k) {
  HermPoly out = HermPoly::constant(p.n(), 1);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

HermPoly differentiate(const HermPoly& p, Variable kind, int j) {
  const int n = p.n();
  if (j < 0 || j >= n) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  const int slot = kind == Variable::Z ? j : n + j;
  HermPoly out(n);
  for (const auto& [e, c] : p.terms()) {
    if (e[slot] == 0) continue;
    Exponent d = e;
    d[slot] -= 1;
    out.add_term(d, c * GaussianRational(e[slot]));
  }
  return out;
}

std::complex<double> circle_mean(const HermPoly& p, const std::vector<std::complex<double>>& z0,
                                 double radius, int quadrature_points) {
  if (!(radius > 0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  if (quadrature_points < 2 * std::max(p.total_degree(), 0) + 1) {
    throw Error(ErrorCode::InvalidArgument, "quadrature_points must be >= 2*degree+1");
  }
  if (static_cast<int>(z0.size()) != p.n()) {
    throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  }
  const CompiledPoly f(p);
  std::complex<double> acc = 0;
  std::vector<std::complex<double>> z(z0.size());
  for (int k = 0; k < quadrature_points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / quadrature_points;
    const std::complex<double> lambda = std::polar(radius, theta);
    for (std::size_t j = 0; j < z0.size(); ++j) z[j] = lambda * z0[j];
    acc += f(z);
  }
  return acc / static_cast<double>(quadrature_points);
}

std::vector<std::vector<int>> multi_indices(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  // Recursive fill: distribute k over positions j..n-1.
  auto rec = [&](auto&& self, int j, int remaining) -> void {
    if (j == n - 1) {
      cur[j] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[j] = v;
      self(self, j + 1, remaining - v);
    }
  };
  if (n == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, k);
  return out;
}

// ---------------------------------------------------------------------------
// CompiledPoly

CompiledPoly::CompiledPoly(const HermPoly& p) : n_(p.n()) {
  exps_.reserve(p.size());
  coeffs_.reserve(p.size());
  for (const auto& [e, c] : p.terms()) {
    exps_.push_back(e);
    coeffs_.push_back(c.to_complex());
  }
}

std::complex<double> CompiledPoly::operator()(const std::vector<std::complex<double>>& z) const {
  if (static_cast<int>(z.size()) != n_) {
    throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  }
  std::complex<double> acc = 0;
  for (std::size_t t = 0; t < exps_.size(); ++t) {
    std::complex<double> v = coeffs_[t];
    const Exponent& e = exps_[t];
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < e[j]; ++k) v *= z[j];
      const std::complex<double> zb = std::conj(z[j]);
      for (int k = 0; k < e[n_ + j]; ++k) v *= zb;
    }
    acc += v;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// ModelHypersurface

ModelHypersurface ModelHypersurface::make(HermPoly q, bool allow_pluriharmonic) {
  if (q.is_zero()) throw Error(ErrorCode::InvariantViolation, "Q is identically zero");
  const int m = q.total_degree();
  if (!q.is_homogeneous(m)) {
    throw Error(ErrorCode::InvariantViolation, "Q is not homogeneous");
  }
  if (m < 2) throw Error(ErrorCode::InvariantViolation, "Q must have degree >= 2");
  for (const auto& [e, c] : q.terms()) {
    Exponent swapped(e.size());
    const int n = q.n();
    for (int j = 0; j < n; ++j) {
      swapped[j] = e[n + j];
      swapped[n + j] = e[j];
    }
    if (!(q.coefficient(swapped) == c.conj())) {
      throw Error(ErrorCode::InvariantViolation,
                  "Q is not real-valued at term " + HermPoly::monomial(n, e, c).to_string());
    }
  }
  if (!allow_pluriharmonic && q.has_pluriharmonic_terms()) {
    throw Error(ErrorCode::InvariantViolation,
                "Q has pluriharmonic terms (set allow_pluriharmonic to admit them)");
  }
  const int n = q.n();
  return {n, m, std::move(q)};
}

}  // namespace crkit::poly
