#include "crkit/vector_field.hpp"

#include "crkit/errors.hpp"
#include "crkit/exact_linalg.hpp"
#include "crkit/poly_json.hpp"

#include <map>
#include <sstream>

namespace crkit::poly {

namespace {

const GaussianRational kMinusHalfI{0, Rational(-1, 2)};  // 1 / (2i)

void check_shape(const GradedVectorField& Y) {
  if (static_cast<int>(Y.f.size()) != Y.n || static_cast<int>(Y.f_w.size()) != Y.n || Y.g0.n() != Y.n ||
      Y.g1.n() != Y.n) {
    throw Error(ErrorCode::InvalidArgument, "vector field components do not match n");
  }
}

// Holomorphic polynomial in z_1..z_n viewed in the variables (z_1..z_n, w).
HermPoly lift(const HermPoly& p, int n) {
  HermPoly out(n + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponent le(2 * (n + 1), 0);
    for (int j = 0; j < n; ++j) {
      le[j] = e[j];
      le[n + 1 + j] = e[n + j];
    }
    out.add_term(le, c);
  }
  return out;
}

HermPoly w_times(const HermPoly& p, int n, int power) {
  HermPoly out(n + 1);
  const HermPoly lifted = lift(p, n);
  for (const auto& [e, c] : lifted.terms()) {
    Exponent le = e;
    le[n] += power;
    out.add_term(le, c);
  }
  return out;
}

std::vector<HermPoly> components(const GradedVectorField& Y) {
  const int n = Y.n;
  std::vector<HermPoly> out;
  for (int j = 0; j < n; ++j) out.push_back(lift(Y.f[j], n) + w_times(Y.f_w[j], n, 1));
  out.push_back(lift(Y.g0, n) + w_times(Y.g1, n, 1) + w_times(HermPoly::constant(n, Y.g2), n, 2));
  return out;
}

HermPoly derivation(const std::vector<HermPoly>& X, const HermPoly& h) {
  HermPoly out(h.n());
  for (int k = 0; k < h.n(); ++k) {
    if (X[k].is_zero()) continue;
    out += X[k] * differentiate(h, Variable::Z, k);
  }
  return out;
}

// Splits an (n+1)-variable holomorphic polynomial by powers of w.
std::map<int, HermPoly> split_by_w(const HermPoly& p, int n) {
  std::map<int, HermPoly> out;
  for (const auto& [e, c] : p.terms()) {
    auto it = out.try_emplace(e[n], HermPoly(n)).first;
    Exponent ze(2 * n, 0);
    for (int j = 0; j < n; ++j) {
      ze[j] = e[j];
      ze[n + j] = e[n + 1 + j];
    }
    it->second.add_term(ze, c);
  }
  return out;
}

std::map<std::pair<int, Exponent>, GaussianRational> coordinates(const GradedVectorField& Y) {
  std::map<std::pair<int, Exponent>, GaussianRational> out;
  auto put = [&](int slot, const HermPoly& p) {
    for (const auto& [e, c] : p.terms()) out[{slot, e}] = c;
  };
  for (int j = 0; j < Y.n; ++j) {
    put(j, Y.f[j]);
    put(Y.n + j, Y.f_w[j]);
  }
  put(2 * Y.n, Y.g0);
  put(2 * Y.n + 1, Y.g1);
  if (!Y.g2.is_zero()) out[{2 * Y.n + 2, {}}] = Y.g2;
  return out;
}

}  // namespace

GradedVectorField GradedVectorField::zero(int n, const Rational& weight) {
  GradedVectorField Y;
  Y.n = n;
  Y.weight = weight;
  Y.f.assign(n, HermPoly(n));
  Y.f_w.assign(n, HermPoly(n));
  Y.g0 = HermPoly(n);
  Y.g1 = HermPoly(n);
  return Y;
}

bool GradedVectorField::is_zero() const {
  for (int j = 0; j < n; ++j) {
    if (!f[j].is_zero() || !f_w[j].is_zero()) return false;
  }
  return g0.is_zero() && !depends_on_w();
}

bool GradedVectorField::depends_on_w() const {
  for (const auto& p : f_w) {
    if (!p.is_zero()) return true;
  }
  return !g1.is_zero() || !g2.is_zero();
}

GradedVectorField& GradedVectorField::operator+=(const GradedVectorField& o) {
  if (o.n != n) throw Error(ErrorCode::InvalidArgument, "adding fields with different n");
  for (int j = 0; j < n; ++j) {
    f[j] += o.f[j];
    f_w[j] += o.f_w[j];
  }
  g0 += o.g0;
  g1 += o.g1;
  g2 += o.g2;
  return *this;
}

GradedVectorField& GradedVectorField::operator*=(const GaussianRational& c) {
  for (int j = 0; j < n; ++j) {
    f[j] *= c;
    f_w[j] *= c;
  }
  g0 *= c;
  g1 *= c;
  g2 *= c;
  return *this;
}

bool operator==(const GradedVectorField& a, const GradedVectorField& b) {
  return a.n == b.n && a.weight == b.weight && a.f == b.f && a.f_w == b.f_w && a.g0 == b.g0 && a.g1 == b.g1 &&
         a.g2 == b.g2;
}

std::string GradedVectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto part = [&](const std::string& coeff, const std::string& vec) {
    if (!first) os << " + ";
    first = false;
    os << "(" << coeff << ")" << vec;
  };
  for (int j = 0; j < n; ++j) {
    if (!f[j].is_zero()) part(f[j].to_string(), " d/dz" + std::to_string(j + 1));
    if (!f_w[j].is_zero()) part(f_w[j].to_string(), " w d/dz" + std::to_string(j + 1));
  }
  if (!g0.is_zero()) part(g0.to_string(), " d/dw");
  if (!g1.is_zero()) part(g1.to_string(), " w d/dw");
  if (!g2.is_zero()) part(g2.to_string(), " w^2 d/dw");
  if (first) os << "0";
  return os.str();
}

HermPoly apply_field(const GradedVectorField& Y, const HermPoly& p) {
  check_shape(Y);
  if (p.n() != Y.n) throw Error(ErrorCode::InvalidArgument, "polynomial and field have different n");
  for (const auto& fw : Y.f_w) {
    if (!fw.is_zero()) throw Error(ErrorCode::PreconditionViolation, "field has w-dependent d/dz parts");
  }
  if (!p.is_holomorphic()) throw Error(ErrorCode::PreconditionViolation, "polynomial depends on zbar");
  HermPoly out(Y.n);
  for (int j = 0; j < Y.n; ++j) {
    if (!Y.f[j].is_zero()) out += Y.f[j] * differentiate(p, Variable::Z, j);
  }
  return out;
}

std::array<HermPoly, 3> tangency_residual(const HermPoly& Q, const GradedVectorField& Z) {
  check_shape(Z);
  const int n = Z.n;
  if (Q.n() != n) throw Error(ErrorCode::InvalidArgument, "model and field have different n");
  const GaussianRational i = GaussianRational::i();

  HermPoly r0(n), r1(n), r2(n);
  const GaussianRational im_g2 = (Z.g2 - Z.g2.conj()) * kMinusHalfI;
  r2.add_term(Exponent(2 * n, 0), im_g2);

  r1 += (Z.g1 - Z.g1.conj()) * kMinusHalfI;
  r1 += Q * (Z.g2 + Z.g2.conj());

  r0 += (Z.g0 - Z.g0.conj()) * kMinusHalfI;
  r0 += Q * (Z.g1 + Z.g1.conj()) * GaussianRational(Rational(1, 2));
  if (!im_g2.is_zero()) r0 -= Q * Q * im_g2;

  HermPoly mixed(n);
  for (int j = 0; j < n; ++j) {
    const bool has_f = !Z.f[j].is_zero();
    const bool has_fw = !Z.f_w[j].is_zero();
    if (!has_f && !has_fw) continue;
    const HermPoly qz = differentiate(Q, Variable::Z, j);
    const HermPoly qzb = differentiate(Q, Variable::ZBar, j);
    if (has_f) r0 -= Z.f[j] * qz + Z.f[j].conj() * qzb;
    if (has_fw) {
      r1 -= Z.f_w[j] * qz + Z.f_w[j].conj() * qzb;
      mixed += Z.f_w[j] * qz - Z.f_w[j].conj() * qzb;
    }
  }
  if (!mixed.is_zero()) r0 -= i * (Q * mixed);
  return {r0, r1, r2};
}

bool is_tangent(const HermPoly& Q, const GradedVectorField& Z) {
  const auto r = tangency_residual(Q, Z);
  return r[0].is_zero() && r[1].is_zero() && r[2].is_zero();
}

GradedVectorField lie_bracket(const GradedVectorField& X, const GradedVectorField& Y) {
  check_shape(X);
  check_shape(Y);
  if (X.n != Y.n) throw Error(ErrorCode::InvalidArgument, "bracket of fields with different n");
  const int n = X.n;
  const auto cx = components(X);
  const auto cy = components(Y);
  GradedVectorField out = GradedVectorField::zero(n, X.weight + Y.weight);
  for (int k = 0; k <= n; ++k) {
    const HermPoly c = derivation(cx, cy[k]) - derivation(cy, cx[k]);
    for (auto& [power, p] : split_by_w(c, n)) {
      if (k < n) {
        if (power == 0) {
          out.f[k] = p;
        } else if (power == 1) {
          out.f_w[k] = p;
        } else {
          throw Error(ErrorCode::InvalidArgument, "bracket has a w^2 d/dz term");
        }
      } else if (power == 0) {
        out.g0 = p;
      } else if (power == 1) {
        out.g1 = p;
      } else if (power == 2 && p.total_degree() == 0) {
        out.g2 = p.coefficient(Exponent(2 * n, 0));
      } else {
        throw Error(ErrorCode::InvalidArgument, "bracket leaves the representable d/dw shape");
      }
    }
  }
  return out;
}

bool in_real_span(const GradedVectorField& v, const std::vector<GradedVectorField>& basis) {
  std::map<std::pair<int, Exponent>, std::size_t> keys;
  std::vector<std::map<std::pair<int, Exponent>, GaussianRational>> coords;
  for (const auto& b : basis) coords.push_back(coordinates(b));
  coords.push_back(coordinates(v));
  for (const auto& c : coords) {
    for (const auto& kv : c) keys.try_emplace(kv.first, keys.size());
  }
  auto column = [&](const std::map<std::pair<int, Exponent>, GaussianRational>& c) {
    std::vector<Rational> col(2 * keys.size(), 0);
    for (const auto& [key, value] : c) {
      const std::size_t r = keys.at(key);
      col[2 * r] = value.re();
      col[2 * r + 1] = value.im();
    }
    return col;
  };
  EchelonBasis<Rational> span(2 * keys.size());
  for (std::size_t k = 0; k + 1 < coords.size(); ++k) span.insert(column(coords[k]));
  return !span.insert(column(coords.back()));
}

nlohmann::json field_to_json(const GradedVectorField& Y) {
  check_shape(Y);
  nlohmann::json j;
  j["n"] = Y.n;
  j["weight"] = rational_to_json(Y.weight);
  j["f"] = nlohmann::json::array();
  for (const auto& p : Y.f) j["f"].push_back(poly_to_json(p));
  bool any_fw = false;
  for (const auto& p : Y.f_w) any_fw = any_fw || !p.is_zero();
  if (any_fw) {
    j["f_w"] = nlohmann::json::array();
    for (const auto& p : Y.f_w) j["f_w"].push_back(poly_to_json(p));
  }
  if (!Y.g0.is_zero()) j["g"] = poly_to_json(Y.g0);
  if (!Y.g1.is_zero()) j["g_w"] = poly_to_json(Y.g1);
  if (!Y.g2.is_zero()) j["g_ww"] = gaussian_to_json(Y.g2);
  return j;
}

GradedVectorField field_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "vector field must be a JSON object");
    const auto& f = j.at("f");
    if (!f.is_array()) throw Error(ErrorCode::ParseError, "\"f\" must be an array");
    const int n = j.contains("n") ? j.at("n").get<int>() : static_cast<int>(f.size());
    if (n < 1 || static_cast<int>(f.size()) != n) throw Error(ErrorCode::ParseError, "\"f\" must have n entries");
    GradedVectorField Y = GradedVectorField::zero(n, rational_from_json(j.at("weight")));
    auto read_poly = [&](const nlohmann::json& pj) {
      HermPoly p = poly_from_json(pj);
      if (p.n() != n) throw Error(ErrorCode::ParseError, "field coefficient has wrong n");
      if (!p.is_holomorphic()) throw Error(ErrorCode::ParseError, "field coefficients must be holomorphic");
      return p;
    };
    for (int k = 0; k < n; ++k) Y.f[k] = read_poly(f[k]);
    if (j.contains("f_w")) {
      const auto& fw = j.at("f_w");
      if (!fw.is_array() || static_cast<int>(fw.size()) != n) {
        throw Error(ErrorCode::ParseError, "\"f_w\" must have n entries");
      }
      for (int k = 0; k < n; ++k) Y.f_w[k] = read_poly(fw[k]);
    }
    if (j.contains("g")) Y.g0 = read_poly(j.at("g"));
    if (j.contains("g_w")) Y.g1 = read_poly(j.at("g_w"));
    if (j.contains("g_ww")) Y.g2 = gaussian_from_json(j.at("g_ww"));
    if (j.contains("a_scalar")) {
      const Rational a = rational_from_json(j.at("a_scalar"));
      if (Y.weight == 1) {
        Y.g2 += GaussianRational(a);
      } else {
        Y.g1.add_term(Exponent(2 * n, 0), GaussianRational(a));
      }
    }
    return Y;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("vector field: ") + e.what());
  }
}

}  // namespace crkit::poly
