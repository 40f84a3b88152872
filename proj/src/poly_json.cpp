#include "crkit/poly_json.hpp"

#include "crkit/errors.hpp"

#include <cstdint>

namespace crkit::poly {

namespace {

using nlohmann::json;

const mpz_class kJsonSafeLimit = mpz_class(1) << 53;

json integer_to_json(const mpz_class& v) {
  if (abs(v) <= kJsonSafeLimit) return json(static_cast<std::int64_t>(v.get_si()));
  return json(v.get_str());
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0) {
      throw Error(ErrorCode::ParseError, "bad integer string '" + j.get<std::string>() + "'");
    }
    return v;
  }
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

}  // namespace

json rational_to_json(const Rational& q) {
  return json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer() || j.is_string()) return Rational(integer_from_json(j));
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::ParseError, "rational must be [num, den], got " + j.dump());
  }
  const mpz_class den = integer_from_json(j[1]);
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  Rational q(integer_from_json(j[0]), den);
  q.canonicalize();
  return q;
}

json gaussian_to_json(const GaussianRational& c) {
  return json{{"re", rational_to_json(c.re())}, {"im", rational_to_json(c.im())}};
}

GaussianRational gaussian_from_json(const json& j) {
  if (!j.is_object()) {
    return GaussianRational(rational_from_json(j));
  }
  Rational re = j.contains("re") ? rational_from_json(j.at("re")) : Rational(0);
  Rational im = j.contains("im") ? rational_from_json(j.at("im")) : Rational(0);
  return {re, im};
}

json poly_to_json(const HermPoly& p) {
  json terms = json::array();
  const int n = p.n();
  for (const auto& [e, c] : p.terms()) {
    json alpha = json::array();
    json beta = json::array();
    for (int k = 0; k < n; ++k) {
      alpha.push_back(e[k]);
      beta.push_back(e[n + k]);
    }
    terms.push_back(json{{"alpha", alpha},
                         {"beta", beta},
                         {"re", rational_to_json(c.re())},
                         {"im", rational_to_json(c.im())}});
  }
  return json{{"n", n}, {"terms", terms}};
}

HermPoly poly_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms")) {
      throw Error(ErrorCode::ParseError, "polynomial needs \"n\" and \"terms\"");
    }
    const int n = j.at("n").get<int>();
    if (n < 1) throw Error(ErrorCode::ParseError, "n must be >= 1");
    HermPoly p(n);
    for (const auto& t : j.at("terms")) {
      const auto alpha = t.at("alpha").get<std::vector<int>>();
      const auto beta = t.contains("beta") ? t.at("beta").get<std::vector<int>>() : std::vector<int>(n, 0);
      if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n) {
        throw Error(ErrorCode::ParseError, "multi-index length differs from n");
      }
      Exponent e(2 * n);
      for (int k = 0; k < n; ++k) {
        if (alpha[k] < 0 || beta[k] < 0) throw Error(ErrorCode::ParseError, "negative exponent");
        e[k] = alpha[k];
        e[n + k] = beta[k];
      }
      Rational re = t.contains("re") ? rational_from_json(t.at("re")) : Rational(0);
      Rational im = t.contains("im") ? rational_from_json(t.at("im")) : Rational(0);
      p.add_term(e, GaussianRational(re, im));
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

}  // namespace crkit::poly
