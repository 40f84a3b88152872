#pragma once

// JSON encodings for exact polynomial data:
//   rational:   [num, den]        (integers beyond 2^53 become decimal strings)
//   polynomial: {"n": int, "terms": [{"alpha": [...], "beta": [...],
//                "re": [num, den], "im": [num, den]}]}

#include "crkit/polyalg.hpp"

#include <json.hpp>

namespace crkit::poly {

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json gaussian_to_json(const GaussianRational& c);
GaussianRational gaussian_from_json(const nlohmann::json& j);

nlohmann::json poly_to_json(const HermPoly& p);
/// Throws ParseError on malformed input.
HermPoly poly_from_json(const nlohmann::json& j);

}  // namespace crkit::poly
