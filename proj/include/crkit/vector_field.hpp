#pragma once

// Weighted homogeneous holomorphic vector fields on C^n x C (coordinates z, w)
// of the shape
//   sum_j (f_j(z) + f_w_j(z) w) d/dz_j + (g0(z) + g1(z) w + g2 w^2) d/dw,
// which covers every graded piece of the symmetry algebra of a model
// Im w = Q(z, zbar). Weights: z has weight 1/m, w has weight 1.

#include "crkit/polyalg.hpp"

#include <json.hpp>

#include <array>
#include <vector>

namespace crkit::poly {

struct GradedVectorField {
  int n = 0;
  Rational weight = 0;
  std::vector<HermPoly> f;    // coefficient of d/dz_j
  std::vector<HermPoly> f_w;  // coefficient of w d/dz_j
  HermPoly g0;                // coefficient of d/dw
  HermPoly g1;                // coefficient of w d/dw
  GaussianRational g2;        // coefficient of w^2 d/dw

  static GradedVectorField zero(int n, const Rational& weight);

  bool is_zero() const;
  /// True if f_w, g1 or g2 is nonzero.
  bool depends_on_w() const;

  GradedVectorField& operator+=(const GradedVectorField& o);
  GradedVectorField& operator*=(const GaussianRational& c);
  friend GradedVectorField operator+(GradedVectorField a, const GradedVectorField& b) { return a += b; }
  friend GradedVectorField operator*(const GaussianRational& c, GradedVectorField a) { return a *= c; }
  friend bool operator==(const GradedVectorField& a, const GradedVectorField& b);

  std::string to_string() const;
};

/// sum_j f_j dp/dz_j for a holomorphic p. Throws PreconditionViolation if the
/// field has w-dependent d/dz parts or p depends on zbar.
HermPoly apply_field(const GradedVectorField& Y, const HermPoly& p);

/// Coefficients (R0, R1, R2) of the polynomial R0 + u R1 + u^2 R2 obtained by
/// restricting 2 Re Z(Im w - Q) to w = u + iQ. Z is tangent iff all vanish.
std::array<HermPoly, 3> tangency_residual(const HermPoly& Q, const GradedVectorField& Z);
bool is_tangent(const HermPoly& Q, const GradedVectorField& Z);

/// [X, Y] as holomorphic vector fields. Throws InvalidArgument if the result
/// leaves the representable shape (w^2 in a d/dz part, w^3 or a nonconstant
/// w^2 coefficient in the d/dw part).
GradedVectorField lie_bracket(const GradedVectorField& X, const GradedVectorField& Y);

/// Exact test whether v lies in the real span of basis.
bool in_real_span(const GradedVectorField& v, const std::vector<GradedVectorField>& basis);

/// {"n", "weight": [num, den], "f": [poly...], "f_w"?, "g"?, "g_w"?, "g_ww"?}.
/// On input "a_scalar": [num, den] is also accepted; it is the real
/// coefficient of w^2 d/dw when weight = 1 and of w d/dw otherwise.
nlohmann::json field_to_json(const GradedVectorField& Y);
GradedVectorField field_from_json(const nlohmann::json& j);

}  // namespace crkit::poly
