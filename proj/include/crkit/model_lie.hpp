#pragma once

// Symmetry analysis of polynomial models Im w = Q(z, zbar): graded pieces of
// the infinitesimal automorphism algebra, rotations, holomorphic
// nondegeneracy, Levi form scans, sums of squares and Y-chains.

#include "crkit/numerics.hpp"
#include "crkit/polyalg.hpp"
#include "crkit/vector_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crkit::lie {

using numerics::CMatrix;
using numerics::Complex;
using poly::GaussianRational;
using poly::GradedVectorField;
using poly::HermPoly;
using poly::ModelHypersurface;
using poly::Rational;

/// -1, -1/m, 0, 1/m, ..., (m-2)/m, 1-1/m, 1 (in increasing order).
std::vector<Rational> admissible_weights(int m);

struct GradedComponentBasis {
  Rational weight;
  std::vector<GradedVectorField> basis;
  int real_dimension = 0;
  /// Number of real unknowns in the coefficient template.
  int unknowns = 0;
};

/// Exact basis of the weight-mu piece. Throws BadWeight for other weights.
GradedComponentBasis graded_component(const ModelHypersurface& model, const Rational& weight);
std::vector<GradedComponentBasis> all_components(const ModelHypersurface& model);

/// Weight-0 symmetries without the w d/dw part.
std::vector<GradedVectorField> rigid_rotations(const ModelHypersurface& model);

struct RotationClassification {
  CMatrix linear_map;
  CMatrix real_diag_part;
  CMatrix imag_diag_part;
  CMatrix nilpotent_part;
  std::vector<Complex> eigenvalues;
  bool real_diagonal_present = false;
  bool imaginary_diagonal_present = false;
  bool nilpotent_present = false;
};

/// Jordan-Chevalley split of the linear part z -> L z of a weight-0 field.
/// Throws PreconditionViolation unless every f_j is linear and the field has
/// no w-dependent d/dz part.
RotationClassification classify_rotation(const GradedVectorField& field, double tol = 1e-9);

struct HolomorphicNondegeneracy {
  bool nondegenerate = true;
  std::optional<GradedVectorField> witness;
  int degree_bound = 0;
};

/// Looks for nonzero z-only fields sum f_j d/dz_j, deg f_j <= degree_bound,
/// with sum f_j Q_{z_j} holomorphic. degree_bound <= 0 means m.
HolomorphicNondegeneracy holomorphically_nondegenerate(const ModelHypersurface& model, int degree_bound = 0);

/// Entry (i, k) is Q_{z_i zbar_k}.
std::vector<std::vector<HermPoly>> levi_form(const HermPoly& Q);

struct PseudoconvexityScan {
  bool witness_found = false;
  std::optional<std::vector<Complex>> witness;
  /// lambda_min at the witness, or the smallest normalized value seen.
  double lambda_min = 0;
  double min_relative_lambda = 0;
  int samples_used = 0;
};

/// Seeded search for a point where the Levi form has an eigenvalue below
/// -tol times its norm. Sample s lies on the sphere of radius 2^-(s mod 8).
PseudoconvexityScan pseudoconvexity_scan(const ModelHypersurface& model, int samples, std::uint64_t seed = 0,
                                         double tol = 1e-9);

/// Exact check, for holomorphic P, Q in two variables, that the Levi
/// determinant of P conj(Q) + Q conj(P) equals -|P_1 Q_2 - P_2 Q_1|^2.
bool levi_determinant_identity_check(const HermPoly& P, const HermPoly& Q);

struct SosDecomposition {
  bool psd = false;
  double min_eigenvalue = 0;
  double gram_norm = 0;
  std::vector<HermPoly> factors;
  /// Largest coefficient error of sum |P_l|^2 - Q, computed exactly.
  double reconstruction_error = 0;
  bool verified = false;
};

/// Gram-matrix test over the monomials of degree m/2. Throws NotBihomogeneous
/// unless every term of Q has bidegree (m/2, m/2).
SosDecomposition sos_decompose(const HermPoly& Q);

struct ChainSpec {
  GradedVectorField Y;
  std::vector<HermPoly> U;
  std::vector<HermPoly> V;
  std::vector<GaussianRational> c;  // Y(U^j) = c_j U^{j+1}, j = 1..N-1
  std::vector<GaussianRational> d;  // Y(V^j) = d_j V^{j+1}
};

struct ChainVerification {
  bool u_relations = false;
  bool v_relations = false;
  bool symmetric_constants = false;
  bool decomposition = false;
  bool tangent = false;
  bool ok = false;
  /// Number of nonzero terms in Q - Re sum_k U^k conj(V^{N-k+1}).
  std::size_t decomposition_residual_terms = 0;
};

ChainVerification verify_chain(const ModelHypersurface& model, const ChainSpec& spec);
ChainSpec chain_from_json(const nlohmann::json& j);

/// Complex dimension of {p homogeneous of degree nu in 2 variables : Y(p) = 0}.
int annihilator_dimension(const GradedVectorField& Y, int nu);

}  // namespace crkit::lie
