#pragma once

// Built-in reference cases: the codimension-7 quadric in C^10 ("c10"), the
// Lewy hypersurface, two octic models ("octic1", "octic2") and a single
// symmetric chain model ("chain"). Each case is a list of numeric checks.

#include "crkit/model_lie.hpp"
#include "crkit/quadric.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace crkit::fixtures {

enum class Comparison { Near, Greater, AtMost, Equal };

struct Check {
  std::string name;
  double value = 0;
  double expected = 0;
  double tol = 0;
  Comparison comparison = Comparison::Near;
  /// "reference" (stated closed form or claim), "elementary", or "oracle".
  std::string source;
  /// For "oracle" values: the independent computation behind `expected`.
  std::string oracle;
  bool pass = false;
};

struct FixtureCase {
  std::string name;
  std::string description;
  std::vector<Check> checks;
  bool passed() const;
};

// Models ---------------------------------------------------------------------

quadric::QuadricModel c10_model();
/// b = (1+2eps, 2eps, 0...), a = (eps, eps, 0...), V = (1, 1, 1).
quadric::JetParameters c10_params(double eps);

/// Closed forms for the c10 quadric, written in the small roots alpha, gamma
/// of 2 eps x^2 + x + 2 eps = 0 and eps x^2 + x + eps = 0.
struct C10ClosedForms {
  double alpha = 0;
  double gamma = 0;
  numerics::CMatrix X;
  std::vector<numerics::CMatrix> K;
  std::vector<numerics::CMatrix> dX;
  numerics::RMatrix B1, B2;
  numerics::RMatrix C1, C2;
  /// C2 with entries (1,1) and (2,1) on the denominator 1 + 2 eps (alpha + gamma)
  /// where the derivative requires 1 + eps (alpha + gamma).
  numerics::RMatrix C2_variant;
};
C10ClosedForms c10_closed_forms(double eps);

poly::ModelHypersurface lewy_model();
/// n = 2: |z1|^8 + |z1|^6 (Re z1)^2 + |z2|^8.
poly::ModelHypersurface octic2_model();
/// n = 1: |z|^8 + |z|^6 (Re z)^2.
poly::ModelHypersurface octic1_model();

/// P = i z1^2 z2^3 (z1 - z2), R = 3 z1^3 z2^5 (z1 - z2), Q = P conj(R) + R conj(P).
poly::HermPoly chain_P();
poly::HermPoly chain_R();
poly::ModelHypersurface chain_model();
/// Y = z1 z2^2 (5 z1 - 6 z2) d/dz1 - z2^3 (4 z1 - 3 z2) d/dz2, weight 3/15.
poly::GradedVectorField chain_field();
lie::ChainSpec chain_spec();

// Runs -----------------------------------------------------------------------

FixtureCase run_c10(double eps = 0.2);
FixtureCase run_lewy();
FixtureCase run_octic2();
FixtureCase run_octic1();
FixtureCase run_chain();

std::vector<std::string> fixture_names();
inline const std::vector<double>& eps_sweep() {
  static const std::vector<double> values{0.01, 0.05, 0.1, 0.2};
  return values;
}

/// name is one of fixture_names() or "all"; throws UnknownFixture otherwise.
/// With sweep, c10 runs once per eps_sweep() value.
std::vector<FixtureCase> run(const std::string& name, double eps = 0.2, bool sweep = false);

nlohmann::json to_json(const std::vector<FixtureCase>& cases);

}  // namespace crkit::fixtures
