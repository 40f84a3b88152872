#pragma once

// Model loading and JSON report assembly shared by the C API and the CLI.
// Reports are deterministic: identical input, flags, seed and version give
// byte-identical output.

#include "crkit/model_lie.hpp"
#include "crkit/numerics.hpp"
#include "crkit/polyalg.hpp"
#include "crkit/quadric.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace crkit::report {

inline constexpr const char* kToolVersion = "0.1.0";

struct LoadedModel {
  std::variant<quadric::QuadricModel, poly::ModelHypersurface> model;
  /// FNV-1a 64-bit hash of the canonical JSON dump, as 16 hex digits.
  std::string digest;

  bool is_quadric() const { return model.index() == 0; }
  const quadric::QuadricModel& quadric() const;
  const poly::ModelHypersurface& hypersurface() const;
};

/// Accepts {"kind": "quadric", "n", "d", "matrices"}, {"kind": "model", "Q":
/// poly, "allow_pluriharmonic"?} or a bare polynomial. Throws ParseError or
/// InvariantViolation.
LoadedModel load_model_json(const nlohmann::json& j, bool allow_pluriharmonic = false);
LoadedModel load_model_text(const std::string& text, bool allow_pluriharmonic = false);
/// Also throws IoError when the file cannot be read.
LoadedModel load_model_file(const std::string& path, bool allow_pluriharmonic = false);

std::string fnv1a_hex(const std::string& bytes);
/// Canonical serialization (sorted keys, two-space indent, trailing newline).
std::string dump(const nlohmann::json& j);

struct Report {
  nlohmann::json json;
  bool ok = false;
};

struct QuadricRequest {
  std::optional<numerics::RVector> b;  // default: first b found by the Levi search
  std::optional<numerics::CVector> a;  // default: 0
  std::optional<numerics::CVector> V;  // default: (1, ..., 1)
  numerics::ToleranceConfig cfg;
  std::uint64_t seed = 0;
  int restarts = 200;
  int trials = 200;
};

/// Full quadric pipeline. Errors of the jet analysis (e.g. NoContraction) are
/// recorded under "errors" and make ok false; the searches still run.
Report run_quadric_analysis(const LoadedModel& model, const QuadricRequest& req);
/// Jet block against finite differences of the 1-jet middle block.
Report run_jet_check(const LoadedModel& model, const QuadricRequest& req);

/// weight is "all" or a rational such as "-1/2".
Report run_model_lie(const LoadedModel& model, const std::string& weight);
Report run_pseudoconvex(const LoadedModel& model, int samples, std::uint64_t seed);
Report run_sos(const LoadedModel& model);
Report run_chain_verify(const LoadedModel& model, const nlohmann::json& chain);
Report run_fixtures(const std::string& name, double eps, bool sweep);

nlohmann::json config_json(const numerics::ToleranceConfig& cfg);
nlohmann::json complex_json(numerics::Complex z);
nlohmann::json matrix_json(const numerics::CMatrix& m);
nlohmann::json matrix_json(const numerics::RMatrix& m);

}  // namespace crkit::report
