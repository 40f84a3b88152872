#include "crkit/crkit.h"

#include "crkit/errors.hpp"
#include "crkit/report.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct crkit_model {
  crkit::report::LoadedModel loaded;
};

namespace {

thread_local std::string g_last_error;

crkit_status status_of(crkit::ErrorCode code) {
  // ErrorCode and crkit_status list the codes in the same order.
  return static_cast<crkit_status>(static_cast<int>(code) + 1);
}

template <typename F>
crkit_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return CRKIT_OK;
  } catch (const crkit::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return CRKIT_INTERNAL_ERROR;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const crkit::report::Report& r, char** json, int* passed) {
  if (json == nullptr) throw crkit::Error(crkit::ErrorCode::InvalidArgument, "json output pointer is NULL");
  *json = copy_string(crkit::report::dump(r.json));
  if (passed != nullptr) *passed = r.ok ? 1 : 0;
}

void need_model(const crkit_model* model) {
  if (model == nullptr) throw crkit::Error(crkit::ErrorCode::InvalidArgument, "model is NULL");
}

crkit::numerics::ToleranceConfig to_cfg(const crkit_config* c) {
  crkit::numerics::ToleranceConfig cfg;
  if (c != nullptr) {
    cfg.residual_tol = c->residual_tol;
    cfg.rank_tol = c->rank_tol;
    cfg.series_tail_tol = c->series_tail_tol;
    cfg.max_iterations = c->max_iterations;
  }
  cfg.validate();
  return cfg;
}

crkit::report::QuadricRequest make_request(const double* b, size_t nb, const double* a, size_t na, const double* V,
                                           size_t nV, const crkit_config* cfg, uint64_t seed) {
  crkit::report::QuadricRequest req;
  req.cfg = to_cfg(cfg);
  req.seed = seed;
  if (b != nullptr) {
    req.b = crkit::numerics::RVector(static_cast<Eigen::Index>(nb));
    for (size_t k = 0; k < nb; ++k) (*req.b)(static_cast<Eigen::Index>(k)) = b[k];
  }
  auto complex_vec = [](const double* p, size_t n) {
    crkit::numerics::CVector v(static_cast<Eigen::Index>(n));
    for (size_t k = 0; k < n; ++k) v(static_cast<Eigen::Index>(k)) = {p[2 * k], p[2 * k + 1]};
    return v;
  };
  if (a != nullptr) req.a = complex_vec(a, na);
  if (V != nullptr) req.V = complex_vec(V, nV);
  return req;
}

}  // namespace

extern "C" {

const char* crkit_version(void) { return crkit::report::kToolVersion; }

const char* crkit_status_string(crkit_status status) {
  if (status == CRKIT_OK) return "Ok";
  if (status == CRKIT_INTERNAL_ERROR) return "InternalError";
  if (status > CRKIT_OK && status < CRKIT_INTERNAL_ERROR) {
    return crkit::to_string(static_cast<crkit::ErrorCode>(static_cast<int>(status) - 1));
  }
  return "Unknown";
}

const char* crkit_last_error(void) { return g_last_error.c_str(); }

void crkit_string_free(char* s) { std::free(s); }

crkit_config crkit_config_default(void) {
  const crkit::numerics::ToleranceConfig d;
  return {d.residual_tol, d.rank_tol, d.series_tail_tol, d.max_iterations};
}

crkit_status crkit_model_load_file(const char* path, int allow_pluriharmonic, crkit_model** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) throw crkit::Error(crkit::ErrorCode::InvalidArgument, "NULL argument");
    *out = new crkit_model{crkit::report::load_model_file(path, allow_pluriharmonic != 0)};
  });
}

crkit_status crkit_model_load_json(const char* text, int allow_pluriharmonic, crkit_model** out) {
  return guarded([&] {
    if (text == nullptr || out == nullptr) throw crkit::Error(crkit::ErrorCode::InvalidArgument, "NULL argument");
    *out = new crkit_model{crkit::report::load_model_text(text, allow_pluriharmonic != 0)};
  });
}

void crkit_model_free(crkit_model* model) { delete model; }

crkit_model_kind crkit_model_get_kind(const crkit_model* model) {
  return model != nullptr && !model->loaded.is_quadric() ? CRKIT_MODEL_HYPERSURFACE : CRKIT_MODEL_QUADRIC;
}

int crkit_model_dims(const crkit_model* model, int* n, int* d_or_m) {
  if (model == nullptr) return -1;
  int a = 0;
  int b = 0;
  if (model->loaded.is_quadric()) {
    a = model->loaded.quadric().n;
    b = model->loaded.quadric().d;
  } else {
    a = model->loaded.hypersurface().n;
    b = model->loaded.hypersurface().m;
  }
  if (n != nullptr) *n = a;
  if (d_or_m != nullptr) *d_or_m = b;
  return 0;
}

crkit_status crkit_quadric_analyze(const crkit_model* model, const double* b, size_t nb, const double* a, size_t na,
                                   const double* V, size_t nV, const crkit_config* cfg, uint64_t seed, char** json,
                                   int* passed) {
  return guarded([&] {
    need_model(model);
    emit(crkit::report::run_quadric_analysis(model->loaded, make_request(b, nb, a, na, V, nV, cfg, seed)), json,
         passed);
  });
}

crkit_status crkit_quadric_jet_check(const crkit_model* model, const double* b, size_t nb, const double* a, size_t na,
                                     const double* V, size_t nV, const crkit_config* cfg, uint64_t seed, char** json,
                                     int* passed) {
  return guarded([&] {
    need_model(model);
    emit(crkit::report::run_jet_check(model->loaded, make_request(b, nb, a, na, V, nV, cfg, seed)), json, passed);
  });
}

crkit_status crkit_model_lie(const crkit_model* model, const char* weight, char** json, int* passed) {
  return guarded([&] {
    need_model(model);
    emit(crkit::report::run_model_lie(model->loaded, weight != nullptr ? weight : "all"), json, passed);
  });
}

crkit_status crkit_model_pseudoconvex(const crkit_model* model, int samples, uint64_t seed, char** json, int* passed) {
  return guarded([&] {
    need_model(model);
    emit(crkit::report::run_pseudoconvex(model->loaded, samples, seed), json, passed);
  });
}

crkit_status crkit_model_sos(const crkit_model* model, char** json, int* passed) {
  return guarded([&] {
    need_model(model);
    emit(crkit::report::run_sos(model->loaded), json, passed);
  });
}

crkit_status crkit_model_chain_verify(const crkit_model* model, const char* chain_json, char** json, int* passed) {
  return guarded([&] {
    need_model(model);
    if (chain_json == nullptr) throw crkit::Error(crkit::ErrorCode::InvalidArgument, "chain is NULL");
    nlohmann::json chain;
    try {
      chain = nlohmann::json::parse(chain_json);
    } catch (const nlohmann::json::exception& e) {
      throw crkit::Error(crkit::ErrorCode::ParseError, e.what());
    }
    emit(crkit::report::run_chain_verify(model->loaded, chain), json, passed);
  });
}

crkit_status crkit_fixtures_run(const char* name, double eps, int sweep, char** json, int* passed) {
  return guarded([&] {
    emit(crkit::report::run_fixtures(name != nullptr ? name : "all", eps, sweep != 0), json, passed);
  });
}

}  // extern "C"
