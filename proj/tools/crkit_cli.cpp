// Command-line front end. Talks to the library only through crkit.h; reports
// go to stdout as JSON, one-line summaries and errors go to stderr.
// Exit status: 0 all checks passed, 1 analysis failure, 2 usage or I/O error.

#include "crkit/crkit.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text) {
  if (text.empty()) throw UsageError("empty number");
  const auto slash = text.find('/');
  std::size_t used = 0;
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash), &used);
      if (used != slash) throw UsageError("bad number '" + text + "'");
      const std::string den_text = text.substr(slash + 1);
      const double den = std::stod(den_text, &used);
      if (used != den_text.size() || den == 0) throw UsageError("bad number '" + text + "'");
      return num / den;
    }
    const double v = std::stod(text, &used);
    if (used != text.size()) throw UsageError("bad number '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad number '" + text + "'");
  }
}

// Accepts "x", "p/q", "x+yi", "x-yi", "yi", "i", "-i".
std::pair<double, double> parse_complex(std::string text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.empty()) throw UsageError("empty number");
  if (t.back() != 'i' && t.back() != 'j') return {parse_real(t), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : t.substr(0, split);
  std::string im = split == std::string::npos ? t : t.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::vector<double> real_vector(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const auto& t : tokens) {
    const auto [re, im] = parse_complex(t);
    if (im != 0.0) throw UsageError("--b entries must be real");
    out.push_back(re);
  }
  return out;
}

std::vector<double> interleaved(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const auto& t : tokens) {
    const auto [re, im] = parse_complex(t);
    out.push_back(re);
    out.push_back(im);
  }
  return out;
}

crkit_config config_from_env() {
  crkit_config cfg = crkit_config_default();
  if (const char* tol = std::getenv("CRKIT_TOL")) {
    cfg.residual_tol = parse_real(tol);
    if (!(cfg.residual_tol > 0)) throw UsageError("CRKIT_TOL must be positive");
  }
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_usage_status(crkit_status s) {
  return s == CRKIT_PARSE_ERROR || s == CRKIT_IO_ERROR || s == CRKIT_INVALID_ARGUMENT || s == CRKIT_UNKNOWN_FIXTURE;
}

int fail(crkit_status s, const std::string& what) {
  std::cerr << what << ": " << crkit_last_error() << "\n";
  return is_usage_status(s) ? 2 : 1;
}

class ModelHandle {
 public:
  ModelHandle() = default;
  ModelHandle(const ModelHandle&) = delete;
  ModelHandle& operator=(const ModelHandle&) = delete;
  ~ModelHandle() { crkit_model_free(model_); }
  crkit_model** out() { return &model_; }
  const crkit_model* get() const { return model_; }

 private:
  crkit_model* model_ = nullptr;
};

// Prints the report and a short summary; returns the exit status.
int finish(crkit_status s, char* json, int passed, const std::string& what) {
  if (s != CRKIT_OK) return fail(s, what);
  std::cout << json;
  std::string summary = passed ? "ok" : "FAILED";
  try {
    const auto j = nlohmann::json::parse(json);
    if (j.contains("errors")) {
      for (const auto& e : j["errors"]) summary += "; " + e.value("stage", "") + ": " + e.value("message", "");
    }
    if (j.contains("cases")) {
      for (const auto& c : j["cases"]) {
        std::size_t ok = 0;
        for (const auto& k : c["checks"]) ok += k["pass"].get<bool>();
        summary += "\n  " + c["name"].get<std::string>() + ": " + std::to_string(ok) + "/" +
                   std::to_string(c["checks"].size()) + " checks passed";
        for (const auto& k : c["checks"]) {
          if (!k["pass"].get<bool>()) summary += "\n    failed: " + k["name"].get<std::string>();
        }
      }
    }
  } catch (const nlohmann::json::exception&) {
  }
  crkit_string_free(json);
  std::cerr << what << ": " << summary << "\n";
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crkit: checks for quadric and polynomial CR models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(crkit_version()));

  // quadric ------------------------------------------------------------------
  auto* quadric = app.add_subcommand("quadric", "quadric models Re w_j = z^* A_j z");
  quadric->require_subcommand(1);
  struct QuadricArgs {
    std::string file;
    std::vector<std::string> b, a, V;
    std::uint64_t seed = 0;
  } qa;
  auto add_quadric_opts = [&](CLI::App* sub) {
    sub->add_option("file", qa.file, "quadric JSON file")->required();
    sub->add_option("--b", qa.b, "real d-vector (comma separated)")->delimiter(',');
    sub->add_option("--a", qa.a, "complex d-vector, entries like 0.2 or 1/5 or 0.1-0.2i")->delimiter(',');
    sub->add_option("--V", qa.V, "complex n-vector")->delimiter(',');
    sub->add_option("--seed", qa.seed, "seed for randomized searches");
  };
  auto* q_analyze = quadric->add_subcommand("analyze", "full analysis report");
  add_quadric_opts(q_analyze);
  auto* q_jet = quadric->add_subcommand("jet-check", "jet block against finite differences");
  add_quadric_opts(q_jet);

  // model --------------------------------------------------------------------
  auto* model = app.add_subcommand("model", "polynomial models Im w = Q(z, zbar)");
  model->require_subcommand(1);
  std::string model_file;
  bool allow_ph = false;
  auto add_model_file = [&](CLI::App* sub) {
    sub->add_option("file", model_file, "model JSON file")->required();
    sub->add_flag("--allow-pluriharmonic", allow_ph, "accept pluriharmonic terms in Q");
  };
  std::string weight = "all";
  auto* m_lie = model->add_subcommand("lie", "graded symmetry components");
  add_model_file(m_lie);
  m_lie->add_option("--weight", weight, "\"all\" or a weight such as -1/2");
  int samples = 10000;
  std::uint64_t model_seed = 0;
  auto* m_pc = model->add_subcommand("pseudoconvex", "search for a negative Levi eigenvalue");
  add_model_file(m_pc);
  m_pc->add_option("--samples", samples, "number of sample points")->check(CLI::PositiveNumber);
  m_pc->add_option("--seed", model_seed, "sampling seed");
  auto* m_sos = model->add_subcommand("sos", "sum of squares decomposition");
  add_model_file(m_sos);
  std::string chain_file;
  auto* m_chain = model->add_subcommand("chain-verify", "verify a symmetric chain");
  add_model_file(m_chain);
  m_chain->add_option("chain", chain_file, "chain JSON file")->required();

  // fixtures -----------------------------------------------------------------
  auto* fixtures = app.add_subcommand("fixtures", "built-in reference cases");
  fixtures->require_subcommand(1);
  auto* f_run = fixtures->add_subcommand("run", "run fixtures");
  std::string fixture_name = "all";
  std::string eps_text = "1/5";
  bool sweep = false;
  f_run->add_option("name", fixture_name, "c10, lewy, octic1, octic2, chain or all");
  f_run->add_option("--eps", eps_text, "eps for the c10 quadric");
  f_run->add_flag("--sweep", sweep, "run c10 for eps in {1/100, 1/20, 1/10, 1/5}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    char* json = nullptr;
    int passed = 0;
    if (q_analyze->parsed() || q_jet->parsed()) {
      const crkit_config cfg = config_from_env();
      ModelHandle h;
      crkit_status s = crkit_model_load_file(qa.file.c_str(), 0, h.out());
      if (s != CRKIT_OK) return fail(s, "load " + qa.file);
      const auto b = real_vector(qa.b);
      const auto a = interleaved(qa.a);
      const auto V = interleaved(qa.V);
      auto fn = q_analyze->parsed() ? crkit_quadric_analyze : crkit_quadric_jet_check;
      s = fn(h.get(), qa.b.empty() ? nullptr : b.data(), b.size(), qa.a.empty() ? nullptr : a.data(), a.size() / 2,
             qa.V.empty() ? nullptr : V.data(), V.size() / 2, &cfg, qa.seed, &json, &passed);
      return finish(s, json, passed, q_analyze->parsed() ? "quadric analyze" : "quadric jet-check");
    }
    if (model->parsed()) {
      ModelHandle h;
      crkit_status s = crkit_model_load_file(model_file.c_str(), allow_ph ? 1 : 0, h.out());
      if (s != CRKIT_OK) return fail(s, "load " + model_file);
      if (crkit_model_get_kind(h.get()) != CRKIT_MODEL_HYPERSURFACE) {
        std::cerr << "model commands need a polynomial model (\"kind\": \"model\")\n";
        return 2;
      }
      if (m_lie->parsed()) {
        s = crkit_model_lie(h.get(), weight.c_str(), &json, &passed);
        return finish(s, json, passed, "model lie");
      }
      if (m_pc->parsed()) {
        s = crkit_model_pseudoconvex(h.get(), samples, model_seed, &json, &passed);
        return finish(s, json, passed, "model pseudoconvex");
      }
      if (m_sos->parsed()) {
        s = crkit_model_sos(h.get(), &json, &passed);
        return finish(s, json, passed, "model sos");
      }
      const std::string chain = read_file(chain_file);
      s = crkit_model_chain_verify(h.get(), chain.c_str(), &json, &passed);
      return finish(s, json, passed, "model chain-verify");
    }
    const double eps = parse_real(eps_text);
    const crkit_status s = crkit_fixtures_run(fixture_name.c_str(), eps, sweep ? 1 : 0, &json, &passed);
    return finish(s, json, passed, "fixtures run");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
