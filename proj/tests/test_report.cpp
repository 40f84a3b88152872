#include "crkit/errors.hpp"
#include "crkit/fixtures.hpp"
#include "crkit/report.hpp"

#include <doctest.h>

#include <fstream>
#include <functional>

using namespace crkit;
using namespace crkit::report;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(CRKIT_TEST_DATA) + "/" + name; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

QuadricRequest c10_request(double eps) {
  const auto p = fixtures::c10_params(eps);
  QuadricRequest req;
  req.b = p.b;
  req.a = p.a;
  req.V = p.V;
  req.restarts = 20;
  req.trials = 20;
  return req;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("loading models") {
    const auto q = load_model_file(data("c10.json"));
    CHECK(q.is_quadric());
    CHECK(q.quadric().d == 7);
    const auto h = load_model_file(data("lewy.json"));
    CHECK(!h.is_quadric());
    CHECK(h.hypersurface().m == 2);
    const auto bare = load_model_text(R"({"n": 1, "terms": [{"alpha": [1], "beta": [1], "re": 1}]})");
    CHECK(bare.hypersurface().Q == h.hypersurface().Q);
    CHECK(code_of([] { load_model_file(data("missing.json")); }) == ErrorCode::IoError);
    CHECK(code_of([] { load_model_text("{not json"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { load_model_text(R"({"kind": "cubic"})"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { load_model_text(R"({"kind": "quadric", "n": 1, "d": 2, "matrices": [[[1]]]})"); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] {
            load_model_text(R"({"kind": "quadric", "n": 2, "d": 1, "matrices": [[[1, [0, 1]], [[0, 1], 1]]]})");
          }) == ErrorCode::InvariantViolation);
    const std::string tube = R"({"n": 1, "terms": [{"alpha": [2], "beta": [0], "re": 1},
                                                   {"alpha": [0], "beta": [2], "re": 1},
                                                   {"alpha": [1], "beta": [1], "re": 2}]})";
    CHECK(code_of([&] { load_model_text(tube); }) == ErrorCode::InvariantViolation);
    CHECK_NOTHROW(load_model_text(tube, true));
  }

  TEST_CASE("quadric analysis report") {
    const auto model = load_model_file(data("c10.json"));
    const auto r = run_quadric_analysis(model, c10_request(0.2));
    CHECK(r.ok);
    const auto& j = r.json;
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["operation"] == "quadric analyze");
    CHECK(j["verdicts"]["da_nondegenerate"]["value"] == true);
    CHECK(j["verdicts"]["jet_block_invertible"]["value"] == true);
    CHECK(j["verdicts"]["stationary_minimal"]["value"] == true);
    CHECK(j["verdicts"]["d_nondegenerate"]["value"] == "none_by_dimension");
    CHECK(j["verdicts"]["strongly_pseudoconvex"]["value"] == false);
    CHECK(j["numerics"]["orbit_complex_dim"] == 3);
    for (const auto& [key, v] : j["verdicts"].items()) CHECK(v.contains("by"));
    CHECK(dump(j) == dump(run_quadric_analysis(model, c10_request(0.2)).json));
  }

  TEST_CASE("analysis with a = 0 and outside the contraction regime") {
    const auto model = load_model_file(data("c10.json"));
    auto req = c10_request(0.2);
    req.a = numerics::CVector::Zero(7);
    auto r = run_quadric_analysis(model, req);
    CHECK(r.ok);
    CHECK(r.json["verdicts"]["d_nondegenerate"]["value"] == "none_by_dimension");
    req = c10_request(0.6);
    r = run_quadric_analysis(model, req);
    CHECK(!r.ok);
    REQUIRE(r.json["errors"].size() == 1);
    CHECK(r.json["errors"][0]["code"] == "NoContraction");
    req = c10_request(0.2);
    req.V = numerics::CVector::Ones(2);
    CHECK(code_of([&] { run_quadric_analysis(model, req); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("jet check report") {
    const auto r = run_jet_check(load_model_file(data("c10.json")), c10_request(0.2));
    CHECK(r.ok);
    CHECK(r.json["verdicts"]["jacobian_matches_finite_differences"]["value"] == true);
    CHECK(r.json["verdicts"]["dX_matches_finite_differences"]["value"] == true);
  }

  TEST_CASE("model reports") {
    const auto lewy = load_model_file(data("lewy.json"));
    auto r = run_model_lie(lewy, "all");
    CHECK(r.ok);
    CHECK(r.json["numerics"]["dimension_sum"] == 8);
    CHECK(r.json["numerics"]["g_c_dimension"] == 0);
    r = run_model_lie(lewy, "-1/2");
    CHECK(r.json["numerics"]["dimension_sum"] == 2);
    CHECK(code_of([&] { run_model_lie(lewy, "1/3"); }) == ErrorCode::BadWeight);
    CHECK(code_of([&] { run_model_lie(lewy, "half"); }) == ErrorCode::InvalidArgument);

    r = run_pseudoconvex(load_model_file(data("chain_model.json")), 10000, 0);
    CHECK(r.json["verdicts"]["negative_levi_witness"]["value"] == true);
    r = run_sos(lewy);
    CHECK(r.json["verdicts"]["gram_psd"]["value"] == true);
    CHECK(code_of([] { run_sos(load_model_file(data("octic2.json"))); }) == ErrorCode::NotBihomogeneous);

    std::ifstream in(data("chain.json"));
    const json chain = json::parse(in);
    r = run_chain_verify(load_model_file(data("chain_model.json")), chain);
    CHECK(r.ok);
    CHECK(code_of([&] { run_chain_verify(lewy, chain); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { run_chain_verify(lewy, json::object()); }) == ErrorCode::ParseError);
  }

  TEST_CASE("fixture report") {
    const auto r = run_fixtures("lewy", 0.2, false);
    CHECK(r.ok);
    CHECK(r.json["cases"].size() == 1);
    for (const auto& c : r.json["cases"][0]["checks"]) {
      const std::string source = c["source"];
      CHECK((source == "reference" || source == "elementary" || source == "oracle"));
      if (source == "oracle") CHECK(!c["oracle"].get<std::string>().empty());
    }
    CHECK(code_of([] { run_fixtures("nonexistent", 0.2, false); }) == ErrorCode::UnknownFixture);
  }
}
