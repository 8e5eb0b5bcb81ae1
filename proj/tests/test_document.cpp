#include <doctest.h>

#include <functional>

#include "fmetric/audit.hpp"
#include "fmetric/document.hpp"

using namespace fmetric;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DocumentError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("space documents") {
  const json doc = parse_document(R"({"points": ["a", "b"], "D": [[0, 2.5], [2.5, 0]]})");
  const FiniteSpace s = space_from_json(doc);
  CHECK(s.labels() == std::vector<std::string>{"a", "b"});
  CHECK(s(0, 1) == 2.5);
  CHECK(to_json(s) == doc);

  // Symmetry is validated later, not assumed.
  const FiniteSpace asym = space_from_json(parse_document(R"({"points": ["a", "b"], "D": [[0, 1], [2, 0]]})"));
  CHECK_FALSE(verify_d1_d2(asym).pass);

  CHECK(error_of([] { space_from_json(parse_document(R"({"D": [[0]]})")); }).find("points") != std::string::npos);
  CHECK(error_of([] { space_from_json(parse_document(R"({"points": ["a", "b"], "D": [[0, 1]]})")); })
            .find("/D") != std::string::npos);
  CHECK(error_of([] { space_from_json(parse_document(R"({"points": ["a", "b"], "D": [[0, 1], [1, "x"]]})")); })
            .find("/D/1/1") != std::string::npos);
  CHECK(error_of([] { space_from_json(parse_document(R"({"points": ["a", "a"], "D": [[0, 1], [1, 0]]})")); })
            .find("duplicate") != std::string::npos);
  CHECK(error_of([] { parse_document("{\"points\": [", "x.json"); }).find("x.json") == 0);
}

TEST_CASE("space documents round-trip over the corpus") {
  AuditConfig cfg;
  for (std::size_t i = 0; i < 50; ++i) {
    const FiniteSpace s = corpus_space(cfg, i);
    const FiniteSpace back = space_from_json(parse_document(to_json(s).dump()));
    CHECK(back.dist() == s.dist());
    CHECK(back.labels() == s.labels());
  }
}

TEST_CASE("control function documents") {
  const json doc = parse_document(R"({"alpha": 300, "pieces": [
      {"form": "negrecip", "a": 1, "b": 0, "upper": 1},
      {"form": "affine", "a": 1, "b": 0, "upper": null}]})");
  const FParams p = fparams_from_json(doc);
  CHECK(p.alpha() == 300.0);
  CHECK(p.f() == paper_control_function());
  CHECK(fparams_from_json(parse_document(to_json(p).dump())).f() == p.f());

  const json power = parse_document(R"({"pieces": [
      {"form": "log", "a": 1, "b": 0, "upper": 2},
      {"form": "power", "a": 1, "b": 0, "p": 2, "upper": null}]})");
  const ControlFunction f = control_function_from_json(power);
  CHECK(f.pieces()[1].p == 2.0);
  CHECK(control_function_from_json(parse_document(to_json(f).dump())) == f);

  CHECK(error_of([] { control_function_from_json(parse_document(R"({"pieces": [{"form": "cubic", "a": 1, "b": 0, "upper": null}]})")); })
            .find("/pieces/0/form") != std::string::npos);
  CHECK(error_of([] { control_function_from_json(parse_document(R"({"pieces": [{"form": "power", "a": 1, "b": 0, "upper": null}]})")); })
            .find("\"p\"") != std::string::npos);
  CHECK(error_of([] { fparams_from_json(parse_document(R"({"pieces": [{"form": "log", "a": 1, "b": 0, "upper": null}]})")); })
            .find("alpha") != std::string::npos);
  CHECK(error_of([] { fparams_from_json(parse_document(R"({"alpha": 0, "pieces": [{"form": "affine", "a": 1, "b": 0, "upper": null}]})")); })
            .find("F2") != std::string::npos);
}

TEST_CASE("sequence and map documents") {
  CHECK(sequence_from_json(parse_document(R"({"seq": [0, 2, 2]})"), 3).entries() ==
        std::vector<std::size_t>{0, 2, 2});
  CHECK(self_map_from_json(parse_document(R"({"map": [1, 1, 0]})"), 3).table() ==
        std::vector<std::size_t>{1, 1, 0});
  CHECK(error_of([] { sequence_from_json(parse_document(R"({"seq": []})"), 3); }) != "");
  CHECK(error_of([] { sequence_from_json(parse_document(R"({"seq": [0, 3]})"), 3); }).find("/seq/1") != std::string::npos);
  CHECK(error_of([] { sequence_from_json(parse_document(R"({"seq": [0, -1]})"), 3); }) != "");
  CHECK(error_of([] { self_map_from_json(parse_document(R"({"map": [0, 1]})"), 3); }).find("/map") != std::string::npos);
}

TEST_CASE("report documents") {
  const ExampleBundle b = build_paper_example();
  const InducedMetric d = induced_metric(b.space);
  const json m = to_json(d, b.space);
  CHECK(m["D"][2][3] == 5.0);
  CHECK(m["witness_chains"]["2,3"] == json::array({2, 0, 3}));
  CHECK(m["witness_chains"].size() == 5050);

  const json w = to_json(ball_witness(b.space, b.params, d, 0, 1.5));
  for (const char* key : {"center", "r", "delta", "ball_D", "ball_d_small", "contain_D_in_d", "contain_d_in_D"}) {
    CHECK(w.contains(key));
  }
  const json bundle = to_json(b);
  CHECK(bundle["alpha"] == 300.0);
  CHECK(space_from_json(bundle["space"]).dist() == b.space.dist());
  CHECK(fparams_from_json(bundle["f"]).f() == b.params.f());
}
