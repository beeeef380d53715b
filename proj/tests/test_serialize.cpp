#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>

#include "systole/error.hpp"
#include "systole/serialize.hpp"
#include "systole/verifier.hpp"

using namespace systole;

TEST_CASE("mesh round trip") {
  const auto m = build_flat_torus({1, 0}, {0.3, 0.9}, 4);
  const auto back = mesh_from_json(Json::parse(mesh_to_json(m).dump()));
  CHECK(back.vertex_count() == m.vertex_count());
  CHECK(back.faces() == m.faces());
  REQUIRE(back.edge_count() == m.edge_count());
  for (int e = 0; e < m.edge_count(); ++e) CHECK(back.edge(e).length == m.edge(e).length);

  const auto path = std::filesystem::temp_directory_path() / "systole_mesh_roundtrip.json";
  save_mesh(m, path);
  CHECK(mesh_area(load_mesh(path)) == mesh_area(m));
  std::filesystem::remove(path);
}

TEST_CASE("mesh without lengths uses unit edges") {
  Json j = mesh_to_json(build_octahedron());
  j.erase("edge_lengths");
  const auto m = mesh_from_json(j);
  for (const auto& e : m.edges()) CHECK(e.length == 1.0);
}

TEST_CASE("malformed mesh documents") {
  CHECK_THROWS_AS(mesh_from_json(Json::parse(R"({"faces": []})")), Error);
  CHECK_THROWS_AS(mesh_from_json(Json::parse(R"({"vertices": 3, "faces": [[0, 1]]})")), Error);
  CHECK_THROWS_AS(mesh_from_json(Json::parse(R"({"vertices": 3, "faces": [[0, 1, 2]]})")), Error);
  CHECK_THROWS_AS(load_mesh("/nonexistent/mesh.json"), Error);
}

TEST_CASE("value type round trips") {
  const auto w = homological_systole(build_flat_torus({1, 0}, {0, 1}, 4));
  const auto w2 = witness_from_json(Json::parse(to_json(w).dump()));
  CHECK(w2.length == w.length);
  CHECK(w2.signature == w.signature);
  CHECK(w2.edges == w.edges);

  LoopGrowthSample s{{0.5, 1.0, 1.0 / 3.0 + 1.0}, {1, 5, 5}, 2, false};
  const auto s2 = growth_from_json(Json::parse(to_json(s).dump()));
  CHECK(s2.thresholds == s.thresholds);
  CHECK(s2.counts == s.counts);
  CHECK(s2.basepoint == 2);
  CHECK(to_csv(s).rfind("T,N\n0.5,1\n", 0) == 0);

  EntropyEstimate e{0.1 / 3.0, 1.0, 2.0, 1e-3, 0.2, 1.5, true, false};
  const auto e2 = entropy_from_json(Json::parse(to_json(e).dump()));
  CHECK(e2.h_est == e.h_est);
  CHECK(e2.polynomial_exponent == e.polynomial_exponent);

  OptimizationResult r;
  r.best_params = {0.1 / 3.0, 0.3, 1e-6, 0.0};
  r.best_value = std::numbers::pi;
  r.evaluations = 12345;
  r.certificate = {{"c", 1e-9}};
  const Json rj = to_json(r);
  for (const char* key : {"params", "value", "evaluations", "slacks"}) CHECK(rj.contains(key));
  const auto r2 = optimization_from_json(Json::parse(rj.dump()));
  CHECK(r2.best_params.alpha == r.best_params.alpha);
  CHECK(r2.best_value == r.best_value);
  CHECK(r2.certificate[0].slack == 1e-9);
}

TEST_CASE("claims round trip, including infinite interval ends") {
  for (const auto& c : run_all_claims()) {
    const auto c2 = claim_from_json(Json::parse(to_json(c).dump()));
    CHECK(c2.claim_id == c.claim_id);
    CHECK(c2.computed == c.computed);
    CHECK(c2.verdict == c.verdict);
    CHECK(c2.paper_value.index() == c.paper_value.index());
    if (const auto* iv = std::get_if<Interval>(&c.paper_value)) {
      const auto& iv2 = std::get<Interval>(c2.paper_value);
      CHECK(iv2.lo == iv->lo);
      CHECK(iv2.hi == iv->hi);
    }
  }
}
