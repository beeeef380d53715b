#include <doctest.h>

#include <cmath>
#include <numbers>

#include "systole/error.hpp"
#include "systole/mesh.hpp"
#include "systole/serialize.hpp"

using namespace systole;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Domain;
}

}  // namespace

TEST_CASE("square torus counts") {
  const auto m = build_flat_torus({1, 0}, {0, 1}, 4);
  CHECK(m.vertex_count() == 16);
  CHECK(m.edge_count() == 48);
  CHECK(m.face_count() == 32);
  CHECK(m.euler_characteristic() == 0);
  CHECK(mesh_genus(m) == 1);
  CHECK(mesh_area(m) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flat torus areas") {
  const auto hex = build_flat_torus({1, 0}, {0.5, std::numbers::sqrt3 / 2}, 6);
  CHECK(mesh_genus(hex) == 1);
  CHECK(std::abs(mesh_area(hex) - std::numbers::sqrt3 / 2) < 1e-12);
  for (int n : {3, 5, 8, 13}) CHECK(std::abs(mesh_area(build_flat_torus({1, 0}, {0, 1}, n)) - 1.0) < 1e-12);
  CHECK(std::abs(mesh_area(build_flat_torus({1, 0}, {0, 5}, 5)) - 5.0) < 1e-12);
}

TEST_CASE("genus of fixtures") {
  CHECK(mesh_genus(build_octahedron()) == 0);
  const auto g2 = load_mesh(std::string(SYSTOLE_TEST_DATA) + "/genus2.json");
  CHECK(g2.vertex_count() == 15);
  CHECK(g2.edge_count() == 51);
  CHECK(g2.face_count() == 34);
  CHECK(mesh_genus(g2) == 2);
  CHECK(mesh_genus(build_torus_chain(3)) == 3);
  CHECK(mesh_genus(build_torus_chain(4)) == 4);
}

TEST_CASE("equilateral face pair") {
  const TriMesh m(3, {{0, 1, 2}, {0, 2, 1}});
  CHECK(mesh_genus(m) == 0);
  CHECK(mesh_area(m) == doctest::Approx(2 * std::sqrt(3.0) / 4).epsilon(1e-15));
}

TEST_CASE("invalid complexes are rejected") {
  // Open surface: single triangle.
  CHECK(kind_of([] { TriMesh(3, {{0, 1, 2}}); }) == ErrorKind::InvalidComplex);
  // Inconsistent orientation.
  CHECK(kind_of([] { TriMesh(3, {{0, 1, 2}, {0, 1, 2}}); }) == ErrorKind::InvalidComplex);
  // Repeated vertex in a face.
  CHECK(kind_of([] { TriMesh(3, {{0, 0, 2}, {0, 2, 1}}); }) == ErrorKind::InvalidComplex);
  // Index out of range.
  CHECK(kind_of([] { TriMesh(3, {{0, 1, 5}, {0, 2, 1}}); }) == ErrorKind::InvalidComplex);
  // Two octahedra sharing a vertex: not a manifold.
  std::vector<TriMesh::Face> faces = build_octahedron().faces();
  for (auto f : build_octahedron().faces()) {
    for (int& v : f) v = v == 0 ? 0 : v + 5;
    faces.push_back(f);
  }
  CHECK(kind_of([&] { TriMesh(11, faces); }) == ErrorKind::InvalidComplex);
  // Disconnected: two separate octahedra.
  std::vector<TriMesh::Face> two = build_octahedron().faces();
  for (auto f : build_octahedron().faces()) {
    for (int& v : f) v += 6;
    two.push_back(f);
  }
  CHECK(kind_of([&] { TriMesh(12, two); }) == ErrorKind::InvalidComplex);
}

TEST_CASE("edge lengths are validated") {
  const auto faces = build_octahedron().faces();
  auto lengths = build_octahedron().edge_length_list();
  std::get<2>(lengths[0]) = 2.0;  // degenerate: 2 = 1 + 1
  CHECK(kind_of([&] { TriMesh(6, faces, lengths); }) == ErrorKind::Domain);
  std::get<2>(lengths[0]) = -1.0;
  CHECK(kind_of([&] { TriMesh(6, faces, lengths); }) == ErrorKind::Domain);
  lengths.pop_back();
  std::get<2>(lengths[0]) = 1.0;
  CHECK(kind_of([&] { TriMesh(6, faces, lengths); }) == ErrorKind::Domain);
}

TEST_CASE("torus constructor arguments") {
  CHECK(kind_of([] { build_flat_torus({1, 0}, {0, 1}, 2); }) == ErrorKind::Domain);
  CHECK(kind_of([] { build_flat_torus({1, 0}, {2, 0}, 4); }) == ErrorKind::Domain);
}

TEST_CASE("scaling") {
  const auto m = build_flat_torus({1, 0}, {0.3, 0.9}, 5);
  for (double l : {0.5, 2.0, 7.3}) {
    CHECK(mesh_area(m.scaled(l)) == doctest::Approx(l * l * mesh_area(m)).epsilon(1e-12));
  }
}

TEST_CASE("neighbors are sorted and consistent") {
  const auto m = build_flat_torus({1, 0}, {0, 1}, 4);
  for (int v = 0; v < m.vertex_count(); ++v) {
    const auto nb = m.neighbors(v);
    CHECK(nb.size() == 6);
    for (std::size_t i = 1; i < nb.size(); ++i) CHECK(nb[i - 1].first < nb[i].first);
    for (const auto& [w, e] : nb) CHECK(m.find_edge(v, w) == e);
  }
}
