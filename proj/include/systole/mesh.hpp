#pragma once

// Triangulated closed oriented surfaces with per-edge lengths.

#include <array>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

namespace systole {

/// Undirected edge, stored with a < b.
struct MeshEdge {
  int a = 0;
  int b = 0;
  double length = 1.0;
};

/// A closed, connected, oriented triangulated surface whose metric is given
/// by edge lengths. Immutable after construction; the constructor validates
/// every manifold and metric invariant.
class TriMesh {
 public:
  using Face = std::array<int, 3>;
  using EdgeLength = std::tuple<int, int, double>;

  /// Throws Error(InvalidComplex) if the faces do not form a closed connected
  /// oriented 2-manifold, and Error(Domain) for bad lengths or a face that
  /// violates the strict triangle inequality. Empty `edge_lengths` means
  /// every edge has length 1.
  TriMesh(int vertex_count, std::vector<Face> faces, std::vector<EdgeLength> edge_lengths = {});

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  int face_count() const noexcept { return static_cast<int>(faces_.size()); }
  int euler_characteristic() const noexcept { return vertex_count() - edge_count() + face_count(); }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  const std::vector<MeshEdge>& edges() const noexcept { return edges_; }
  const MeshEdge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Edge indices of face f, in the order (f0,f1), (f1,f2), (f2,f0).
  const std::array<int, 3>& face_edges(int f) const { return face_edges_[static_cast<std::size_t>(f)]; }
  /// +1 where the face traverses its edge from a to b, -1 otherwise.
  const std::array<int, 3>& face_signs(int f) const { return face_signs_[static_cast<std::size_t>(f)]; }

  /// (neighbor, edge index) pairs around v, ordered by neighbor index.
  std::span<const std::pair<int, int>> neighbors(int v) const;

  std::optional<int> find_edge(int u, int v) const;

  double face_area(int f) const;

  /// Copy with every edge length multiplied by lambda > 0.
  TriMesh scaled(double lambda) const;

  std::vector<EdgeLength> edge_length_list() const;

 private:
  int vertex_count_;
  std::vector<Face> faces_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 3>> face_edges_;
  std::vector<std::array<int, 3>> face_signs_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

int mesh_genus(const TriMesh& m);

/// Sum of Heron areas.
double mesh_area(const TriMesh& m);

/// n x n lattice-aligned triangulation of R^2 / (Z u + Z v). Vertex i*n + j
/// sits at (i u + j v) / n; edges run along u/n, v/n and (u+v)/n.
/// Requires u, v independent and n >= 3.
TriMesh build_flat_torus(std::array<double, 2> u, std::array<double, 2> v, int n);

/// Boundary of the octahedron with unit edges (a sphere).
TriMesh build_octahedron();

/// Genus-g surface made by chaining g copies of the 3 x 3 unit square torus,
/// each glued to the next along a removed triangle. Every handle keeps its
/// unit-length lattice loops. V = 6g + 3.
TriMesh build_torus_chain(int genus);

}  // namespace systole
