#include "systole/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "systole/error.hpp"

namespace systole {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidComplex, msg); }

std::pair<int, int> ordered(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

// Kahan's numerically stable Heron formula.
double heron(double a, double b, double c) {
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  const double p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(std::max(0.0, p));
}

}  // namespace

TriMesh::TriMesh(int vertex_count, std::vector<Face> faces, std::vector<EdgeLength> edge_lengths)
    : vertex_count_(vertex_count), faces_(std::move(faces)) {
  if (vertex_count_ <= 0) invalid("mesh needs at least one vertex");
  if (faces_.empty()) invalid("mesh needs at least one face");

  std::map<std::pair<int, int>, int> directed;  // half-edge -> face
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const auto& t = faces_[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= vertex_count_) {
        invalid("face " + std::to_string(f) + " has an out-of-range vertex index");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      invalid("face " + std::to_string(f) + " repeats a vertex");
    }
    for (int k = 0; k < 3; ++k) {
      const std::pair<int, int> h{t[k], t[(k + 1) % 3]};
      if (!directed.emplace(h, static_cast<int>(f)).second) {
        invalid("directed edge (" + std::to_string(h.first) + "," + std::to_string(h.second) +
                ") used twice: edge borders more than two faces or orientation is inconsistent");
      }
    }
  }

  std::map<std::pair<int, int>, int> edge_index;
  for (const auto& [h, f] : directed) {
    if (!directed.contains({h.second, h.first})) {
      invalid("edge (" + std::to_string(h.first) + "," + std::to_string(h.second) +
              ") borders only one face; surface is not closed");
    }
    if (h.first < h.second) {
      edge_index.emplace(h, static_cast<int>(edges_.size()));
      edges_.push_back({h.first, h.second, 1.0});
    }
  }

  face_edges_.resize(faces_.size());
  face_signs_.resize(faces_.size());
  adjacency_.resize(static_cast<std::size_t>(vertex_count_));
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const int u = faces_[f][k], v = faces_[f][(k + 1) % 3];
      face_edges_[f][k] = edge_index.at(ordered(u, v));
      face_signs_[f][k] = u < v ? 1 : -1;
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adjacency_[static_cast<std::size_t>(edges_[e].a)].emplace_back(edges_[e].b, static_cast<int>(e));
    adjacency_[static_cast<std::size_t>(edges_[e].b)].emplace_back(edges_[e].a, static_cast<int>(e));
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  // Each vertex link must be a single cycle: walking the fan across shared
  // edges has to visit every incident face before returning.
  std::vector<std::vector<int>> fan(static_cast<std::size_t>(vertex_count_));
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (int k = 0; k < 3; ++k) fan[static_cast<std::size_t>(faces_[f][k])].push_back(static_cast<int>(f));
  }
  for (int v = 0; v < vertex_count_; ++v) {
    const auto& incident = fan[static_cast<std::size_t>(v)];
    if (incident.empty()) invalid("vertex " + std::to_string(v) + " is not used by any face");
    int f = incident.front();
    std::size_t steps = 0;
    do {
      const auto& t = faces_[static_cast<std::size_t>(f)];
      const int k = static_cast<int>(std::find(t.begin(), t.end(), v) - t.begin());
      const int prev = t[(k + 2) % 3];
      // Next face around v contains the half-edge (v, prev).
      f = directed.at({v, prev});
      ++steps;
    } while (f != incident.front() && steps <= incident.size());
    if (steps != incident.size()) {
      invalid("link of vertex " + std::to_string(v) + " is not a single cycle");
    }
  }

  // Connectivity.
  std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& [w, e] : adjacency_[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != vertex_count_) invalid("mesh is not connected");

  const int chi = euler_characteristic();
  if (chi > 2 || (chi % 2) != 0) {
    invalid("Euler characteristic " + std::to_string(chi) + " is not that of a closed orientable surface");
  }

  if (!edge_lengths.empty()) {
    std::vector<char> assigned(edges_.size(), 0);
    for (const auto& [i, j, len] : edge_lengths) {
      const auto it = edge_index.find(ordered(i, j));
      if (it == edge_index.end()) {
        invalid("edge length given for (" + std::to_string(i) + "," + std::to_string(j) +
                ") which is not an edge of the mesh");
      }
      if (!std::isfinite(len) || !(len > 0.0)) {
        throw Error(ErrorKind::Domain, "edge (" + std::to_string(i) + "," + std::to_string(j) +
                                           ") has a nonpositive or non-finite length");
      }
      const auto e = static_cast<std::size_t>(it->second);
      if (assigned[e] && edges_[e].length != len) {
        throw Error(ErrorKind::Domain, "conflicting lengths for edge (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
      }
      assigned[e] = 1;
      edges_[e].length = len;
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (!assigned[e]) {
        throw Error(ErrorKind::Domain, "edge (" + std::to_string(edges_[e].a) + "," +
                                           std::to_string(edges_[e].b) + ") has no length");
      }
    }
  }

  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const double a = edges_[static_cast<std::size_t>(face_edges_[f][0])].length;
    const double b = edges_[static_cast<std::size_t>(face_edges_[f][1])].length;
    const double c = edges_[static_cast<std::size_t>(face_edges_[f][2])].length;
    if (!(a + b > c && b + c > a && c + a > b)) {
      std::ostringstream os;
      os << "face " << f << " (" << faces_[f][0] << "," << faces_[f][1] << "," << faces_[f][2]
         << ") violates the strict triangle inequality";
      throw Error(ErrorKind::Domain, os.str());
    }
  }
}

std::span<const std::pair<int, int>> TriMesh::neighbors(int v) const {
  return adjacency_[static_cast<std::size_t>(v)];
}

std::optional<int> TriMesh::find_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) return std::nullopt;
  const auto& adj = adjacency_[static_cast<std::size_t>(u)];
  const auto it = std::lower_bound(adj.begin(), adj.end(), std::pair{v, -1});
  if (it != adj.end() && it->first == v) return it->second;
  return std::nullopt;
}

double TriMesh::face_area(int f) const {
  const auto& fe = face_edges(f);
  return heron(edge(fe[0]).length, edge(fe[1]).length, edge(fe[2]).length);
}

TriMesh TriMesh::scaled(double lambda) const {
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw Error(ErrorKind::Domain, "scale must be positive");
  auto lengths = edge_length_list();
  for (auto& [i, j, len] : lengths) len *= lambda;
  return TriMesh(vertex_count_, faces_, std::move(lengths));
}

std::vector<TriMesh::EdgeLength> TriMesh::edge_length_list() const {
  std::vector<EdgeLength> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.emplace_back(e.a, e.b, e.length);
  return out;
}

int mesh_genus(const TriMesh& m) {
  const int twice = 2 - m.euler_characteristic();
  if (twice < 0 || twice % 2 != 0) invalid("Euler characteristic does not give an integer genus");
  return twice / 2;
}

double mesh_area(const TriMesh& m) {
  double total = 0.0;
  for (int f = 0; f < m.face_count(); ++f) total += m.face_area(f);
  return total;
}

TriMesh build_flat_torus(std::array<double, 2> u, std::array<double, 2> v, int n) {
  for (double x : {u[0], u[1], v[0], v[1]}) {
    if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "lattice vectors must be finite");
  }
  const double cross = u[0] * v[1] - u[1] * v[0];
  const double nu = std::hypot(u[0], u[1]), nv = std::hypot(v[0], v[1]);
  if (!(std::abs(cross) > 1e-12 * nu * nv)) {
    throw Error(ErrorKind::Domain, "lattice vectors u, v are linearly dependent");
  }
  if (n < 3) {
    throw Error(ErrorKind::Domain, "torus subdivision must be >= 3 (smaller grids need parallel edges)");
  }
  const double dn = n;
  const double len_u = nu / dn;
  const double len_v = nv / dn;
  const double len_d = std::hypot(u[0] + v[0], u[1] + v[1]) / dn;

  auto id = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
  std::vector<TriMesh::Face> faces;
  std::vector<TriMesh::EdgeLength> lengths;
  faces.reserve(static_cast<std::size_t>(2 * n * n));
  lengths.reserve(static_cast<std::size_t>(3 * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int p = id(i, j), pu = id(i + 1, j), pv = id(i, j + 1), pd = id(i + 1, j + 1);
      // Orientation follows the sign of u x v so faces stay counterclockwise.
      if (cross > 0) {
        faces.push_back({p, pu, pd});
        faces.push_back({p, pd, pv});
      } else {
        faces.push_back({p, pd, pu});
        faces.push_back({p, pv, pd});
      }
      lengths.emplace_back(p, pu, len_u);
      lengths.emplace_back(p, pv, len_v);
      lengths.emplace_back(p, pd, len_d);
    }
  }
  return TriMesh(n * n, std::move(faces), std::move(lengths));
}

TriMesh build_octahedron() {
  // 0:+x 1:-x 2:+y 3:-y 4:+z 5:-z
  return TriMesh(6, {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}});
}

TriMesh build_torus_chain(int genus) {
  if (genus < 1) throw Error(ErrorKind::Domain, "torus chain needs genus >= 1");
  const TriMesh unit = build_flat_torus({1.0, 0.0}, {0.0, 1.0}, 3);
  auto local = [](int i, int j) { return i * 3 + j; };
  // Triangle glued to the previous copy, and the one glued to the next copy.
  // They are vertex-disjoint faces of the 3 x 3 grid.
  const TriMesh::Face front{local(0, 0), local(1, 0), local(1, 1)};
  const TriMesh::Face back{local(2, 1), local(0, 1), local(0, 2)};

  std::vector<TriMesh::Face> faces;
  std::vector<TriMesh::EdgeLength> lengths;
  std::vector<int> prev_map;
  int next_id = 0;
  for (int k = 0; k < genus; ++k) {
    std::vector<int> map(9, -1);
    if (k > 0) {
      // Orientation-reversing identification front(p,q,r) ~ back(r,q,p) of the
      // previous copy; it matches edge lengths (1/3, 1/3, sqrt(2)/3).
      map[static_cast<std::size_t>(front[0])] = prev_map[static_cast<std::size_t>(back[2])];
      map[static_cast<std::size_t>(front[1])] = prev_map[static_cast<std::size_t>(back[1])];
      map[static_cast<std::size_t>(front[2])] = prev_map[static_cast<std::size_t>(back[0])];
    }
    for (auto& slot : map) {
      if (slot < 0) slot = next_id++;
    }
    for (const auto& t : unit.faces()) {
      auto same = [&t](const TriMesh::Face& g) {
        return std::is_permutation(t.begin(), t.end(), g.begin());
      };
      if ((k > 0 && same(front)) || (k + 1 < genus && same(back))) continue;
      faces.push_back({map[static_cast<std::size_t>(t[0])], map[static_cast<std::size_t>(t[1])],
                       map[static_cast<std::size_t>(t[2])]});
    }
    for (const auto& e : unit.edges()) {
      lengths.emplace_back(map[static_cast<std::size_t>(e.a)], map[static_cast<std::size_t>(e.b)], e.length);
    }
    prev_map = std::move(map);
  }
  return TriMesh(next_id, std::move(faces), std::move(lengths));
}

}  // namespace systole
