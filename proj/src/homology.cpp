#include "systole/homology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "systole/error.hpp"

namespace systole {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using QueueEntry = std::pair<double, std::int64_t>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

CycleWitness exact_systole(const TriMesh& mesh, const CohomologyBasis& basis) {
  const int rank = basis.rank();
  const std::int64_t sheets = std::int64_t{1} << rank;
  const std::int64_t states = mesh.vertex_count() * sheets;

  std::vector<double> dist(static_cast<std::size_t>(states), kInf);
  std::vector<std::int64_t> pred(static_cast<std::size_t>(states), -1);
  std::vector<std::int64_t> touched;

  double best = kInf;
  std::int64_t best_end = -1;
  std::vector<DirectedEdge> best_walk;

  for (int source = 0; source < mesh.vertex_count(); ++source) {
    for (auto s : touched) {
      dist[static_cast<std::size_t>(s)] = kInf;
      pred[static_cast<std::size_t>(s)] = -1;
    }
    touched.clear();

    const std::int64_t start = source * sheets;
    MinQueue queue;
    dist[static_cast<std::size_t>(start)] = 0.0;
    touched.push_back(start);
    queue.emplace(0.0, start);
    best_end = -1;
    while (!queue.empty()) {
      const auto [d, state] = queue.top();
      queue.pop();
      if (d >= best) break;
      if (d > dist[static_cast<std::size_t>(state)]) continue;
      const int vertex = static_cast<int>(state / sheets);
      const std::uint64_t sheet = static_cast<std::uint64_t>(state % sheets);
      if (vertex == source && sheet != 0) {
        best = d;
        best_end = state;
        break;
      }
      for (const auto& [w, e] : mesh.neighbors(vertex)) {
        const std::int64_t next = w * sheets + static_cast<std::int64_t>(sheet ^ basis.edge_mask(e));
        const double nd = d + mesh.edge(e).length;
        if (nd < dist[static_cast<std::size_t>(next)]) {
          if (dist[static_cast<std::size_t>(next)] == kInf) touched.push_back(next);
          dist[static_cast<std::size_t>(next)] = nd;
          pred[static_cast<std::size_t>(next)] = state;
          queue.emplace(nd, next);
        }
      }
    }
    if (best_end >= 0) {
      best_walk.clear();
      for (std::int64_t s = best_end; s != start; s = pred[static_cast<std::size_t>(s)]) {
        const std::int64_t p = pred[static_cast<std::size_t>(s)];
        best_walk.push_back({static_cast<int>(p / sheets), static_cast<int>(s / sheets)});
      }
      std::reverse(best_walk.begin(), best_walk.end());
    }
  }

  CycleWitness w;
  w.edges = std::move(best_walk);
  w.length = cycle_length(mesh, w.edges);
  w.signature = cycle_signature(mesh, basis, w.edges);
  w.exact = true;
  return w;
}

// Shortest nontrivial fundamental cycle of shortest-path trees rooted at
// every vertex. Exact for homotopy but only an upper bound for homology.
CycleWitness heuristic_systole(const TriMesh& mesh, const CohomologyBasis& basis) {
  const auto n = static_cast<std::size_t>(mesh.vertex_count());
  double best = kInf;
  std::vector<DirectedEdge> best_walk;

  std::vector<double> dist(n);
  std::vector<int> pred_vertex(n), pred_edge(n);
  std::vector<std::uint64_t> mask(n);
  for (int root = 0; root < mesh.vertex_count(); ++root) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(pred_vertex.begin(), pred_vertex.end(), -1);
    std::fill(pred_edge.begin(), pred_edge.end(), -1);
    dist[static_cast<std::size_t>(root)] = 0.0;
    mask[static_cast<std::size_t>(root)] = 0;
    MinQueue queue;
    queue.emplace(0.0, root);
    while (!queue.empty()) {
      const auto [d, vv] = queue.top();
      queue.pop();
      const auto v = static_cast<std::size_t>(vv);
      if (d > dist[v]) continue;
      for (const auto& [w, e] : mesh.neighbors(static_cast<int>(vv))) {
        const double nd = d + mesh.edge(e).length;
        const auto wi = static_cast<std::size_t>(w);
        if (nd < dist[wi]) {
          dist[wi] = nd;
          pred_vertex[wi] = static_cast<int>(vv);
          pred_edge[wi] = e;
          mask[wi] = mask[v] ^ basis.edge_mask(e);
          queue.emplace(nd, w);
        }
      }
    }
    for (int e = 0; e < mesh.edge_count(); ++e) {
      const auto& edge = mesh.edge(e);
      const auto a = static_cast<std::size_t>(edge.a), b = static_cast<std::size_t>(edge.b);
      if (pred_edge[a] == e || pred_edge[b] == e) continue;
      if ((mask[a] ^ mask[b] ^ basis.edge_mask(e)) == 0) continue;
      const double len = dist[a] + dist[b] + edge.length;
      if (len < best) {
        best = len;
        std::vector<DirectedEdge> walk;
        for (int x = edge.a; x != root; x = pred_vertex[static_cast<std::size_t>(x)]) {
          walk.push_back({pred_vertex[static_cast<std::size_t>(x)], x});
        }
        std::reverse(walk.begin(), walk.end());
        walk.push_back({edge.a, edge.b});
        for (int x = edge.b; x != root; x = pred_vertex[static_cast<std::size_t>(x)]) {
          walk.push_back({x, pred_vertex[static_cast<std::size_t>(x)]});
        }
        best_walk = std::move(walk);
      }
    }
  }

  CycleWitness w;
  w.edges = std::move(best_walk);
  w.length = cycle_length(mesh, w.edges);
  w.signature = cycle_signature(mesh, basis, w.edges);
  w.exact = false;
  return w;
}

}  // namespace

CohomologyBasis::CohomologyBasis(const TriMesh& mesh) : edge_count_(static_cast<std::size_t>(mesh.edge_count())) {
  const auto edges = static_cast<std::size_t>(mesh.edge_count());
  const auto faces = static_cast<std::size_t>(mesh.face_count());

  // Primal BFS tree from vertex 0.
  std::vector<char> in_tree(edges, 0);
  {
    std::vector<char> seen(static_cast<std::size_t>(mesh.vertex_count()), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const auto& [w, e] : mesh.neighbors(v)) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        in_tree[static_cast<std::size_t>(e)] = 1;
        q.push(w);
      }
    }
  }

  // Dual BFS tree over faces, crossing only non-tree edges.
  std::vector<std::array<int, 2>> edge_faces(edges, {-1, -1});
  for (std::size_t f = 0; f < faces; ++f) {
    for (int e : mesh.face_edges(static_cast<int>(f))) {
      auto& slot = edge_faces[static_cast<std::size_t>(e)];
      (slot[0] < 0 ? slot[0] : slot[1]) = static_cast<int>(f);
    }
  }
  std::vector<char> in_cotree(edges, 0);
  std::vector<int> parent_edge(faces, -1);
  std::vector<int> order;
  {
    std::vector<char> seen(faces, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      order.push_back(f);
      for (int e : mesh.face_edges(f)) {
        if (in_tree[static_cast<std::size_t>(e)]) continue;
        const auto& ef = edge_faces[static_cast<std::size_t>(e)];
        const int g = ef[0] == f ? ef[1] : ef[0];
        if (seen[static_cast<std::size_t>(g)]) continue;
        seen[static_cast<std::size_t>(g)] = 1;
        in_cotree[static_cast<std::size_t>(e)] = 1;
        parent_edge[static_cast<std::size_t>(g)] = e;
        q.push(g);
      }
    }
  }

  for (std::size_t e = 0; e < edges; ++e) {
    if (!in_tree[e] && !in_cotree[e]) leftover_.push_back(static_cast<int>(e));
  }
  rank_ = static_cast<int>(leftover_.size());
  if (rank_ != 2 - mesh.euler_characteristic()) {
    throw Error(ErrorKind::InvalidComplex, "tree-cotree decomposition left " + std::to_string(rank_) +
                                               " edges, expected 2g");
  }

  const auto r = static_cast<std::size_t>(rank_);
  values_.assign(edges * r, 0);
  for (std::size_t j = 0; j < r; ++j) values_[static_cast<std::size_t>(leftover_[j]) * r + j] = 1;

  // Peel the dual tree from the leaves: each face's parent edge is the only
  // unknown left when the face is processed.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int f = *it;
    const int unknown = parent_edge[static_cast<std::size_t>(f)];
    if (unknown < 0) continue;
    const auto& fe = mesh.face_edges(f);
    const auto& fs = mesh.face_signs(f);
    int unknown_sign = 0;
    for (int k = 0; k < 3; ++k) {
      if (fe[k] == unknown) unknown_sign = fs[k];
    }
    for (std::size_t j = 0; j < r; ++j) {
      int sum = 0;
      for (int k = 0; k < 3; ++k) {
        if (fe[k] != unknown) sum += fs[k] * values_[static_cast<std::size_t>(fe[k]) * r + j];
      }
      values_[static_cast<std::size_t>(unknown) * r + j] = -sum * unknown_sign;
    }
  }

  masks_.assign(edges, 0);
  if (rank_ <= 64) {
    for (std::size_t e = 0; e < edges; ++e) {
      std::uint64_t m = 0;
      for (std::size_t j = 0; j < r; ++j) {
        if (values_[e * r + j] % 2 != 0) m |= std::uint64_t{1} << j;
      }
      masks_[e] = m;
    }
  }
}

std::span<const int> CohomologyBasis::edge_values(int e) const {
  const auto r = static_cast<std::size_t>(rank_);
  return std::span<const int>(values_).subspan(static_cast<std::size_t>(e) * r, r);
}

double cycle_length(const TriMesh& mesh, std::span<const DirectedEdge> walk) {
  double total = 0.0;
  for (const auto& de : walk) {
    const auto e = mesh.find_edge(de.from, de.to);
    if (!e) throw Error(ErrorKind::Domain, "walk uses a pair of vertices that is not an edge");
    total += mesh.edge(*e).length;
  }
  return total;
}

std::vector<std::uint8_t> cycle_signature(const TriMesh& mesh, const CohomologyBasis& basis,
                                          std::span<const DirectedEdge> walk) {
  if (walk.empty()) throw Error(ErrorKind::Domain, "empty walk");
  std::vector<long long> sum(static_cast<std::size_t>(basis.rank()), 0);
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const auto& de = walk[i];
    if (walk[(i + 1) % walk.size()].from != de.to) throw Error(ErrorKind::Domain, "walk is not closed and connected");
    const auto e = mesh.find_edge(de.from, de.to);
    if (!e) throw Error(ErrorKind::Domain, "walk uses a pair of vertices that is not an edge");
    const int sign = de.from < de.to ? 1 : -1;
    const auto vals = basis.edge_values(*e);
    for (std::size_t j = 0; j < vals.size(); ++j) sum[j] += sign * vals[j];
  }
  std::vector<std::uint8_t> out(sum.size());
  for (std::size_t j = 0; j < sum.size(); ++j) out[j] = static_cast<std::uint8_t>(std::llabs(sum[j]) % 2);
  return out;
}

CycleWitness homological_systole(const TriMesh& mesh, const SystoleOptions& options) {
  const int genus = mesh_genus(mesh);
  if (genus == 0) {
    throw Error(ErrorKind::NoNontrivialCycle, "genus-0 surface has no homologically nontrivial cycle");
  }
  const CohomologyBasis basis(mesh);
  if (options.force_heuristic && basis.rank() <= 64) return heuristic_systole(mesh, basis);
  if (basis.rank() > options.max_cover_exponent || basis.rank() > 62) {
    if (!options.allow_heuristic || basis.rank() > 64) {
      throw ResourceError("signature cover needs 2^" + std::to_string(basis.rank()) +
                              " sheets, above the limit 2^" + std::to_string(options.max_cover_exponent) +
                              "; rerun with the heuristic flag for a non-exact upper bound",
                          "no search performed");
    }
    return heuristic_systole(mesh, basis);
  }
  return exact_systole(mesh, basis);
}

}  // namespace systole
