#pragma once

// Slow reference implementations used only by the tests. They share no code
// with the library beyond the TriMesh container.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "systole/mesh.hpp"

namespace oracle {

// Rank test over GF(2): is `v` in the span of the face boundaries?
class BoundarySpan {
 public:
  explicit BoundarySpan(const systole::TriMesh& m) : width_(static_cast<std::size_t>(m.edge_count())) {
    for (int f = 0; f < m.face_count(); ++f) {
      std::vector<bool> row(width_, false);
      for (int e : m.face_edges(f)) row[static_cast<std::size_t>(e)] = true;
      insert(row);
    }
  }

  bool contains(std::vector<bool> v) const {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot]) xor_into(v, row);
    }
    return std::none_of(v.begin(), v.end(), [](bool b) { return b; });
  }

 private:
  void insert(std::vector<bool> v) {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot]) xor_into(v, row);
    }
    auto it = std::find(v.begin(), v.end(), true);
    if (it == v.end()) return;
    const auto p = static_cast<std::size_t>(it - v.begin());
    for (auto& [pivot, row] : rows_) {
      if (row[p]) xor_into(row, v);
    }
    rows_.emplace_back(p, std::move(v));
  }

  static void xor_into(std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] != b[i];
  }

  std::size_t width_;
  std::vector<std::pair<std::size_t, std::vector<bool>>> rows_;
};

// Shortest simple edge cycle that is not a Z2 boundary, by exhaustive DFS
// over all simple cycles below a growing length cap.
inline double brute_force_systole(const systole::TriMesh& m) {
  const int n = m.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<double>> dist(un, std::vector<double>(un, inf));
  double min_edge = inf;
  for (const auto& e : m.edges()) {
    dist[e.a][e.b] = dist[e.b][e.a] = e.length;
    min_edge = std::min(min_edge, e.length);
  }
  for (int i = 0; i < n; ++i) dist[i][i] = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);

  const BoundarySpan span(m);
  std::vector<bool> used(static_cast<std::size_t>(m.edge_count()), false);
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);

  for (double cap = 3.0 * min_edge;; cap *= 1.25) {
    double best = inf;
    for (int s = 0; s < n; ++s) {
      auto dfs = [&](auto&& self, int v, double len) -> void {
        for (const auto& [w, e] : m.neighbors(v)) {
          const double next = len + m.edge(e).length;
          if (used[e]) continue;
          if (w == s) {
            if (next <= cap && next < best) {
              used[e] = true;
              if (!span.contains(used)) best = next;
              used[e] = false;
            }
            continue;
          }
          if (w < s || on_path[w] || next + dist[w][s] > cap) continue;
          used[e] = true;
          on_path[w] = true;
          self(self, w, next);
          used[e] = false;
          on_path[w] = false;
        }
      };
      on_path[s] = true;
      dfs(dfs, s, 0.0);
      on_path[s] = false;
    }
    if (best < inf) return best;
  }
}

// Length of the shortest edge path realizing lattice class (a, b) on a
// lattice-aligned square torus: steps along u, v and the diagonal u + v.
inline double square_torus_class_length(long a, long b) {
  const double x = static_cast<double>(std::labs(a));
  const double y = static_cast<double>(std::labs(b));
  if ((a >= 0) == (b >= 0) || a == 0 || b == 0) return std::sqrt(2.0) * std::min(x, y) + std::fabs(x - y);
  return x + y;
}

inline std::int64_t square_torus_count(double t) {
  const long r = static_cast<long>(std::ceil(t)) + 1;
  std::int64_t count = 0;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b)
      if (square_torus_class_length(a, b) <= t * (1.0 + 1e-12)) ++count;
  return count;
}

// Genus-2 surface group on letters a b c d (inverses in upper case) with
// relator abABcdCD, solved by a plain string Dehn algorithm.
class StringDehn {
 public:
  StringDehn() {
    const std::string r = "abABcdCD";
    const std::string ri = inv(r);
    for (std::size_t i = 0; i < r.size(); ++i) {
      rotations_.push_back(r.substr(i) + r.substr(0, i));
      rotations_.push_back(ri.substr(i) + ri.substr(0, i));
    }
  }

  static char inv(char c) {
    const bool lower = std::islower(static_cast<unsigned char>(c));
    return static_cast<char>(lower ? std::toupper(c) : std::tolower(c));
  }

  static std::string inv(const std::string& w) {
    std::string out(w.rbegin(), w.rend());
    for (char& c : out) c = inv(c);
    return out;
  }

  static std::string free_reduce(const std::string& w) {
    std::string out;
    for (char c : w) {
      if (!out.empty() && out.back() == inv(c)) {
        out.pop_back();
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  std::string reduce(std::string w) const {
    w = free_reduce(w);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t pos = 0; pos < w.size() && !changed; ++pos) {
        for (const auto& r : rotations_) {
          std::size_t k = 0;
          while (k < r.size() && pos + k < w.size() && w[pos + k] == r[k]) ++k;
          if (2 * k > r.size()) {
            w = free_reduce(w.substr(0, pos) + inv(r.substr(k)) + w.substr(pos + k));
            changed = true;
            break;
          }
        }
      }
    }
    return w;
  }

  bool equal(const std::string& u, const std::string& v) const { return reduce(u + inv(v)).empty(); }

 private:
  std::vector<std::string> rotations_;
};

// Number of distinct group elements spelled by words of length <= max_len,
// one entry per length 0..max_len.
inline std::vector<std::int64_t> genus2_ball_sizes(int max_len) {
  const StringDehn g;
  const std::string letters = "abcdABCD";
  std::vector<std::string> frontier{""};
  // Buckets: abelianization plus images in SL(2, Z/p) under three
  // homomorphisms that each kill the relator (a pair of commuting images per
  // handle).
  std::map<std::vector<std::int64_t>, std::vector<std::string>> buckets;
  std::vector<std::int64_t> sizes;
  std::int64_t distinct = 0;
  using Mat = std::array<std::int64_t, 4>;
  constexpr std::int64_t p = 1000003;
  auto mul = [&](const Mat& x, const Mat& y) {
    return Mat{(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p, (x[2] * y[0] + x[3] * y[2]) % p,
               (x[2] * y[1] + x[3] * y[3]) % p};
  };
  const Mat id{1, 0, 0, 1}, m{1, 2, 0, 1}, mi{1, p - 2, 0, 1}, n{1, 0, 2, 1}, ni{1, 0, p - 2, 1};
  // images[k][letter index]: letters a b c d, then inverses
  const std::array<std::array<Mat, 8>, 3> images{{{m, m, n, n, mi, mi, ni, ni},
                                                  {m, id, n, id, mi, id, ni, id},
                                                  {id, m, id, n, id, mi, id, ni}}};
  auto invariants = [&](const std::string& w) {
    std::vector<std::int64_t> v(4, 0);
    std::array<Mat, 3> acc{id, id, id};
    for (char c : w) {
      const int i = std::tolower(c) - 'a';
      const bool lower = std::islower(static_cast<unsigned char>(c));
      v[static_cast<std::size_t>(i)] += lower ? 1 : -1;
      const auto slot = static_cast<std::size_t>(i + (lower ? 0 : 4));
      for (std::size_t k = 0; k < 3; ++k) acc[k] = mul(acc[k], images[k][slot]);
    }
    for (const auto& a : acc) v.insert(v.end(), a.begin(), a.end());
    return v;
  };
  auto add = [&](const std::string& w) {
    const std::string r = g.reduce(w);
    auto& reps = buckets[invariants(r)];
    for (const auto& s : reps) {
      if (s == r || g.equal(s, r)) return;
    }
    reps.push_back(r);
    ++distinct;
  };
  add("");
  sizes.push_back(distinct);
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      for (char c : letters) {
        if (!w.empty() && w.back() == StringDehn::inv(c)) continue;
        next.push_back(w + c);
      }
    }
    for (const auto& w : next) add(w);
    sizes.push_back(distinct);
    frontier = std::move(next);
  }
  return sizes;
}

}  // namespace oracle
