#include "systole/loops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <unordered_map>

#include "systole/error.hpp"
#include "systole/homology.hpp"

namespace systole {

namespace {

constexpr double kRelSlack = 1e-12;

double limit_of(double threshold) { return threshold * (1.0 + kRelSlack); }

void check_threshold(double t) {
  if (!std::isfinite(t) || t < 0.0) throw Error(ErrorKind::Domain, "threshold T must be finite and >= 0");
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using QueueEntry = std::pair<double, std::int64_t>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

std::vector<std::int64_t> counts_at(std::vector<double> class_dist, const std::vector<double>& thresholds) {
  std::sort(class_dist.begin(), class_dist.end());
  std::vector<std::int64_t> counts;
  counts.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto it = std::upper_bound(class_dist.begin(), class_dist.end(), limit_of(t));
    counts.push_back(static_cast<std::int64_t>(it - class_dist.begin()));
  }
  return counts;
}

// Shortest loop length for every integer homology class at the basepoint
// with length <= threshold, by Dijkstra in the universal abelian cover.
std::vector<double> mesh_class_distances(const TriMesh& mesh, int basepoint, double threshold,
                                         const LoopCountOptions& options) {
  if (basepoint < 0 || basepoint >= mesh.vertex_count()) throw Error(ErrorKind::Domain, "basepoint out of range");
  check_threshold(threshold);
  const CohomologyBasis basis(mesh);
  const auto rank = static_cast<std::size_t>(basis.rank());
  const double limit = limit_of(threshold);

  // State key: [vertex, class...].
  std::unordered_map<std::vector<int>, std::int64_t, VectorHash> index;
  std::vector<std::vector<int>> keys;
  std::vector<double> dist;
  auto state_of = [&](std::vector<int> key) -> std::int64_t {
    const auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (static_cast<std::int64_t>(keys.size()) >= options.max_states) {
      throw ResourceError("loop counting exceeded " + std::to_string(options.max_states) + " cover states",
                          "explored " + std::to_string(keys.size()) + " states");
    }
    const auto id = static_cast<std::int64_t>(keys.size());
    index.emplace(key, id);
    keys.push_back(std::move(key));
    dist.push_back(std::numeric_limits<double>::infinity());
    return id;
  };

  std::vector<int> start(rank + 1, 0);
  start[0] = basepoint;
  const auto s0 = state_of(start);
  dist[static_cast<std::size_t>(s0)] = 0.0;
  MinQueue queue;
  queue.emplace(0.0, s0);
  std::vector<double> class_dist;
  double reached = 0.0;
  while (!queue.empty()) {
    const auto [d, s] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(s)]) continue;
    reached = d;
    const std::vector<int> key = keys[static_cast<std::size_t>(s)];
    if (key[0] == basepoint) {
      class_dist.push_back(d);
      if (static_cast<std::int64_t>(class_dist.size()) > options.max_classes) {
        throw ResourceError("loop counting exceeded " + std::to_string(options.max_classes) + " classes",
                            "counted " + std::to_string(class_dist.size() - 1) + " classes up to length " +
                                std::to_string(reached));
      }
    }
    for (const auto& [w, e] : mesh.neighbors(key[0])) {
      const double nd = d + mesh.edge(e).length;
      if (nd > limit) continue;
      std::vector<int> next = key;
      next[0] = w;
      const int sign = key[0] < w ? 1 : -1;
      const auto vals = basis.edge_values(e);
      for (std::size_t j = 0; j < rank; ++j) next[j + 1] += sign * vals[j];
      const auto t = state_of(std::move(next));
      if (nd < dist[static_cast<std::size_t>(t)]) {
        dist[static_cast<std::size_t>(t)] = nd;
        queue.emplace(nd, t);
      }
    }
  }
  return class_dist;
}

// Images of words under three homomorphisms of the surface group onto
// subgroups of S_7. Each kills the relator: one sends every b_i to the
// identity, one every a_i, and one sends a_i and b_i to the same
// permutation. Equal elements have equal images, so the images (together
// with the abelianization) bucket candidates before the Dehn test.
class QuotientImages {
 public:
  static constexpr int kDegree = 7;
  using Perm = std::array<std::uint8_t, kDegree>;
  using Image = std::array<Perm, 3>;

  explicit QuotientImages(int genus) {
    std::mt19937_64 gen(0x5eed5eedull);
    auto random_perm = [&gen]() {
      Perm p;
      for (int k = 0; k < kDegree; ++k) p[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(k);
      for (int k = kDegree - 1; k > 0; --k) {
        const auto j = static_cast<int>(gen() % static_cast<std::uint64_t>(k + 1));
        std::swap(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(j)]);
      }
      return p;
    };
    Perm id;
    for (int k = 0; k < kDegree; ++k) id[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(k);
    identity_ = {id, id, id};
    images_.resize(static_cast<std::size_t>(2 * genus + 1));
    for (int i = 1; i <= genus; ++i) {
      const Perm sigma = random_perm(), tau = random_perm(), rho = random_perm();
      images_[static_cast<std::size_t>(2 * i - 1)] = {sigma, id, rho};
      images_[static_cast<std::size_t>(2 * i)] = {id, tau, rho};
    }
  }

  const Image& identity() const { return identity_; }

  Image times(const Image& img, Letter x) const {
    const Image& g = images_[static_cast<std::size_t>(std::abs(x))];
    Image out;
    for (std::size_t m = 0; m < 3; ++m) {
      for (std::size_t k = 0; k < kDegree; ++k) {
        const std::uint8_t v = img[m][k];
        if (x > 0) {
          out[m][k] = g[m][v];
        } else {
          // Apply the inverse permutation.
          out[m][k] = static_cast<std::uint8_t>(std::find(g[m].begin(), g[m].end(), v) - g[m].begin());
        }
      }
    }
    return out;
  }

 private:
  Image identity_;
  std::vector<Image> images_;
};

struct GroupElement {
  Word rep;
  std::vector<int> abelian;
  QuotientImages::Image image;
  double dist;
};

std::uint64_t bucket_key(const GroupElement& e) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (int x : e.abelian) mix(static_cast<std::uint32_t>(x));
  for (const auto& perm : e.image) {
    for (auto v : perm) mix(v);
  }
  return h;
}

std::vector<double> polygon_class_distances(const PolygonComplex& complex, double threshold,
                                            const LoopCountOptions& options) {
  check_threshold(threshold);
  const SurfaceGroup group(complex.genus);
  const int gens = group.generator_count();
  if (static_cast<int>(complex.generator_lengths.size()) != gens) {
    throw Error(ErrorKind::Domain, "polygon complex needs one length per generator");
  }
  for (double len : complex.generator_lengths) {
    if (!(len > 0.0) || !std::isfinite(len)) throw Error(ErrorKind::Domain, "generator lengths must be positive");
  }
  const double limit = limit_of(threshold);
  const QuotientImages quotients(complex.genus);

  std::vector<GroupElement> elements;
  std::unordered_map<std::uint64_t, std::vector<std::int64_t>> buckets;
  auto add = [&](GroupElement e) -> std::int64_t {
    auto& bucket = buckets[bucket_key(e)];
    for (auto id : bucket) {
      if (group.equal(elements[static_cast<std::size_t>(id)].rep, e.rep)) return id;
    }
    if (static_cast<std::int64_t>(elements.size()) >= options.max_classes) {
      double radius = 0.0;
      for (const auto& el : elements) radius = std::max(radius, el.dist);
      throw ResourceError("loop counting exceeded " + std::to_string(options.max_classes) + " classes",
                          "found " + std::to_string(elements.size()) + " classes up to length " +
                              std::to_string(radius));
    }
    const auto id = static_cast<std::int64_t>(elements.size());
    bucket.push_back(id);
    elements.push_back(std::move(e));
    return id;
  };

  add({{}, std::vector<int>(static_cast<std::size_t>(gens), 0), quotients.identity(), 0.0});
  MinQueue queue;
  queue.emplace(0.0, 0);
  std::vector<char> settled;
  while (!queue.empty()) {
    const auto [d, id] = queue.top();
    queue.pop();
    if (d > elements[static_cast<std::size_t>(id)].dist) continue;
    if (settled.size() < elements.size()) settled.resize(elements.size(), 0);
    if (settled[static_cast<std::size_t>(id)]) continue;
    settled[static_cast<std::size_t>(id)] = 1;
    for (int g = 1; g <= gens; ++g) {
      for (Letter x : {g, -g}) {
        const double nd = d + complex.letter_length(x);
        if (nd > limit) continue;
        const GroupElement& cur = elements[static_cast<std::size_t>(id)];
        GroupElement next;
        next.rep = cur.rep;
        next.rep.push_back(x);
        next.rep = group.dehn_reduce(std::move(next.rep));
        next.abelian = cur.abelian;
        next.abelian[static_cast<std::size_t>(g - 1)] += x > 0 ? 1 : -1;
        next.image = quotients.times(cur.image, x);
        next.dist = nd;
        const std::size_t before = elements.size();
        const auto target = add(std::move(next));
        if (static_cast<std::size_t>(target) == before) {
          queue.emplace(nd, target);
        } else if (nd < elements[static_cast<std::size_t>(target)].dist) {
          elements[static_cast<std::size_t>(target)].dist = nd;
          queue.emplace(nd, target);
        }
      }
    }
  }
  std::vector<double> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.dist);
  return out;
}

std::vector<double> checked_thresholds(std::vector<double> thresholds) {
  if (thresholds.empty()) throw Error(ErrorKind::Domain, "need at least one threshold");
  for (double t : thresholds) check_threshold(t);
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw Error(ErrorKind::Domain, "thresholds must be ascending");
  }
  return thresholds;
}

struct Fit {
  double slope = 0.0;
  double exponent = 0.0;
  double rms = 0.0;
};

Fit fit_linear(const std::vector<double>& t, const std::vector<double>& y) {
  const auto n = static_cast<double>(t.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i] / n;
    my += y[i] / n;
  }
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
  }
  Fit f;
  f.slope = stt > 0.0 ? sty / stt : 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - (my + f.slope * (t[i] - mt));
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

// Least squares for y = h t + k ln t + c on centered columns.
std::optional<Fit> fit_log_polynomial(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] > 0.0)) return std::nullopt;
    u[i] = std::log(t[i]);
  }
  const double dn = static_cast<double>(n);
  double mt = 0.0, mu = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t[i] / dn;
    mu += u[i] / dn;
    my += y[i] / dn;
  }
  double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ct = t[i] - mt, cu = u[i] - mu, cy = y[i] - my;
    a11 += ct * ct;
    a12 += ct * cu;
    a22 += cu * cu;
    b1 += ct * cy;
    b2 += cu * cy;
  }
  const double det = a11 * a22 - a12 * a12;
  if (!(std::abs(det) > 1e-14 * a11 * a22)) return std::nullopt;
  Fit f;
  f.slope = (b1 * a22 - b2 * a12) / det;
  f.exponent = (a11 * b2 - a12 * b1) / det;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (y[i] - my) - f.slope * (t[i] - mt) - f.exponent * (u[i] - mu);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / dn);
  return f;
}

}  // namespace

void LoopGrowthSample::validate() const {
  if (thresholds.size() != counts.size()) throw Error(ErrorKind::Domain, "thresholds and counts differ in length");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!std::isfinite(thresholds[i])) throw Error(ErrorKind::Domain, "thresholds must be finite");
    if (counts[i] < 0) throw Error(ErrorKind::Domain, "counts must be nonnegative");
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) throw Error(ErrorKind::Domain, "thresholds must ascend");
    if (i > 0 && counts[i] < counts[i - 1]) throw Error(ErrorKind::Domain, "counts must be nondecreasing");
  }
}

std::int64_t count_loops(const TriMesh& mesh, int basepoint, double threshold, const LoopCountOptions& options) {
  return static_cast<std::int64_t>(mesh_class_distances(mesh, basepoint, threshold, options).size());
}

LoopGrowthSample sample_loop_growth(const TriMesh& mesh, int basepoint, std::vector<double> thresholds,
                                    const LoopCountOptions& options) {
  thresholds = checked_thresholds(std::move(thresholds));
  LoopGrowthSample s;
  s.counts = counts_at(mesh_class_distances(mesh, basepoint, thresholds.back(), options), thresholds);
  s.thresholds = std::move(thresholds);
  s.basepoint = basepoint;
  s.homology_proxy = mesh_genus(mesh) > 1;
  return s;
}

std::int64_t count_loops(const PolygonComplex& complex, double threshold, const LoopCountOptions& options) {
  return static_cast<std::int64_t>(polygon_class_distances(complex, threshold, options).size());
}

LoopGrowthSample sample_loop_growth(const PolygonComplex& complex, std::vector<double> thresholds,
                                    const LoopCountOptions& options) {
  thresholds = checked_thresholds(std::move(thresholds));
  LoopGrowthSample s;
  s.counts = counts_at(polygon_class_distances(complex, thresholds.back(), options), thresholds);
  s.thresholds = std::move(thresholds);
  s.basepoint = 0;
  s.homology_proxy = false;
  return s;
}

std::int64_t count_loops_homology_proxy(const PolygonComplex& complex, double threshold) {
  check_threshold(threshold);
  const double limit = limit_of(threshold);
  const std::size_t gens = complex.generator_lengths.size();
  // A class c in Z^{2g} is realized by sum |c_i| loops around generator i.
  std::function<std::int64_t(std::size_t, double)> count = [&](std::size_t i, double used) -> std::int64_t {
    if (i == gens) return 1;
    const double len = complex.generator_lengths[i];
    std::int64_t total = count(i + 1, used);
    for (int k = 1; used + k * len <= limit; ++k) total += 2 * count(i + 1, used + k * len);
    return total;
  };
  return count(0, 0.0);
}

EntropyEstimate estimate_entropy(const LoopGrowthSample& sample, const EntropyFitOptions& options) {
  sample.validate();
  std::vector<double> t, y;
  for (std::size_t i = 0; i < sample.counts.size(); ++i) {
    if (sample.counts[i] >= 1) {
      t.push_back(sample.thresholds[i]);
      y.push_back(std::log(static_cast<double>(sample.counts[i])));
    }
  }
  if (t.size() < 4) throw Error(ErrorKind::Domain, "entropy fit needs at least four thresholds with N >= 1");
  const auto keep = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(options.trailing_fraction * static_cast<double>(t.size()))), 2, t.size());
  t.erase(t.begin(), t.end() - static_cast<std::ptrdiff_t>(keep));
  y.erase(y.begin(), y.end() - static_cast<std::ptrdiff_t>(keep));

  EntropyEstimate est;
  est.fit_min = t.front();
  est.fit_max = t.back();
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); })) {
    est.degenerate = true;
    return est;
  }
  const Fit plain = fit_linear(t, y);
  est.raw_slope = plain.slope;
  Fit chosen = plain;
  if (options.polynomial_correction && t.size() >= 4) {
    if (auto poly = fit_log_polynomial(t, y); poly && poly->exponent >= 0.0) {
      chosen = *poly;
      est.polynomial_corrected = true;
      est.polynomial_exponent = poly->exponent;
    }
  }
  est.h_est = std::max(0.0, chosen.slope);
  est.residual = chosen.rms;
  return est;
}

}  // namespace systole
