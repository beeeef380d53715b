#include "systole/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "systole/error.hpp"

namespace systole {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Point {
  std::vector<double> x;
  double value = kInf;
};

// Strict weak order: smaller value first, then lexicographically smaller x.
bool better(const Point& a, const Point& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.x < b.x;
}

class CountingObjective {
 public:
  template <typename F>
  explicit CountingObjective(F f) : f_(std::move(f)) {}

  double operator()(const std::vector<double>& x) {
    ++evaluations_;
    try {
      const double v = f_(x);
      return std::isfinite(v) ? v : kInf;
    } catch (const Error&) {
      return kInf;
    }
  }

  std::int64_t evaluations() const { return evaluations_; }

 private:
  std::function<double(const std::vector<double>&)> f_;
  std::int64_t evaluations_ = 0;
};

double height_objective(double delta, const std::vector<double>& x) {
  return genus_bound_small_height({x[0], x[1], delta, 0.0});
}

// Projected Nelder-Mead. Every vertex is kept inside the region by
// projecting proposals before evaluation.
Point nelder_mead(CountingObjective& f, const FeasibleRegion& region, Point start,
                  const std::vector<double>& step, std::int64_t budget, double margin) {
  const std::size_t n = start.x.size();
  const std::int64_t stop_at = f.evaluations() + budget;
  auto eval = [&](std::vector<double> x) {
    Point p{region.project(x, margin), kInf};
    p.value = f(p.x);
    return p;
  };

  std::vector<Point> simplex;
  simplex.push_back(std::move(start));
  for (std::size_t i = 0; i < n && f.evaluations() < stop_at; ++i) {
    auto x = simplex.front().x;
    x[i] += step[i];
    simplex.push_back(eval(x));
  }
  if (simplex.size() < n + 1) {
    return *std::min_element(simplex.begin(), simplex.end(), better);
  }

  while (f.evaluations() < stop_at) {
    std::sort(simplex.begin(), simplex.end(), better);
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        diameter = std::max(diameter, std::abs(simplex[i].x[k] - simplex[0].x[k]));
      }
    }
    if (diameter < 1e-15) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[n].x[k] - centroid[k]);
      return x;
    };

    Point reflected = eval(along(-1.0));
    if (better(reflected, simplex[0])) {
      if (f.evaluations() >= stop_at) {
        simplex[n] = std::move(reflected);
        break;
      }
      Point expanded = eval(along(-2.0));
      simplex[n] = better(expanded, reflected) ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (better(reflected, simplex[n - 1])) {
      simplex[n] = std::move(reflected);
      continue;
    }
    if (f.evaluations() >= stop_at) break;
    const bool outside = better(reflected, simplex[n]);
    Point contracted = eval(along(outside ? -0.5 : 0.5));
    if (better(contracted, outside ? reflected : simplex[n])) {
      simplex[n] = std::move(contracted);
      continue;
    }
    for (std::size_t i = 1; i <= n && f.evaluations() < stop_at; ++i) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = simplex[0].x[k] + 0.5 * (simplex[i].x[k] - simplex[0].x[k]);
      simplex[i] = eval(x);
    }
  }
  return *std::min_element(simplex.begin(), simplex.end(), better);
}

// Golden-section minimization on [lo, hi], spending at most `budget` calls.
Point golden_section(CountingObjective& f, double lo, double hi, std::int64_t budget) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Point best;
  if (budget <= 0) return best;
  const std::int64_t stop_at = f.evaluations() + budget;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f({c});
  best = {{c}, fc};
  if (f.evaluations() >= stop_at) return best;
  double fd = f({d});
  if (better(Point{{d}, fd}, best)) best = {{d}, fd};
  while (f.evaluations() < stop_at && (b - a) > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f({c});
      if (better(Point{{c}, fc}, best)) best = {{c}, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f({d});
      if (better(Point{{d}, fd}, best)) best = {{d}, fd};
    }
  }
  return best;
}

std::vector<ConstraintSlack> certificate_for(const FeasibleRegion& region, const std::vector<double>& x) {
  return region.slacks(x);
}

}  // namespace

double AffineConstraint::slack(std::span<const double> x) const { return rhs - dot(coeffs, x); }

FeasibleRegion::FeasibleRegion(std::vector<AffineConstraint> constraints,
                               std::vector<std::pair<double, double>> box)
    : constraints_(std::move(constraints)), box_(std::move(box)) {
  for (const auto& c : constraints_) {
    if (c.coeffs.size() != box_.size()) {
      throw Error(ErrorKind::Domain, "constraint dimension does not match region dimension");
    }
  }
}

bool FeasibleRegion::contains(std::span<const double> x) const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const AffineConstraint& c) { return c.slack(x) > 0.0; });
}

std::vector<ConstraintSlack> FeasibleRegion::slacks(std::span<const double> x) const {
  std::vector<ConstraintSlack> out;
  out.reserve(constraints_.size());
  for (const auto& c : constraints_) out.push_back({c.name, c.slack(x)});
  return out;
}

std::vector<double> FeasibleRegion::project(std::span<const double> x, double margin) const {
  const std::size_t n = dimension();
  auto ok = [&](std::span<const double> p) {
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const AffineConstraint& c) {
      return c.slack(p) >= margin * (1.0 - 1e-6);
    });
  };
  if (ok(x)) return {x.begin(), x.end()};

  std::vector<std::vector<double>> candidates;
  if (n == 1) {
    for (const auto& c : constraints_) {
      if (c.coeffs[0] != 0.0) candidates.push_back({(c.rhs - margin) / c.coeffs[0]});
    }
  } else if (n == 2) {
    for (const auto& c : constraints_) {
      const double nn = dot(c.coeffs, c.coeffs);
      if (nn == 0.0) continue;
      const double excess = dot(c.coeffs, x) - (c.rhs - margin);
      candidates.push_back({x[0] - excess * c.coeffs[0] / nn, x[1] - excess * c.coeffs[1] / nn});
    }
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      for (std::size_t j = i + 1; j < constraints_.size(); ++j) {
        const auto& a = constraints_[i].coeffs;
        const auto& b = constraints_[j].coeffs;
        const double det = a[0] * b[1] - a[1] * b[0];
        if (det == 0.0) continue;
        const double ra = constraints_[i].rhs - margin;
        const double rb = constraints_[j].rhs - margin;
        candidates.push_back({(ra * b[1] - rb * a[1]) / det, (a[0] * rb - b[0] * ra) / det});
      }
    }
  } else {
    throw Error(ErrorKind::Domain, "projection supports dimensions 1 and 2 only");
  }

  const std::vector<double>* best = nullptr;
  double best_dist = kInf;
  for (const auto& p : candidates) {
    if (!ok(p)) continue;
    double d = 0.0;
    for (std::size_t k = 0; k < n; ++k) d += (p[k] - x[k]) * (p[k] - x[k]);
    if (d < best_dist) {
      best_dist = d;
      best = &p;
    }
  }
  if (best == nullptr || !contains(*best)) {
    throw Error(ErrorKind::Infeasible, "feasible region is empty at the requested margin");
  }
  return *best;
}

FeasibleRegion height_bound_region(double delta) {
  return FeasibleRegion(
      {
          {"2*delta < alpha", {-1.0, 0.0}, -2.0 * delta},
          {"alpha < beta/5", {1.0, -0.2}, 0.0},
          {"beta + 4*alpha < 1/2", {4.0, 1.0}, 0.5},
      },
      {{2.0 * delta, 1.0 / 18.0}, {0.0, 0.5}});
}

FeasibleRegion injectivity_bound_region() {
  return FeasibleRegion(
      {
          {"0 < eta", {-1.0}, 0.0},
          {"eta < 1/9", {1.0}, 1.0 / 9.0},
      },
      {{0.0, 1.0 / 9.0}});
}

OptimizationResult optimize_height_bound(double delta, std::int64_t budget, std::uint64_t seed,
                                         const HeightSearchOptions& options) {
  if (!std::isfinite(delta) || delta <= 0.0) {
    throw Error(ErrorKind::Domain, "delta must be positive and finite");
  }
  if (!(2.0 * delta < 1.0 / 18.0)) {
    throw Error(ErrorKind::Infeasible, "feasible alpha-interval (2*delta, 1/18) is empty; need delta < 1/36");
  }
  if (budget < 1) throw Error(ErrorKind::Domain, "budget must be >= 1");

  const FeasibleRegion region = height_bound_region(delta);
  const auto& box = region.box();

  // Phase 1: seeded grid, roughly 45% of the budget.
  const auto per_axis = static_cast<std::size_t>(std::clamp<std::int64_t>(
      static_cast<std::int64_t>(std::sqrt(0.45 * static_cast<double>(budget))), 1, options.grid_per_axis));
  std::mt19937_64 gen(seed);
  const double u0 = unit_uniform(gen);
  const double u1 = unit_uniform(gen);
  const double h0 = (box[0].second - box[0].first) / static_cast<double>(per_axis);
  const double h1 = (box[1].second - box[1].first) / static_cast<double>(per_axis);
  auto grid_point = [&](std::size_t idx) {
    const std::size_t i = idx / per_axis, j = idx % per_axis;
    return std::vector<double>{box[0].first + (static_cast<double>(i) + u0) * h0,
                               box[1].first + (static_cast<double>(j) + u1) * h1};
  };

  const std::size_t total = per_axis * per_axis;
  std::vector<double> values(total, std::numeric_limits<double>::quiet_NaN());
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  {
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t idx = begin; idx < end; ++idx) {
        const auto x = grid_point(idx);
        if (!region.contains(x)) continue;
        try {
          values[idx] = height_objective(delta, x);
        } catch (const Error&) {
          values[idx] = kInf;
        }
      }
    };
    std::vector<std::jthread> pool;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk, end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  // Deterministic reduction in index order.
  std::int64_t evaluations = 0;
  std::vector<Point> grid_best;
  for (std::size_t idx = 0; idx < total && evaluations < budget; ++idx) {
    if (std::isnan(values[idx])) continue;
    ++evaluations;
    grid_best.push_back({grid_point(idx), values[idx]});
  }
  std::sort(grid_best.begin(), grid_best.end(), better);
  grid_best.erase(std::remove_if(grid_best.begin(), grid_best.end(),
                                 [](const Point& p) { return !std::isfinite(p.value); }),
                  grid_best.end());
  if (grid_best.empty()) {
    throw Error(ErrorKind::SearchFailure, "budget exhausted before any feasible point was evaluated");
  }
  const std::size_t starts = std::min<std::size_t>(grid_best.size(), static_cast<std::size_t>(options.refine_starts));
  grid_best.resize(starts);

  // Phase 2: projected Nelder-Mead from the best grid points.
  CountingObjective objective([delta](const std::vector<double>& x) { return height_objective(delta, x); });
  Point best = grid_best.front();
  const std::int64_t remaining = budget - evaluations;
  const std::int64_t per_start = remaining / static_cast<std::int64_t>(starts);
  if (per_start > 0) {
    for (const auto& start : grid_best) {
      Point p = nelder_mead(objective, region, start, {h0, h1}, per_start, options.projection_margin);
      if (better(p, best)) best = std::move(p);
    }
  }
  evaluations += objective.evaluations();

  OptimizationResult result;
  result.best_params = {best.x[0], best.x[1], delta, 0.0};
  result.best_value = genus_bound_small_height(result.best_params);
  result.evaluations = evaluations;
  result.certificate = certificate_for(region, best.x);
  result.low_confidence = per_start <= 0;
  return result;
}

OptimizationResult optimize_injectivity_bound(std::int64_t budget, std::uint64_t seed) {
  if (budget < 1) throw Error(ErrorKind::Domain, "budget must be >= 1");
  const FeasibleRegion region = injectivity_bound_region();
  const double hi = 1.0 / 9.0;
  CountingObjective objective([](const std::vector<double>& x) { return genus_bound_half_injectivity(x[0]); });

  auto finish = [&](const Point& best, bool low_confidence) {
    if (!std::isfinite(best.value)) {
      throw Error(ErrorKind::SearchFailure, "objective is non-finite across the whole bracket");
    }
    OptimizationResult result;
    result.best_params.eta = best.x[0];
    result.best_value = genus_bound_half_injectivity(best.x[0]);
    result.evaluations = objective.evaluations();
    result.certificate = certificate_for(region, best.x);
    result.low_confidence = low_confidence;
    return result;
  };

  if (budget == 1) {
    const double mid = hi / 2.0;
    return finish(Point{{mid}, objective({mid})}, true);
  }

  // Uniform scan used as the unimodality cross-check.
  const std::int64_t scan_points = std::min<std::int64_t>(1000, std::max<std::int64_t>(1, budget / 2));
  std::mt19937_64 gen(seed);
  const double offset = 0.25 + 0.5 * unit_uniform(gen);
  const double step = hi / static_cast<double>(scan_points);

  const std::int64_t gs_budget = budget - scan_points;
  const double edge = 1e-12;
  Point gs = golden_section(objective, edge, hi - edge, gs_budget);

  Point scan_best;
  std::int64_t scan_index = -1;
  for (std::int64_t j = 0; j < scan_points; ++j) {
    const double eta = (static_cast<double>(j) + offset) * step;
    Point p{{eta}, objective({eta})};
    if (scan_index < 0 || better(p, scan_best)) {
      scan_best = std::move(p);
      scan_index = j;
    }
  }

  Point best = better(scan_best, gs) ? scan_best : gs;
  const bool disagree = gs.x.empty() || !std::isfinite(gs.value) || scan_best.value < gs.value ||
                        std::abs(gs.x[0] - scan_best.x[0]) > 2.0 * step;
  if (disagree) {
    // Fall back to local refinement around the scan minimum.
    const double lo = std::max(edge, scan_best.x[0] - step);
    const double up = std::min(hi - edge, scan_best.x[0] + step);
    const std::int64_t left = budget - objective.evaluations();
    Point local = golden_section(objective, lo, up, left);
    if (!local.x.empty() && better(local, best)) best = std::move(local);
  }
  return finish(best, false);
}

}  // namespace systole
