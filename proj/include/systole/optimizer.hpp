#pragma once

// Derivative-free search for the constants that minimize the genus bounds.
//
// The two-parameter height bound is searched with a seeded uniform grid over
// the feasible box followed by projected Nelder-Mead runs from the best grid
// points. The one-parameter injectivity bound uses golden-section search,
// cross-checked against a uniform scan.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "systole/bounds.hpp"

namespace systole {

/// `coeffs . x < rhs`; slack = rhs - coeffs . x.
struct AffineConstraint {
  std::string name;
  std::vector<double> coeffs;
  double rhs = 0.0;

  double slack(std::span<const double> x) const;
};

/// Open polytope cut out by strict affine inequalities, plus a bounding box
/// used to lay out search grids.
class FeasibleRegion {
 public:
  FeasibleRegion(std::vector<AffineConstraint> constraints,
                 std::vector<std::pair<double, double>> box);

  std::size_t dimension() const noexcept { return box_.size(); }
  const std::vector<AffineConstraint>& constraints() const noexcept { return constraints_; }
  const std::vector<std::pair<double, double>>& box() const noexcept { return box_; }

  bool contains(std::span<const double> x) const;
  std::vector<ConstraintSlack> slacks(std::span<const double> x) const;

  /// Nearest point (Euclidean) whose every slack is at least `margin`.
  /// Supported for dimensions 1 and 2. Throws Error(Infeasible) if the
  /// shrunken region is empty.
  std::vector<double> project(std::span<const double> x, double margin) const;

 private:
  std::vector<AffineConstraint> constraints_;
  std::vector<std::pair<double, double>> box_;
};

/// Region over (alpha, beta) at fixed delta for the small-height genus bound.
FeasibleRegion height_bound_region(double delta);
/// Region over eta for the half-injectivity genus bound.
FeasibleRegion injectivity_bound_region();

struct OptimizationResult {
  BoundParams best_params;
  double best_value = 0.0;  // bound on g - 1
  std::int64_t evaluations = 0;
  std::vector<ConstraintSlack> certificate;
  bool low_confidence = false;
};

struct HeightSearchOptions {
  /// Worker threads for grid evaluation; 0 picks hardware concurrency.
  unsigned threads = 0;
  /// Maximum grid points per axis.
  int grid_per_axis = 300;
  int refine_starts = 5;
  double projection_margin = 1e-9;
};

/// Minimizes genus_bound_small_height over feasible (alpha, beta) at fixed
/// delta. Requires 0 < delta < 1/36 (Error(Infeasible) otherwise) and
/// budget >= 1. Bit-identical output for identical (delta, budget, seed)
/// regardless of thread count.
OptimizationResult optimize_height_bound(double delta, std::int64_t budget, std::uint64_t seed,
                                         const HeightSearchOptions& options = {});

/// Minimizes genus_bound_half_injectivity over eta in (0, 1/9). A budget of
/// one probes a single point and flags the result low-confidence.
OptimizationResult optimize_injectivity_bound(std::int64_t budget, std::uint64_t seed);

}  // namespace systole
