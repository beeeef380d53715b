#pragma once

// Loop-growth counts N(T) and entropy estimates.
//
// On a TriMesh the class of a based closed edge path is its integer homology
// class (the deck group of the universal abelian cover), a proxy that
// lower-bounds the number of homotopy classes and coincides with it on tori.
// On the polygon complex the class is decided exactly in the surface group
// with Dehn's algorithm.
//
// Counts include the trivial class, so N(T) = 1 below the systole. A length
// L counts as "<= T" when L <= T * (1 + 1e-12).

#include <cstdint>
#include <string>
#include <vector>

#include "systole/mesh.hpp"
#include "systole/surface_group.hpp"

namespace systole {

struct LoopGrowthSample {
  std::vector<double> thresholds;      // ascending
  std::vector<std::int64_t> counts;    // nondecreasing
  int basepoint = 0;
  bool homology_proxy = true;          // false when classes are exact homotopy classes

  /// Throws Error(Domain) unless thresholds ascend, counts are nondecreasing,
  /// and both have the same length.
  void validate() const;
};

struct LoopCountOptions {
  std::int64_t max_classes = 2'000'000;
  std::int64_t max_states = 20'000'000;
};

std::int64_t count_loops(const TriMesh& mesh, int basepoint, double threshold,
                         const LoopCountOptions& options = {});
LoopGrowthSample sample_loop_growth(const TriMesh& mesh, int basepoint, std::vector<double> thresholds,
                                    const LoopCountOptions& options = {});

/// Exact count of surface-group elements represented by based loops of
/// length <= T in the polygon complex.
std::int64_t count_loops(const PolygonComplex& complex, double threshold, const LoopCountOptions& options = {});
LoopGrowthSample sample_loop_growth(const PolygonComplex& complex, std::vector<double> thresholds,
                                    const LoopCountOptions& options = {});

/// Number of integer homology classes of the polygon complex realized by
/// loops of length <= T.
std::int64_t count_loops_homology_proxy(const PolygonComplex& complex, double threshold);

struct EntropyEstimate {
  double h_est = 0.0;            // 1/length, clamped at 0
  double fit_min = 0.0;          // fit window in T
  double fit_max = 0.0;
  double residual = 0.0;         // RMS residual of the fit in ln N
  double raw_slope = 0.0;        // plain least-squares slope of ln N vs T
  double polynomial_exponent = 0.0;
  bool polynomial_corrected = false;
  bool degenerate = false;       // all counts in the window equal
};

struct EntropyFitOptions {
  /// Fraction of the usable thresholds (those with N >= 1) kept at the end.
  double trailing_fraction = 0.5;
  /// Fit ln N = h T + k ln T + c with k >= 0 when the window has at least
  /// four points; otherwise, or if k comes out negative, the plain slope.
  bool polynomial_correction = true;
};

/// Requires at least four thresholds with N >= 1 (Error(Domain) otherwise).
EntropyEstimate estimate_entropy(const LoopGrowthSample& sample, const EntropyFitOptions& options = {});

}  // namespace systole
