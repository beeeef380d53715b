#pragma once

#include <optional>
#include <string>
#include <vector>

#include "systole/claims.hpp"
#include "systole/homology.hpp"
#include "systole/loops.hpp"
#include "systole/mesh.hpp"

namespace systole {

struct EntropyInput {
  EntropyEstimate estimate;
  /// True when the counts behind the estimate are homology classes rather
  /// than homotopy classes.
  bool homology_proxy = true;
};

struct SurfaceCheckReport {
  int genus = 0;
  double systole = 0.0;  // homological edge-path systole
  bool systole_exact = true;
  double area = 0.0;
  double ratio = 0.0;
  /// "Loewner boundary case", "Loewner", "conservative pass" or "inconclusive".
  std::string verdict;
  CycleWitness witness;
  std::vector<ClaimReport> claims;
};

/// Tolerance for the equality case ratio = 2/sqrt(3).
inline constexpr double kLoewnerBoundaryTolerance = 1e-9;

/// Homological systole, area and systolic ratio of a genus >= 1 mesh,
/// compared with 2/sqrt(3). The homological systole bounds the homotopy
/// systole from above, so for genus >= 2 a ratio below 2/sqrt(3) is a
/// conservative pass and a ratio above it is inconclusive. When an entropy
/// estimate is supplied, also checks it against the Katok lower bound.
SurfaceCheckReport check_surface_against_bounds(const TriMesh& mesh, const std::optional<EntropyInput>& entropy = {},
                                                const SystoleOptions& options = {});

}  // namespace systole
