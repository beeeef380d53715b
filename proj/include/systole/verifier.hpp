#pragma once

#include <vector>

#include "systole/claims.hpp"

namespace systole {

/// Replays every numeric endpoint of the inequality chains: the genus-18
/// and genus-17 thresholds, the nonpositive-curvature center count and Betti
/// step, the constant orderings, and the genus-50 threshold of the
/// 64 / (4 sqrt(g) + 27) bound. Pure and deterministic.
std::vector<ClaimReport> run_all_claims();

}  // namespace systole
