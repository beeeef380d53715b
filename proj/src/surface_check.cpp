#include "systole/surface_check.hpp"

#include <cmath>
#include <limits>

#include "systole/bounds.hpp"
#include "systole/error.hpp"

namespace systole {

SurfaceCheckReport check_surface_against_bounds(const TriMesh& mesh, const std::optional<EntropyInput>& entropy,
                                                const SystoleOptions& options) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  SurfaceCheckReport r;
  r.genus = mesh_genus(mesh);
  if (r.genus < 1) throw Error(ErrorKind::NoNontrivialCycle, "surface check needs genus >= 1");
  r.witness = homological_systole(mesh, options);
  r.systole = r.witness.length;
  r.systole_exact = r.witness.exact;
  r.area = mesh_area(mesh);
  r.ratio = loewner_ratio(r.systole, r.area);

  const double c = loewner_constant();
  const bool boundary = std::abs(r.ratio - c) <= kLoewnerBoundaryTolerance;
  const bool below = r.ratio <= c + kLoewnerBoundaryTolerance;
  if (boundary) {
    r.verdict = "Loewner boundary case";
  } else if (!below) {
    r.verdict = "inconclusive";
  } else {
    r.verdict = r.genus == 1 ? "Loewner" : "conservative pass";
  }

  auto ratio_claim = interval_claim("loewner_ratio", "sys^2 / Area <= 2/sqrt(3)", r.ratio,
                                    {-inf, c + kLoewnerBoundaryTolerance, false, false}, r.verdict);
  ratio_claim.tolerance = kLoewnerBoundaryTolerance;
  if (!below) {
    ratio_claim = flag_discrepancy(
        std::move(ratio_claim), "edge-path systole exceeds the metric systole; ratio above 2/sqrt(3) proves nothing");
  }
  r.claims.push_back(std::move(ratio_claim));

  if (entropy) {
    const auto& e = entropy->estimate;
    SurfaceSummary s{r.genus, r.systole, r.area, std::nullopt};
    const double katok = katok_lower_bound(s);
    // Rough slope uncertainty of the fit: twice the RMS residual over the window width.
    const double width = e.fit_max - e.fit_min;
    const double envelope = width > 0.0 ? 2.0 * e.residual / width : 0.0;
    auto claim = interval_claim("katok_consistency", "h >= sqrt(2 pi (2g - 2) / Area)", e.h_est,
                                {katok - envelope, inf, false, true},
                                "katok lower bound " + std::to_string(katok) + ", envelope " +
                                    std::to_string(envelope));
    claim.tolerance = envelope;
    if (entropy->homology_proxy) {
      std::string note = "homology-proxy estimate, not a count of homotopy classes; " + claim.note;
      claim = flag_discrepancy(std::move(claim), std::move(note));
    }
    r.claims.push_back(std::move(claim));
  }
  return r;
}

}  // namespace systole
