#include "systole/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "systole/bounds.hpp"

namespace systole {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Flagged: return "flagged";
  }
  return "fail";
}

bool Interval::contains(double x) const {
  const bool above = lo_open ? x > lo : x >= lo;
  const bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

ClaimReport value_claim(std::string id, std::string location, double computed, double expected, double tolerance,
                        std::string note) {
  ClaimReport c;
  c.claim_id = std::move(id);
  c.paper_location = std::move(location);
  c.computed = computed;
  c.paper_value = expected;
  c.tolerance = tolerance;
  c.verdict = std::abs(computed - expected) <= tolerance ? Verdict::Pass : Verdict::Fail;
  c.note = std::move(note);
  return c;
}

ClaimReport interval_claim(std::string id, std::string location, double computed, Interval expected,
                           std::string note) {
  ClaimReport c;
  c.claim_id = std::move(id);
  c.paper_location = std::move(location);
  c.computed = computed;
  c.paper_value = expected;
  c.tolerance = 0.0;
  c.verdict = expected.contains(computed) ? Verdict::Pass : Verdict::Fail;
  c.note = std::move(note);
  return c;
}

ClaimReport flag_discrepancy(ClaimReport claim, std::string note) {
  if (claim.verdict == Verdict::Fail) claim.verdict = Verdict::Flagged;
  claim.note = std::move(note);
  return claim;
}

bool all_passed(const std::vector<ClaimReport>& claims) {
  return std::none_of(claims.begin(), claims.end(), [](const ClaimReport& c) { return c.verdict == Verdict::Fail; });
}

std::vector<ClaimReport> run_all_claims() {
  using std::numbers::pi;
  using std::numbers::sqrt3;
  std::vector<ClaimReport> out;

  // Small-height chain: every genus >= 18 surface is Loewner.
  const BoundParams published{0.026377, 0.394491, 0.000001, 0.0};
  const double height_value = genus_bound_small_height(published);
  out.push_back(value_claim("thm12_value", "small-height chain, final value 16.8728", height_value, 16.8728,
                            5e-4));
  const int height_genus = genus_conclusion(height_value);
  out.push_back(value_claim("thm12_genus_conclusion", "small-height chain, conclusion g <= 17", height_genus, 17, 0.0));
  out.push_back(value_claim("thm12_loewner_threshold", "small-height theorem, genus threshold 18",
                            height_genus + 1, 18, 0.0));
  out.push_back(value_claim("thm12_margin_value", "parameter choice, 1/2 - 4 alpha = 0.394492",
                            0.5 - 4.0 * published.alpha, 0.394492, 1e-12));
  double min_slack = kInf;
  for (const auto& c : height_bound_constraints(published)) min_slack = std::min(min_slack, c.slack);
  out.push_back(interval_claim("thm12_margin_strict", "parameter choice, beta = 0.394491 < 0.394492", min_slack,
                               {0.0, kInf, true, true}, "smallest constraint slack at the published constants"));

  // Half-injectivity chain: inj = sys/2 and genus >= 17 implies Loewner.
  const double eta = 0.065734;
  const double inj_value = genus_bound_half_injectivity(eta);
  out.push_back(value_claim("prop25_value", "half-injectivity chain, final value 15.9493", inj_value, 15.9493, 5e-4));
  const int inj_genus = genus_conclusion(inj_value);
  out.push_back(
      value_claim("prop25_genus_conclusion", "half-injectivity chain, conclusion g <= 16", inj_genus, 16, 0.0));
  out.push_back(value_claim("prop25_loewner_threshold", "half-injectivity statement, genus threshold 17",
                            inj_genus + 1, 17, 0.0));

  // Nonpositive curvature chain: every genus >= 11 surface is Loewner.
  const double centers = nonpositive_center_count(sqrt3 / 2.0, 1.0);
  out.push_back(value_claim("centers_value", "center count, 32 sqrt(3)/pi - 9 = 8.64252", centers, 8.64252, 1e-4));
  const int center_floor = static_cast<int>(std::floor(centers));
  out.push_back(value_claim("centers_floor", "center count, |S| <= 8", center_floor, 8, 0.0));
  const double betti = betti_genus_bound(center_floor);
  out.push_back(flag_discrepancy(
      value_claim("betti_step", "Betti step, printed (|S|-1)(|S|-2)/4 = 10.25", betti, 10.25, 5e-4),
      "printed 10.25 but (8-1)(8-2)/4 = 10.5; suspected typo, integer conclusion unaffected"));
  const int betti_genus = static_cast<int>(std::floor(betti));
  out.push_back(value_claim("betti_conclusion", "Betti step, conclusion g <= 10", betti_genus, 10, 0.0));
  out.push_back(value_claim("thm14_loewner_threshold", "nonpositive curvature theorem, genus threshold 11",
                            betti_genus + 1, 11, 0.0));

  // Constant orderings.
  out.push_back(interval_claim("pi4_remark", "area floor remark, pi/4 < sqrt(3)/2", pi / 4.0,
                               {-kInf, sqrt3 / 2.0, true, true}, "pi/4 < sqrt(3)/2"));
  out.push_back(interval_claim("croke_below_bishop", "disk constants, (8 - pi)/2 < pi",
                               disk_area_lower(BallAreaModel::croke(), 1.0),
                               {-kInf, disk_area_lower(BallAreaModel::euclidean(), 1.0), true, true},
                               "(8 - pi)/2 < pi"));
  out.push_back(value_claim("loewner_equality_ratio", "Loewner constant 2/sqrt(3)", loewner_ratio(1.0, sqrt3 / 2.0),
                            2.0 / sqrt3, 1e-12, "hexagonal torus attains the bound"));

  // 64 / (4 sqrt(g) + 27) <= 2/sqrt(3) first holds at g = 51.
  int threshold = 1;
  while (gromov_ratio_bound(threshold) > loewner_constant()) ++threshold;
  out.push_back(flag_discrepancy(
      value_claim("gromov_genus50_threshold", "introduction, genus threshold 50 for 64/(4 sqrt(g) + 27)", threshold,
                  50, 0.0),
      "64/(4 sqrt(50) + 27) = 1.15765 > 2/sqrt(3); the displayed bound first reaches 2/sqrt(3) at g = 51"));
  return out;
}

}  // namespace systole
