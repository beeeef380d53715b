#pragma once

#include <string>
#include <variant>
#include <vector>

namespace systole {

enum class Verdict { Pass, Fail, Flagged };

const char* to_string(Verdict v) noexcept;

/// Interval with independently open or closed ends; infinite ends allowed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double x) const;
};

/// One checked numeric claim. `verdict` is Pass iff the computed value is
/// within `tolerance` of the expected value (or inside the interval);
/// Flagged marks a documented discrepancy and never counts as a failure.
struct ClaimReport {
  std::string claim_id;
  std::string paper_location;
  double computed = 0.0;
  std::variant<double, Interval> paper_value = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Fail;
  std::string note;
};

ClaimReport value_claim(std::string id, std::string location, double computed, double expected, double tolerance,
                        std::string note = {});
ClaimReport interval_claim(std::string id, std::string location, double computed, Interval expected,
                           std::string note = {});

/// Marks a claim as a documented discrepancy. Claims that already pass keep
/// their Pass verdict.
ClaimReport flag_discrepancy(ClaimReport claim, std::string note);

/// True iff no claim has verdict Fail.
bool all_passed(const std::vector<ClaimReport>& claims);

}  // namespace systole
