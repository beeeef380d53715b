#pragma once

// Closed-form evaluators for the systolic inequality chains.
//
// Units: lengths are plain doubles in some unit L, areas in L^2, entropies
// in 1/L. Every constraint below is a strict inequality evaluated in
// binary64 with no epsilon slack, so parameter sets sitting exactly on a
// boundary are rejected.

#include <optional>
#include <string>
#include <vector>

namespace systole {

/// Free constants of the inequality chains. All fields are dimensionless.
///   alpha, beta : net radius and step ratios (relative to the systole)
///   delta       : height-function / systole ratio
///   eta         : radius / injectivity-radius ratio
struct BoundParams {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double eta = 0.0;
};

/// One named strict inequality `lhs < rhs`, reported as slack = rhs - lhs.
/// The constraint holds iff slack > 0.
struct ConstraintSlack {
  std::string name;
  double slack = 0.0;
};

/// 0 < 5a < b, b + 4a < 1/2.
std::vector<ConstraintSlack> net_bound_constraints(const BoundParams& p);
/// 2d < a < b/5, b + 4a < 1/2.
std::vector<ConstraintSlack> height_bound_constraints(const BoundParams& p);
/// 0 < eta < 1/9.
std::vector<ConstraintSlack> inj_bound_constraints(double eta);

bool net_bound_feasible(const BoundParams& p);
bool height_bound_feasible(const BoundParams& p);
bool inj_bound_feasible(double eta);

/// Scalar metric invariants of a closed surface.
struct SurfaceSummary {
  int genus = 0;
  double systole = 0.0;
  double area = 0.0;
  std::optional<double> injectivity_radius;

  /// Throws Error(Domain) unless systole > 0, area > 0 and, when present,
  /// 0 < injectivity_radius <= systole / 2.
  void validate() const;
};

/// Lower bound on the area of a small metric disk of radius R.
class BallAreaModel {
 public:
  enum class Kind { Croke, GromovHeight, Euclidean };

  /// ((8 - pi) / 2) R^2, valid for small disks on any surface.
  static BallAreaModel croke() { return BallAreaModel(Kind::Croke, 0.0); }
  /// (1/2)(2R - rho)^2, valid for R >= rho / 2.
  static BallAreaModel gromov_height(double rho);
  /// pi R^2 (Bishop-Gunther, nonpositive curvature, R <= inj).
  static BallAreaModel euclidean() { return BallAreaModel(Kind::Euclidean, 0.0); }

  Kind kind() const noexcept { return kind_; }
  double rho() const noexcept { return rho_; }

  /// Same model with its length parameter multiplied by `lambda`.
  BallAreaModel scaled(double lambda) const;

  std::string name() const;

 private:
  BallAreaModel(Kind kind, double rho) : kind_(kind), rho_(rho) {}
  Kind kind_;
  double rho_;
};

/// Evaluates the model at radius R (units L^2). GromovHeight below its
/// validity radius throws Error(OutOfValidity); it is never clamped.
double disk_area_lower(const BallAreaModel& model, double radius);

/// h_upper = prefactor * ln(log_argument).
struct EntropyBoundResult {
  double h_upper = 0.0;
  double log_argument = 0.0;
  double prefactor = 0.0;
};

/// sqrt(2 pi (2g - 2) / Area), exactly 0 for the torus.
double katok_lower_bound(const SurfaceSummary& s);

/// Net-counting entropy bound:
///   h <= 1/(beta sys) * ln((Area - A((beta - 3 alpha) sys)) / A(alpha sys))
/// where A is the disk-area model.
EntropyBoundResult entropy_upper_bound(const SurfaceSummary& s, const BoundParams& p,
                                       const BallAreaModel& model);

/// Injectivity-radius form of the net bound using the Croke disk model.
EntropyBoundResult entropy_upper_bound_inj(double inj, double area, double eta);

/// Upper bound on g - 1 for a non-Loewner surface whose height function is
/// below delta * sys, via the Katok lower bound.
double genus_bound_small_height(const BoundParams& p);

/// Upper bound on g - 1 for a non-Loewner surface with inj = sys / 2.
double genus_bound_half_injectivity(double eta);

/// g - 1 <= Area h^2 / (4 pi), the Katok inequality solved for g.
double genus_minus_one_from_entropy(double h_upper, double area);

/// Integer conclusion from a real bound on g - 1: g <= floor(bound) + 1.
int genus_conclusion(double bound_on_g_minus_one);

/// (64/pi)(Area/sys^2) - 9; the caller floors it to bound the center count.
double nonpositive_center_count(double area, double sys);

/// (N - 1)(N - 2) / 4, the real bound on g from 2g <= b1 of a graph on N
/// vertices.
double betti_genus_bound(int n_centers);

/// inj = sys / 2 on nonpositively curved closed surfaces.
double inj_from_sys_nonpositive(double sys);

/// sys^2 / Area.
double loewner_ratio(double sys, double area);

/// 2 / sqrt(3).
double loewner_constant();

/// ratio <= 2/sqrt(3) + tolerance.
bool is_loewner(double ratio, double tolerance = 1e-12);

/// 64 / (4 sqrt(g) + 27).
double gromov_ratio_bound(int genus);

}  // namespace systole
