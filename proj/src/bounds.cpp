#include "systole/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "systole/error.hpp"

namespace systole {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kCrokeConstant = (8.0 - kPi) / 2.0;

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

void require_finite_nonnegative(const BoundParams& p) {
  for (double v : {p.alpha, p.beta, p.delta, p.eta}) {
    if (!std::isfinite(v) || v < 0.0) {
      fail(ErrorKind::Domain, "bound parameters must be finite and nonnegative");
    }
  }
}

void enforce(const std::vector<ConstraintSlack>& slacks) {
  for (const auto& c : slacks) {
    if (!(c.slack > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "violated constraint " << c.name << " (slack " << c.slack << ")";
      fail(ErrorKind::Constraint, os.str());
    }
  }
}

bool all_positive(const std::vector<ConstraintSlack>& slacks) {
  for (const auto& c : slacks) {
    if (!(c.slack > 0.0)) return false;
  }
  return true;
}

EntropyBoundResult make_entropy_result(double prefactor, double log_argument) {
  if (!(log_argument > 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "log argument " << log_argument << " <= 1, entropy bound is meaningless";
    fail(ErrorKind::Degenerate, os.str());
  }
  return {prefactor * std::log(log_argument), log_argument, prefactor};
}

// sqrt(3)/(8 pi) * (ln I)^2 / step^2, the Katok inequality at Area/sys^2 = sqrt(3)/2.
double genus_from_log_argument(double log_argument, double step) {
  const double l = std::log(log_argument);
  return kSqrt3 / (8.0 * kPi) * l * l / (step * step);
}

}  // namespace

std::vector<ConstraintSlack> net_bound_constraints(const BoundParams& p) {
  return {
      {"0 < 5*alpha", 5.0 * p.alpha},
      {"5*alpha < beta", p.beta - 5.0 * p.alpha},
      {"beta + 4*alpha < 1/2", 0.5 - (p.beta + 4.0 * p.alpha)},
  };
}

std::vector<ConstraintSlack> height_bound_constraints(const BoundParams& p) {
  return {
      {"2*delta < alpha", p.alpha - 2.0 * p.delta},
      {"alpha < beta/5", p.beta / 5.0 - p.alpha},
      {"beta + 4*alpha < 1/2", 0.5 - (p.beta + 4.0 * p.alpha)},
  };
}

std::vector<ConstraintSlack> inj_bound_constraints(double eta) {
  return {
      {"0 < eta", eta},
      {"eta < 1/9", 1.0 / 9.0 - eta},
  };
}

bool net_bound_feasible(const BoundParams& p) { return all_positive(net_bound_constraints(p)); }

bool height_bound_feasible(const BoundParams& p) {
  return p.delta >= 0.0 && all_positive(height_bound_constraints(p));
}

bool inj_bound_feasible(double eta) { return all_positive(inj_bound_constraints(eta)); }

void SurfaceSummary::validate() const {
  if (genus < 0) fail(ErrorKind::Domain, "genus must be nonnegative");
  if (!(systole > 0.0) || !std::isfinite(systole)) fail(ErrorKind::Domain, "systole must be positive");
  if (!(area > 0.0) || !std::isfinite(area)) fail(ErrorKind::Domain, "area must be positive");
  if (injectivity_radius) {
    const double inj = *injectivity_radius;
    if (!(inj > 0.0) || inj > systole / 2.0) {
      fail(ErrorKind::Domain, "injectivity radius must lie in (0, systole/2]");
    }
  }
}

BallAreaModel BallAreaModel::gromov_height(double rho) {
  if (!std::isfinite(rho) || rho < 0.0) fail(ErrorKind::Domain, "height rho must be finite and >= 0");
  return BallAreaModel(Kind::GromovHeight, rho);
}

BallAreaModel BallAreaModel::scaled(double lambda) const { return BallAreaModel(kind_, rho_ * lambda); }

std::string BallAreaModel::name() const {
  switch (kind_) {
    case Kind::Croke: return "croke";
    case Kind::GromovHeight: return "gromov";
    case Kind::Euclidean: return "bishop";
  }
  return "unknown";
}

double disk_area_lower(const BallAreaModel& model, double radius) {
  if (!std::isfinite(radius) || radius < 0.0) fail(ErrorKind::Domain, "radius must be finite and >= 0");
  switch (model.kind()) {
    case BallAreaModel::Kind::Croke:
      return kCrokeConstant * radius * radius;
    case BallAreaModel::Kind::GromovHeight: {
      if (radius < model.rho() / 2.0) {
        std::ostringstream os;
        os.precision(17);
        os << "height model needs radius >= rho/2 (radius " << radius << ", rho " << model.rho() << ")";
        fail(ErrorKind::OutOfValidity, os.str());
      }
      const double d = 2.0 * radius - model.rho();
      return 0.5 * d * d;
    }
    case BallAreaModel::Kind::Euclidean:
      return kPi * radius * radius;
  }
  return 0.0;
}

double katok_lower_bound(const SurfaceSummary& s) {
  if (s.genus < 1) fail(ErrorKind::Domain, "Katok bound needs genus >= 1");
  if (!(s.area > 0.0) || !std::isfinite(s.area)) fail(ErrorKind::Domain, "area must be positive");
  const double v = 2.0 * kPi * (2.0 * s.genus - 2.0) / s.area;
  return std::sqrt(std::max(0.0, v));
}

EntropyBoundResult entropy_upper_bound(const SurfaceSummary& s, const BoundParams& p,
                                       const BallAreaModel& model) {
  s.validate();
  require_finite_nonnegative(p);
  enforce(net_bound_constraints(p));
  const double big = disk_area_lower(model, (p.beta - 3.0 * p.alpha) * s.systole);
  const double small = disk_area_lower(model, p.alpha * s.systole);
  if (!(small > 0.0)) fail(ErrorKind::Domain, "disk model vanishes at radius alpha*sys");
  return make_entropy_result(1.0 / (p.beta * s.systole), (s.area - big) / small);
}

EntropyBoundResult entropy_upper_bound_inj(double inj, double area, double eta) {
  if (!(inj > 0.0) || !std::isfinite(inj)) fail(ErrorKind::Domain, "injectivity radius must be positive");
  if (!(area > 0.0) || !std::isfinite(area)) fail(ErrorKind::Domain, "area must be positive");
  enforce(inj_bound_constraints(eta));
  const double m = std::min(1.0 - 7.0 * eta, 0.5);
  const double num = 2.0 * area / (inj * inj) - (8.0 - kPi) * m * m;
  const double den = (8.0 - kPi) * eta * eta;
  return make_entropy_result(1.0 / ((1.0 - 4.0 * eta) * inj), num / den);
}

double genus_bound_small_height(const BoundParams& p) {
  require_finite_nonnegative(p);
  enforce(height_bound_constraints(p));
  const double outer = 2.0 * p.beta - 6.0 * p.alpha - p.delta;
  const double num = kSqrt3 - outer * outer;
  if (!(num > 0.0)) fail(ErrorKind::Domain, "sqrt(3) - (2*beta - 6*alpha - delta)^2 must be positive");
  const double inner = 2.0 * p.alpha - p.delta;
  const double arg = num / (inner * inner);
  if (!(arg > 1.0)) fail(ErrorKind::Degenerate, "log argument <= 1, genus bound is meaningless");
  return genus_from_log_argument(arg, p.beta);
}

double genus_bound_half_injectivity(double eta) {
  enforce(inj_bound_constraints(eta));
  const double m = std::min(1.0 - 7.0 * eta, 0.5);
  const double arg = (4.0 * kSqrt3 - (8.0 - kPi) * m * m) / ((8.0 - kPi) * eta * eta);
  if (!(arg > 1.0)) fail(ErrorKind::Degenerate, "log argument <= 1, genus bound is meaningless");
  return genus_from_log_argument(arg, 0.5 - 2.0 * eta);
}

double genus_minus_one_from_entropy(double h_upper, double area) {
  if (!(area > 0.0)) fail(ErrorKind::Domain, "area must be positive");
  return area * h_upper * h_upper / (4.0 * kPi);
}

int genus_conclusion(double bound_on_g_minus_one) {
  if (!std::isfinite(bound_on_g_minus_one)) fail(ErrorKind::Domain, "bound must be finite");
  return static_cast<int>(std::floor(bound_on_g_minus_one)) + 1;
}

double nonpositive_center_count(double area, double sys) {
  if (!(sys > 0.0)) fail(ErrorKind::Domain, "systole must be positive");
  return 64.0 / kPi * (area / (sys * sys)) - 9.0;
}

double betti_genus_bound(int n_centers) {
  if (n_centers < 2) fail(ErrorKind::Domain, "center count must be >= 2");
  const double n = n_centers;
  return (n - 1.0) * (n - 2.0) / 4.0;
}

double inj_from_sys_nonpositive(double sys) {
  if (!(sys > 0.0)) fail(ErrorKind::Domain, "systole must be positive");
  return sys / 2.0;
}

double loewner_ratio(double sys, double area) {
  if (!(sys > 0.0)) fail(ErrorKind::Domain, "systole must be positive");
  if (!(area > 0.0)) fail(ErrorKind::Domain, "area must be positive");
  return sys * sys / area;
}

double loewner_constant() { return 2.0 / kSqrt3; }

bool is_loewner(double ratio, double tolerance) { return ratio <= loewner_constant() + tolerance; }

double gromov_ratio_bound(int genus) {
  if (genus < 1) fail(ErrorKind::Domain, "genus must be >= 1");
  return 64.0 / (4.0 * std::sqrt(static_cast<double>(genus)) + 27.0);
}

}  // namespace systole
