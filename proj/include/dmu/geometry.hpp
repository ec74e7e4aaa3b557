#pragma once

#include <complex>
#include <numbers>

namespace dmu {

using complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Atoms closer than this (in angle) are treated as the same circle point.
inline constexpr double angle_merge_tol = 1e-12;

// Wrap an angle to [0, 2*pi).
double canonical_angle(double theta);

// Shorter circular distance between two angles, in [0, pi].
double circular_gap(double a, double b);

// |e^{ia} - e^{ib}| via the half-angle, accurate for nearby points.
double chordal_distance(double a, double b);

bool same_angle(double a, double b, double tol = angle_merge_tol);

// A point e^{i theta} on the unit circle, stored by canonical angle.
struct UnitCirclePoint {
  double theta = 0.0;

  UnitCirclePoint() = default;
  explicit UnitCirclePoint(double t) : theta(canonical_angle(t)) {}

  complex unit() const { return std::polar(1.0, theta); }
  bool operator==(const UnitCirclePoint& o) const { return theta == o.theta; }
};

// Closed arc traversed counterclockwise from angle a to angle b.
class Arc {
 public:
  Arc(double start, double end) : a_(start), b_(end) {}

  const UnitCirclePoint& start() const { return a_; }
  const UnitCirclePoint& end() const { return b_; }

  // Arc length in (0, 2*pi]; coincident endpoints mean the full circle.
  double length() const;

  bool contains(double theta, double tol = angle_merge_tol) const;

 private:
  UnitCirclePoint a_, b_;
};

}  // namespace dmu
