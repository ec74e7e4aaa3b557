#include "dmu/geometry.hpp"

#include <cmath>

namespace dmu {

double canonical_angle(double theta) {
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  // fmod of a value just below a multiple of 2*pi can land exactly on 2*pi after the shift
  if (t >= two_pi) t = 0.0;
  return t;
}

double circular_gap(double a, double b) {
  double d = std::fabs(canonical_angle(a) - canonical_angle(b));
  return (d > std::numbers::pi) ? two_pi - d : d;
}

double chordal_distance(double a, double b) {
  return 2.0 * std::fabs(std::sin(0.5 * (a - b)));
}

bool same_angle(double a, double b, double tol) {
  return circular_gap(a, b) <= tol;
}

double Arc::length() const {
  double len = canonical_angle(b_.theta - a_.theta);
  return (len == 0.0) ? two_pi : len;
}

bool Arc::contains(double theta, double tol) const {
  double off = canonical_angle(theta - a_.theta);
  if (off <= length() + tol) return true;
  return off >= two_pi - tol;  // wrapped back onto the start point
}

}  // namespace dmu
