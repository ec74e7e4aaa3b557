#include "dmu/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmu {

namespace {

void check_atom(const Atom& a) {
  if (!(a.weight > 0.0) || !std::isfinite(a.weight))
    throw std::domain_error("atom weight must be positive and finite");
  if (!std::isfinite(a.point.theta)) throw std::domain_error("atom theta must be finite");
}

void check_family(const AtomFamily& f) {
  if (!std::isfinite(f.theta_star)) throw std::domain_error("family theta_star must be finite");
  if (!(f.angle_ratio > 0.0 && f.angle_ratio < 1.0))
    throw std::domain_error("family angle_ratio must lie in (0, 1)");
  if (!(f.weight_ratio > 0.0 && f.weight_ratio < 1.0))
    throw std::domain_error("family weight_ratio must lie in (0, 1)");
  if (!(f.base_weight > 0.0) || !std::isfinite(f.base_weight))
    throw std::domain_error("family base_weight must be positive and finite");
  if (f.count < 1) throw std::domain_error("family count must be at least 1");
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms, std::vector<AtomFamily> families)
    : listed_(std::move(atoms)), families_(std::move(families)) {
  for (auto& a : listed_) {
    check_atom(a);
    a.point = UnitCirclePoint(a.point.theta);
  }
  for (const auto& f : families_) check_family(f);

  atoms_ = listed_;
  for (const auto& f : families_) {
    double w = f.base_weight;
    double gap = 1.0;
    for (int j = 1; j <= f.count; ++j) {
      w *= f.weight_ratio;
      gap *= f.angle_ratio;
      atoms_.push_back({UnitCirclePoint(f.theta_star + gap), w});
    }
  }

  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.point.theta < y.point.theta; });
  std::vector<Atom> merged;
  for (const auto& a : atoms_) {
    if (!merged.empty() && same_angle(merged.back().point.theta, a.point.theta))
      merged.back().weight += a.weight;
    else
      merged.push_back(a);
  }
  // wrap-around pair: first and last may represent the same point
  if (merged.size() > 1 && same_angle(merged.front().point.theta, merged.back().point.theta)) {
    merged.front().weight += merged.back().weight;
    merged.pop_back();
  }
  atoms_ = std::move(merged);
}

double AtomicMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

double AtomicMeasure::poisson_integral(complex z) const {
  if (std::abs(z) >= 1.0) throw std::domain_error("poisson_integral requires |z| < 1");
  const double one_minus = 1.0 - std::norm(z);
  double sum = 0.0;
  for (const auto& a : atoms_) {
    const complex d = 1.0 - std::conj(a.point.unit()) * z;
    sum += a.weight * one_minus / std::norm(d);
  }
  return sum;
}

double AtomicMeasure::distance_to_support(double theta) const {
  if (atoms_.empty()) throw std::domain_error("distance_to_support of the zero measure");
  double best = 2.0;
  for (const auto& a : atoms_) best = std::min(best, chordal_distance(theta, a.point.theta));
  for (const auto& f : families_) best = std::min(best, chordal_distance(theta, f.theta_star));
  return best;
}

std::vector<double> AtomicMeasure::support_angles() const {
  std::vector<double> out;
  out.reserve(atoms_.size() + families_.size());
  for (const auto& a : atoms_) out.push_back(a.point.theta);
  for (const auto& f : families_) {
    double t = canonical_angle(f.theta_star);
    bool dup = false;
    for (double s : out) dup = dup || same_angle(s, t);
    if (!dup) out.push_back(t);
  }
  return out;
}

std::vector<double> AtomicMeasure::accumulation_angles() const {
  std::vector<double> out;
  for (const auto& f : families_) {
    double t = canonical_angle(f.theta_star);
    bool dup = false;
    for (double s : out) dup = dup || same_angle(s, t);
    if (!dup) out.push_back(t);
  }
  return out;
}

AtomicMeasure AtomicMeasure::doubled_truncation() const {
  std::vector<AtomFamily> fams = families_;
  for (auto& f : fams) f.count *= 2;
  return AtomicMeasure(listed_, fams);
}

AtomicMeasure AtomicMeasure::operator+(const AtomicMeasure& other) const {
  std::vector<Atom> atoms = listed_;
  atoms.insert(atoms.end(), other.listed_.begin(), other.listed_.end());
  std::vector<AtomFamily> fams = families_;
  fams.insert(fams.end(), other.families_.begin(), other.families_.end());
  return AtomicMeasure(std::move(atoms), std::move(fams));
}

}  // namespace dmu
