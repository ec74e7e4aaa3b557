#pragma once

#include <vector>

#include "dmu/geometry.hpp"

namespace dmu {

// One point mass: weight w at e^{i theta}.
struct Atom {
  UnitCirclePoint point;
  double weight = 0.0;
};

// Geometric cascade accumulating at theta_star: for j = 1..count an atom of weight
// base_weight * weight_ratio^j sits at angle theta_star + angle_ratio^j.
struct AtomFamily {
  double theta_star = 0.0;
  double angle_ratio = 0.5;   // in (0, 1)
  double base_weight = 1.0;   // > 0
  double weight_ratio = 0.5;  // in (0, 1)
  int count = 16;             // >= 1
};

// Finite positive atomic measure on the unit circle. Families are expanded into explicit
// atoms at construction; atoms within the merge tolerance coalesce by adding weights.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  AtomicMeasure(std::vector<Atom> atoms, std::vector<AtomFamily> families = {});

  // Expanded atom list (families included), sorted by angle, duplicates merged.
  const std::vector<Atom>& atoms() const { return atoms_; }
  // The inputs as given, before expansion.
  const std::vector<Atom>& listed_atoms() const { return listed_; }
  const std::vector<AtomFamily>& families() const { return families_; }

  bool empty() const { return atoms_.empty(); }
  double total_mass() const;

  // Harmonic extension of the measure at z. Throws std::domain_error when |z| >= 1.
  double poisson_integral(complex z) const;

  // Chordal distance from e^{i theta} to the support, family limit points included.
  // Throws std::domain_error for the empty measure.
  double distance_to_support(double theta) const;

  // Angles of the expanded atoms followed by family accumulation points.
  std::vector<double> support_angles() const;
  std::vector<double> accumulation_angles() const;

  // Same data with every family's count doubled; used for truncation-stability checks.
  AtomicMeasure doubled_truncation() const;

  AtomicMeasure operator+(const AtomicMeasure& other) const;

 private:
  std::vector<Atom> listed_;
  std::vector<AtomFamily> families_;
  std::vector<Atom> atoms_;
};

}  // namespace dmu
