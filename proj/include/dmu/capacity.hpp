#pragma once

#include <vector>

#include "dmu/geometry.hpp"
#include "dmu/measure.hpp"

namespace dmu {

enum class CapacityDecision { Positive, Zero, Undetermined };

const char* to_string(CapacityDecision d);

// Verdict of the capacity criterion at one boundary point, with the diagnostics behind it.
// The criterion integral int_0^1 dr / ((1-r) P_mu(r lambda) + (1-r)^2) converges exactly
// when lambda carries positive capacity for the measure, so Positive always pairs with a
// finite estimate and Zero with an infinite one. Only verdicts are reported; the library
// never claims a capacity value.
struct CapacityVerdict {
  CapacityDecision verdict = CapacityDecision::Undetermined;
  // Dyadic quadrature plus geometric tail when the integral is judged convergent,
  // +infinity when judged divergent, the bare partial when undetermined.
  double criterion_integral_estimate = 0.0;
  // beta in P_mu(r lambda) ~ C (1-r)^(-beta), fit on the samples r = 1 - 2^(-k).
  double growth_exponent_estimate = 0.0;
  // Whether doubling every family's truncation count reproduces the verdict.
  bool truncation_stable = true;
};

// Decide the verdict for a single point. Points matching an atom to the merge tolerance
// are Positive outright. Otherwise points within 1e-9 in angle of a family accumulation
// point go through the growth regression, with sampling capped at the scale the truncated
// cascade resolves; the accumulation neighborhood wins over nearby deep cascade atoms,
// whose weights are negligible at that depth. Remaining points within 1e-9 of an atom are
// Positive (indistinguishable from it at this precision), and points at positive distance
// from the closed support are Zero. Throws std::domain_error for the empty measure.
CapacityVerdict point_capacity(const AtomicMeasure& mu, UnitCirclePoint p);

// Aggregate over a finite list of points: Zero when every point is Zero (the empty list
// vacuously so), Positive when any point is Positive, Undetermined otherwise. Relies on
// countable subadditivity of the capacity.
struct SetCapacityResult {
  CapacityDecision aggregate = CapacityDecision::Zero;
  std::vector<CapacityVerdict> verdicts;  // one per queried point, in input order

  bool capacity_zero() const { return aggregate == CapacityDecision::Zero; }
};

SetCapacityResult countable_set_capacity_zero(const AtomicMeasure& mu,
                                              const std::vector<UnitCirclePoint>& points);

// Expanded atoms plus those family accumulation points whose verdict is Positive, sorted
// by angle. Every atom passes the criterion, so atoms are included without recomputation.
std::vector<UnitCirclePoint> positive_capacity_atoms(const AtomicMeasure& mu);

}  // namespace dmu
