#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dmu/capacity.hpp"
#include "dmu/measure.hpp"
#include "doctest.h"
#include "oracles.hpp"

using dmu::AtomicMeasure;
using dmu::CapacityDecision;
using dmu::UnitCirclePoint;

namespace {

constexpr double pi = std::numbers::pi;

AtomicMeasure delta(double theta, double w = 1.0) {
  return AtomicMeasure({{UnitCirclePoint(theta), w}});
}

// The family expansion spelled out independently of AtomicMeasure, for the oracle.
std::vector<std::pair<long double, long double>> cascade_atoms(long double theta_star,
                                                               long double angle_ratio,
                                                               long double base_weight,
                                                               long double weight_ratio,
                                                               int count) {
  std::vector<std::pair<long double, long double>> atoms;
  long double gap = 1.0L, w = base_weight;
  for (int j = 1; j <= count; ++j) {
    gap *= angle_ratio;
    w *= weight_ratio;
    atoms.push_back({theta_star + gap, w});
  }
  return atoms;
}

}  // namespace

TEST_CASE("capacity: an atom passes its own criterion") {
  const auto v = dmu::point_capacity(delta(0.0), UnitCirclePoint(0.0));
  CHECK(v.verdict == CapacityDecision::Positive);
  CHECK(v.truncation_stable);
  // the integrand reduces to 1/(r^2 - r + 2); closed form and deep Simpson agree
  const double exact = oracle::criterion_integral_single_atom();
  const double brute = static_cast<double>(oracle::criterion_partial({{0.0L, 1.0L}}, 0.0L, 40));
  CHECK(std::fabs(brute - exact) < 1e-6);
  CHECK(std::fabs(v.criterion_integral_estimate - exact) < 1e-6);
  CHECK(v.growth_exponent_estimate == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("capacity: positive distance from the support is decisive") {
  const auto v = dmu::point_capacity(delta(0.0), UnitCirclePoint(pi));
  CHECK(v.verdict == CapacityDecision::Zero);
  CHECK(std::isinf(v.criterion_integral_estimate));
  CHECK(v.growth_exponent_estimate < -0.5);  // P = (1-r)/(1+r) decays outright
  // the brute-force partials grow without bound with depth
  const double i10 = static_cast<double>(oracle::criterion_partial({{0.0L, 1.0L}}, pi, 10));
  const double i30 = static_cast<double>(oracle::criterion_partial({{0.0L, 1.0L}}, pi, 30));
  CHECK(i30 / i10 > 50.0);
}

TEST_CASE("capacity: fast-decaying cascade starves its accumulation point") {
  const AtomicMeasure mu({}, {{0.0, 0.5, 1.0, 0.25, 30}});
  // oracle decision at doubled truncation: the partials keep exploding, so divergent
  const auto atoms = cascade_atoms(0.0L, 0.5L, 1.0L, 0.25L, 60);
  const long double i10 = oracle::criterion_partial(atoms, 0.0L, 10);
  const long double i30 = oracle::criterion_partial(atoms, 0.0L, 30);
  REQUIRE(static_cast<double>(i30 / i10) > 100.0);

  const auto v = dmu::point_capacity(mu, UnitCirclePoint(0.0));
  CHECK(v.verdict == CapacityDecision::Zero);
  CHECK(std::isinf(v.criterion_integral_estimate));
  CHECK(v.growth_exponent_estimate < -0.5);
  CHECK(v.truncation_stable);
}

TEST_CASE("capacity: slowly decaying cascade keeps its accumulation point") {
  const AtomicMeasure mu({}, {{1.0, 0.25, 1.0, 0.5, 25}});
  // weights shrink like the square root of the gaps, so P grows like (1-r)^(-1/2)
  const auto atoms = cascade_atoms(1.0L, 0.25L, 1.0L, 0.5L, 50);
  const long double i20 = oracle::criterion_partial(atoms, 1.0L, 20);
  const long double i40 = oracle::criterion_partial(atoms, 1.0L, 40);
  REQUIRE(static_cast<double>((i40 - i20) / i40) < 0.05);  // oracle judges convergent

  const auto v = dmu::point_capacity(mu, UnitCirclePoint(1.0));
  CHECK(v.verdict == CapacityDecision::Positive);
  CHECK(v.growth_exponent_estimate == doctest::Approx(0.5).epsilon(0.2));
  CHECK(v.criterion_integral_estimate ==
        doctest::Approx(static_cast<double>(i40)).epsilon(0.05));
  CHECK(v.truncation_stable);
}

TEST_CASE("capacity: borderline cascade never reports positive") {
  // weights proportional to gaps: P stays bounded but the criterion integral still
  // diverges logarithmically
  const AtomicMeasure mu({}, {{0.5, 0.5, 1.0, 0.5, 24}});
  const auto v = dmu::point_capacity(mu, UnitCirclePoint(0.5));
  CHECK(v.verdict != CapacityDecision::Positive);
}

TEST_CASE("capacity: every atom of every battery measure is positive") {
  const std::vector<AtomicMeasure> battery = {
      delta(0.0),
      AtomicMeasure({{UnitCirclePoint(0.0), 1.0}, {UnitCirclePoint(pi), 2.0}}),
      AtomicMeasure({{UnitCirclePoint(2.0), 0.3}}, {{0.0, 0.5, 1.0, 0.25, 12}}),
      AtomicMeasure({}, {{1.0, 0.25, 1.0, 0.5, 12}}),
  };
  for (const auto& mu : battery)
    for (const auto& a : mu.atoms()) {
      const auto v = dmu::point_capacity(mu, a.point);
      CHECK(v.verdict == CapacityDecision::Positive);
      CHECK(std::isfinite(v.criterion_integral_estimate));
    }
}

TEST_CASE("capacity: chordal distance 0.1 from the closed support forces zero") {
  const AtomicMeasure mu({{UnitCirclePoint(2.0), 0.3}}, {{0.0, 0.5, 1.0, 0.25, 12}});
  for (double t : {0.7, 1.5, 2.8, 4.0, 5.5}) {
    REQUIRE(mu.distance_to_support(t) >= 0.1);
    const auto v = dmu::point_capacity(mu, UnitCirclePoint(t));
    CHECK(v.verdict == CapacityDecision::Zero);
    CHECK(std::isinf(v.criterion_integral_estimate));
  }
}

TEST_CASE("capacity: enlarging the measure preserves positive verdicts") {
  const AtomicMeasure small({}, {{1.0, 0.25, 1.0, 0.5, 25}});
  const AtomicMeasure big =
      small + AtomicMeasure({{UnitCirclePoint(3.0), 2.0}}, {{1.0, 0.25, 2.0, 0.5, 25}});
  REQUIRE(dmu::point_capacity(small, UnitCirclePoint(1.0)).verdict ==
          CapacityDecision::Positive);
  CHECK(dmu::point_capacity(big, UnitCirclePoint(1.0)).verdict == CapacityDecision::Positive);
  for (const auto& a : small.atoms())
    CHECK(dmu::point_capacity(big, a.point).verdict == CapacityDecision::Positive);
}

TEST_CASE("capacity: countable set aggregation") {
  const AtomicMeasure mu = delta(0.0);
  const auto away = dmu::countable_set_capacity_zero(
      mu, {UnitCirclePoint(pi), UnitCirclePoint(0.5 * pi)});
  CHECK(away.capacity_zero());
  CHECK(away.verdicts.size() == 2);

  const auto touching =
      dmu::countable_set_capacity_zero(mu, {UnitCirclePoint(0.0), UnitCirclePoint(pi)});
  CHECK_FALSE(touching.capacity_zero());
  CHECK(touching.aggregate == CapacityDecision::Positive);

  const auto empty = dmu::countable_set_capacity_zero(mu, {});
  CHECK(empty.capacity_zero());
  CHECK(empty.verdicts.empty());
}

TEST_CASE("capacity: positive atom enumeration") {
  CHECK(dmu::positive_capacity_atoms(delta(0.0)).size() == 1);

  const AtomicMeasure two({{UnitCirclePoint(0.0), 1.0}, {UnitCirclePoint(pi), 2.0}});
  const auto pts = dmu::positive_capacity_atoms(two);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].theta == doctest::Approx(0.0));
  CHECK(pts[1].theta == doctest::Approx(pi));

  // fast decay: the accumulation point drops out, the expanded atoms stay; truncation
  // counts kept low enough that no atom crowds the accumulation angle
  const AtomicMeasure starved({}, {{0.0, 0.5, 1.0, 0.25, 24}});
  REQUIRE(starved.atoms().size() == 24);
  CHECK(dmu::positive_capacity_atoms(starved).size() == 24);

  // slow decay: the accumulation point joins the atoms
  const AtomicMeasure kept({}, {{1.0, 0.25, 1.0, 0.5, 14}});
  REQUIRE(kept.atoms().size() == 14);
  CHECK(dmu::positive_capacity_atoms(kept).size() == 15);
}

TEST_CASE("capacity: verdicts are stable under doubled truncation") {
  const std::vector<std::pair<AtomicMeasure, double>> cases = {
      {AtomicMeasure({}, {{0.0, 0.5, 1.0, 0.25, 30}}), 0.0},
      {AtomicMeasure({}, {{1.0, 0.25, 1.0, 0.5, 25}}), 1.0},
      {AtomicMeasure({{UnitCirclePoint(2.0), 0.3}}, {{0.0, 0.5, 1.0, 0.25, 12}}), 0.0},
  };
  for (const auto& [mu, t] : cases)
    CHECK(dmu::point_capacity(mu, UnitCirclePoint(t)).truncation_stable);
}

TEST_CASE("capacity: the empty measure is rejected") {
  CHECK_THROWS_AS(dmu::point_capacity(AtomicMeasure(), UnitCirclePoint(0.0)),
                  std::domain_error);
}
