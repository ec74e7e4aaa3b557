#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "dmu/measure.hpp"
#include "oracles.hpp"

using namespace dmu;

TEST_CASE("angle canonicalization and circle geometry") {
  CHECK(canonical_angle(-0.5) == doctest::Approx(two_pi - 0.5));
  CHECK(canonical_angle(two_pi) == 0.0);
  CHECK(canonical_angle(7.0 * two_pi + 1.0) == doctest::Approx(1.0));
  CHECK(circular_gap(0.1, two_pi - 0.1) == doctest::Approx(0.2));
  CHECK(chordal_distance(0.0, std::numbers::pi) == doctest::Approx(2.0));
  // chordal distance agrees with the literal complex difference
  for (double a : {0.3, 2.0, 5.5})
    for (double b : {0.0, 1.7, 6.1})
      CHECK(chordal_distance(a, b) ==
            doctest::Approx(std::abs(std::polar(1.0, a) - std::polar(1.0, b))).epsilon(1e-13));
}

TEST_CASE("arcs: length, wrap-around containment, full circle") {
  Arc upper(0.0, std::numbers::pi);
  CHECK(upper.length() == doctest::Approx(std::numbers::pi));
  CHECK(upper.contains(1.0));
  CHECK(upper.contains(0.0));
  CHECK(!upper.contains(4.0));

  Arc wrap(5.0, 1.0);  // crosses angle 0
  CHECK(wrap.length() == doctest::Approx(two_pi - 4.0));
  CHECK(wrap.contains(6.0));
  CHECK(wrap.contains(0.5));
  CHECK(!wrap.contains(3.0));

  Arc full(1.0, 1.0);
  CHECK(full.length() == doctest::Approx(two_pi));
  CHECK(full.contains(4.2));
}

TEST_CASE("measure validation rejects bad data") {
  CHECK_THROWS_AS(AtomicMeasure({{UnitCirclePoint(0.0), -1.0}}), std::domain_error);
  CHECK_THROWS_AS(AtomicMeasure({{UnitCirclePoint(0.0), 0.0}}), std::domain_error);
  CHECK_THROWS_AS(AtomicMeasure({}, {{0.0, 1.5, 1.0, 0.5, 3}}), std::domain_error);
  CHECK_THROWS_AS(AtomicMeasure({}, {{0.0, 0.5, 1.0, 0.5, 0}}), std::domain_error);
  CHECK_THROWS_AS(AtomicMeasure({}, {{0.0, 0.5, -2.0, 0.5, 3}}), std::domain_error);
}

TEST_CASE("family expansion: geometric angles and weights") {
  AtomicMeasure mu({}, {{1.0, 0.5, 1.0, 0.5, 3}});
  REQUIRE(mu.atoms().size() == 3);
  CHECK(mu.total_mass() == doctest::Approx(0.875));  // 0.5 + 0.25 + 0.125
  // expanded atoms sit at theta_star + angle_ratio^j, sorted by angle
  CHECK(mu.atoms()[0].point.theta == doctest::Approx(1.125));
  CHECK(mu.atoms()[1].point.theta == doctest::Approx(1.25));
  CHECK(mu.atoms()[2].point.theta == doctest::Approx(1.5));
  CHECK(mu.atoms()[0].weight == doctest::Approx(0.125));
  CHECK(mu.atoms()[2].weight == doctest::Approx(0.5));
  CHECK(mu.accumulation_angles().size() == 1);
  CHECK(mu.accumulation_angles()[0] == doctest::Approx(1.0));
}

TEST_CASE("coinciding atoms merge, including across the wrap") {
  AtomicMeasure mu({{UnitCirclePoint(1.0), 0.5}, {UnitCirclePoint(1.0 + 1e-13), 0.25}});
  REQUIRE(mu.atoms().size() == 1);
  CHECK(mu.atoms()[0].weight == doctest::Approx(0.75));

  AtomicMeasure wrap({{UnitCirclePoint(0.0), 1.0}, {UnitCirclePoint(two_pi - 1e-13), 2.0}});
  REQUIRE(wrap.atoms().size() == 1);
  CHECK(wrap.atoms()[0].weight == doctest::Approx(3.0));
}

TEST_CASE("poisson integral: pinned values and domain guard") {
  AtomicMeasure delta({{UnitCirclePoint(0.0), 1.0}});
  CHECK(delta.poisson_integral(0.0) == doctest::Approx(1.0));
  CHECK(delta.poisson_integral(0.5) == doctest::Approx(3.0));  // (1 - 1/4)/(1/2)^2
  CHECK_THROWS_AS(delta.poisson_integral(complex(1.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(delta.poisson_integral(complex(0.8, 0.7)), std::domain_error);
}

TEST_CASE("poisson integral matches extended-precision summation") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> ang(0.0, two_pi), wgt(0.1, 2.0), rad(0.0, 0.97);
  std::vector<Atom> atoms;
  std::vector<std::pair<long double, long double>> ref;
  for (int i = 0; i < 10; ++i) {
    double t = ang(rng), w = wgt(rng);
    atoms.push_back({UnitCirclePoint(t), w});
    ref.push_back({t, w});
  }
  AtomicMeasure mu(atoms);
  for (int i = 0; i < 50; ++i) {
    complex z = std::polar(rad(rng), ang(rng));
    long double expect = oracle::poisson_sum(ref, std::complex<long double>(z.real(), z.imag()));
    CHECK(mu.poisson_integral(z) == doctest::Approx((double)expect).epsilon(1e-12));
  }
}

TEST_CASE("poisson integral properties: mass at 0, additivity, radial growth") {
  AtomicMeasure m1({{UnitCirclePoint(0.0), 1.0}, {UnitCirclePoint(2.0), 0.3}});
  AtomicMeasure m2({{UnitCirclePoint(4.0), 0.7}}, {{1.0, 0.5, 1.0, 0.5, 5}});
  CHECK(m1.poisson_integral(0.0) == doctest::Approx(m1.total_mass()).epsilon(1e-12));
  CHECK(m2.poisson_integral(0.0) == doctest::Approx(m2.total_mass()).epsilon(1e-12));

  AtomicMeasure sum = m1 + m2;
  for (complex z : {complex(0.3, 0.4), complex(-0.7, 0.1), complex(0.0, 0.9)})
    CHECK(sum.poisson_integral(z) ==
          doctest::Approx(m1.poisson_integral(z) + m2.poisson_integral(z)).epsilon(1e-12));

  // radial growth toward an atom
  double prev = 0.0;
  for (double r : {0.9, 0.95, 0.99, 0.999}) {
    double p = m1.poisson_integral(std::polar(r, 2.0));
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("support geometry") {
  AtomicMeasure mu({{UnitCirclePoint(0.0), 1.0}}, {{3.0, 0.5, 1.0, 0.5, 4}});
  CHECK(mu.distance_to_support(0.0) == doctest::Approx(0.0));
  CHECK(mu.distance_to_support(3.0) == doctest::Approx(0.0));  // accumulation point counts
  CHECK(mu.distance_to_support(std::numbers::pi) ==
        doctest::Approx(chordal_distance(std::numbers::pi, 3.125)).epsilon(1e-12));
  CHECK_THROWS_AS(AtomicMeasure(std::vector<Atom>{}).distance_to_support(1.0),
                  std::domain_error);

  auto support = mu.support_angles();
  CHECK(support.size() == 6);  // 1 listed + 4 expanded + accumulation angle

  AtomicMeasure doubled = mu.doubled_truncation();
  CHECK(doubled.atoms().size() == 9);
  CHECK(doubled.families()[0].count == 8);
  // truncation only adds mass near the accumulation point
  CHECK(doubled.total_mass() > mu.total_mass());
  CHECK(doubled.total_mass() - mu.total_mass() < 0.0625 + 1e-12);
}
