#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dmu/dirichlet.hpp"
#include "oracles.hpp"

using namespace dmu;

namespace {

StructuredFunction outer_fn(double log_c, std::vector<PowerFactor> powers,
                            std::vector<double> grid = {}) {
  return {{}, {}, BoundaryModulus(log_c, std::move(powers), std::move(grid))};
}

PowerFactor power(double theta, double alpha) { return {UnitCirclePoint(theta), alpha}; }

}  // namespace

TEST_CASE("local integral of monomials matches the expansion oracle on both routes") {
  QuadratureConfig cfg;
  for (int n = 0; n <= 6; ++n) {
    for (double th : {0.0, 1.1, 3.7}) {
      const double exact = (double)oracle::monomial_local_integral(n, th);
      const UnitCirclePoint p(th);
      EnergyValue rs = local_dirichlet_factored(StructuredFunction::monomial(n), p, cfg);
      CHECK(!rs.diverged);
      CHECK(rs.value == doctest::Approx(exact).epsilon(1e-13));
      EnergyValue dd = local_dirichlet_direct(StructuredFunction::monomial(n), p, cfg);
      CHECK(!dd.diverged);
      CHECK(std::fabs(dd.value - exact) < 1e-9 * (1.0 + exact));
    }
  }
}

TEST_CASE("local integral: constants vanish and a root factor forces a unit integrand") {
  QuadratureConfig cfg;
  const StructuredFunction one = StructuredFunction::constant(1.0);
  CHECK(local_dirichlet_direct(one, UnitCirclePoint(2.2), cfg).value == 0.0);
  CHECK(local_dirichlet_factored(one, UnitCirclePoint(2.2), cfg).value == 0.0);

  // |f| = |e^{it} - e^{i theta0}| with base point theta0: the quotient is exactly 1
  const double th0 = 0.9;
  const StructuredFunction root = outer_fn(0.0, {power(th0, 1.0)});
  EnergyValue dd = local_dirichlet_direct(root, UnitCirclePoint(th0), cfg);
  CHECK(dd.value == doctest::Approx(1.0).epsilon(1e-12));
  EnergyValue rs = local_dirichlet_factored(root, UnitCirclePoint(th0), cfg);
  CHECK(rs.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("factored route: Blaschke terms are exact Poisson kernel sums") {
  QuadratureConfig cfg;
  // zero at the origin seen from the boundary: kernel (1 - 0)/1 = 1
  EnergyValue rs = local_dirichlet_factored(StructuredFunction::monomial(1), UnitCirclePoint(0.0), cfg);
  CHECK(rs.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rs.error_estimate < 1e-12);

  // zero at 0.5 seen from angle 0: (1 - 0.25)/|1 - 0.5|^2 = 3
  const StructuredFunction b({{0.5, 1}}, {}, BoundaryModulus());
  EnergyValue rs2 = local_dirichlet_factored(b, UnitCirclePoint(0.0), cfg);
  CHECK(rs2.value == doctest::Approx(3.0).epsilon(1e-14));
  EnergyValue dd2 = local_dirichlet_direct(b, UnitCirclePoint(0.0), cfg);
  CHECK(std::fabs(dd2.value - 3.0) < 1e-8);
}

TEST_CASE("singular factors: exact atom sums, guarded direct quadrature, atom divergence") {
  QuadratureConfig cfg;
  const StructuredFunction s({}, {{UnitCirclePoint(std::numbers::pi), 0.5}}, BoundaryModulus());

  // 2 * mass / chord^2 with chord = 2: exactly 1/4
  EnergyValue rs = local_dirichlet_factored(s, UnitCirclePoint(0.0), cfg);
  CHECK(rs.value == doctest::Approx(0.25).epsilon(1e-14));

  // the direct quadrature resolves the boundary phase only down to the guard scale
  EnergyValue dd = local_dirichlet_direct(s, UnitCirclePoint(0.0), cfg);
  CHECK(!dd.diverged);
  CHECK(std::fabs(dd.value - 0.25) < 5e-3);
  CHECK(std::fabs(dd.value - 0.25) <= dd.error_estimate + 1e-6);

  // at the atom itself both routes diverge
  CHECK(local_dirichlet_factored(s, UnitCirclePoint(std::numbers::pi), cfg).diverged);
  CHECK(local_dirichlet_direct(s, UnitCirclePoint(std::numbers::pi), cfg).diverged);

  // an outer zero at the atom cancels it: |f| = chord there, so the quotient is 1 again
  const StructuredFunction mixed({}, {{UnitCirclePoint(1.0), 0.3}},
                                 BoundaryModulus(0.0, {power(1.0, 1.0)}));
  EnergyValue rsm = local_dirichlet_factored(mixed, UnitCirclePoint(1.0), cfg);
  CHECK(rsm.value == doctest::Approx(1.0).epsilon(1e-10));
  EnergyValue ddm = local_dirichlet_direct(mixed, UnitCirclePoint(1.0), cfg);
  CHECK(ddm.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("factored route agrees with the direct oracle on a 30-case battery") {
  QuadratureConfig cfg;
  std::vector<std::pair<StructuredFunction, double>> battery;
  auto add = [&battery](StructuredFunction f, std::initializer_list<double> points) {
    for (double th : points) battery.push_back({f, th});
  };

  const std::vector<double> cosine_grid = [] {
    std::vector<double> g(16);
    for (int j = 0; j < 16; ++j) g[j] = 0.2 * std::cos(two_pi * j / 16.0);
    return g;
  }();

  // outer-only
  add(StructuredFunction::constant(2.0), {0.4});
  add(outer_fn(0.0, {power(0.0, 1.0)}), {0.3, 2.0, 4.9});
  add(outer_fn(0.1, {power(1.0, 0.7)}), {0.2, 2.6});
  add(outer_fn(0.0, {power(0.5, 1.5), power(2.5, 0.8)}), {1.4, 4.2});
  add(outer_fn(0.0, {}, cosine_grid), {0.7, 3.3});
  add(outer_fn(0.0, {power(4.0, -0.3)}, {}), {0.9, 2.7});
  add(outer_fn(-0.2, {power(2.0, 1.0)}, cosine_grid), {0.6, 5.1});
  // Blaschke-only
  add(StructuredFunction({{0.5, 1}}, {}, BoundaryModulus()), {1.2, 3.9});
  add(StructuredFunction({{std::polar(0.7, 1.0), 1}}, {}, BoundaryModulus()), {0.1, 2.4});
  add(StructuredFunction({{complex(0.3, 0.4), 2}}, {}, BoundaryModulus()), {1.8});
  add(StructuredFunction({{0.5, 1}, {complex(-0.3, 0.2), 1}}, {}, BoundaryModulus()), {2.9, 5.6});
  add(StructuredFunction::monomial(3), {0.8});
  // mixed
  add(StructuredFunction({{0.4, 1}}, {}, BoundaryModulus(0.0, {power(0.0, 1.0)})), {1.5, 3.1});
  add(StructuredFunction({{complex(0.2, -0.5), 1}}, {},
                         BoundaryModulus(0.0, {power(1.0, 0.7)}, cosine_grid)),
      {2.3, 4.6});
  add(StructuredFunction({{std::polar(0.6, 2.0), 1}}, {},
                         BoundaryModulus(0.2, {power(3.0, 1.2)})),
      {0.5, 5.9});
  add(StructuredFunction({{0.0, 2}}, {}, BoundaryModulus(0.0, {power(5.0, -0.2)})), {1.1, 3.6});
  REQUIRE(battery.size() == 30);

  for (const auto& [f, th] : battery) {
    const UnitCirclePoint p(th);
    EnergyValue dd = local_dirichlet_direct(f, p, cfg);
    EnergyValue rs = local_dirichlet_factored(f, p, cfg);
    REQUIRE(!dd.diverged);
    REQUIRE(!rs.diverged);
    CHECK(std::fabs(rs.value - dd.value) <= 1e-6 * (1.0 + dd.value));
  }
}

TEST_CASE("dirichlet energy: monomial identity, linearity, divergence propagation") {
  QuadratureConfig cfg;
  const AtomicMeasure mu({{UnitCirclePoint(0.0), 0.5}, {UnitCirclePoint(2.0), 0.25}},
                         {{1.0, 0.5, 0.125, 0.5, 3}});
  const double mass = mu.total_mass();
  for (int n = 0; n <= 5; ++n) {
    EnergyValue d = dirichlet_energy(StructuredFunction::monomial(n), mu, cfg);
    CHECK(d.value == doctest::Approx(n * mass).epsilon(1e-13));
  }

  const AtomicMeasure mu1({{UnitCirclePoint(0.0), 0.6}});
  const AtomicMeasure mu2({{UnitCirclePoint(0.0), 0.2}, {UnitCirclePoint(1.0), 0.4}});
  const StructuredFunction f({{0.5, 1}}, {}, BoundaryModulus(0.0, {power(2.0, 1.0)}));
  const double lhs = dirichlet_energy(f, mu1 + mu2, cfg).value;
  const double rhs = dirichlet_energy(f, mu1, cfg).value + dirichlet_energy(f, mu2, cfg).value;
  CHECK(std::fabs(lhs - rhs) < 1e-10 * (1.0 + std::fabs(rhs)));

  // a boundary zero too weak for the atom on top of it: D_0 diverges
  const StructuredFunction weak = outer_fn(0.0, {power(0.0, 0.3)});
  const AtomicMeasure at0({{UnitCirclePoint(0.0), 1.0}});
  CHECK(dirichlet_energy(weak, at0, cfg).diverged);
  CHECK(local_dirichlet_direct(weak, UnitCirclePoint(0.0), cfg).diverged);
}

TEST_CASE("area quadrature reproduces monomial energies and cross-checks the local route") {
  QuadratureConfig cfg;
  const AtomicMeasure at0({{UnitCirclePoint(0.0), 1.0}});

  CHECK(dirichlet_energy_area(StructuredFunction::constant(1.0), at0, cfg).value == 0.0);
  for (int n : {1, 2, 5}) {
    EnergyValue a = dirichlet_energy_area(StructuredFunction::monomial(n), at0, cfg);
    CHECK(!a.diverged);
    CHECK(std::fabs(a.value - n) < 1e-4 * n);
  }

  std::vector<std::pair<StructuredFunction, AtomicMeasure>> battery;
  const AtomicMeasure two({{UnitCirclePoint(1.0), 0.7}, {UnitCirclePoint(4.0), 0.3}});
  const AtomicMeasure fam({{UnitCirclePoint(0.0), 0.5}}, {{2.0, 0.5, 0.25, 0.5, 4}});
  battery.push_back({outer_fn(0.0, {power(0.0, 1.0)}), at0});
  battery.push_back({outer_fn(0.0, {power(2.0, 0.8)}), AtomicMeasure({{UnitCirclePoint(2.0), 1.0}})});
  battery.push_back({StructuredFunction({{0.5, 1}}, {}, BoundaryModulus()), two});
  battery.push_back({StructuredFunction::monomial(2), two});
  battery.push_back({StructuredFunction({{complex(0.3, 0.4), 1}}, {},
                                        BoundaryModulus(0.0, {power(1.0, 1.0)})),
                     two});
  battery.push_back({outer_fn(0.0, {power(0.5, 1.5), power(2.5, 0.8)}), fam});
  battery.push_back({StructuredFunction({{0.4, 1}}, {}, BoundaryModulus(-0.1, {power(0.0, 1.0)})),
                     fam});
  for (const auto& [f, mu] : battery) {
    EnergyValue local = dirichlet_energy(f, mu, cfg);
    EnergyValue area = dirichlet_energy_area(f, mu, cfg);
    REQUIRE(!local.diverged);
    REQUIRE(!area.diverged);
    CHECK(std::fabs(area.value - local.value) <= 1e-4 * (1.0 + local.value));
  }

  // divergence is detected by radial growth as well
  CHECK(dirichlet_energy_area(outer_fn(0.0, {power(0.0, 0.3)}), at0, cfg).diverged);
}

TEST_CASE("mu-norm of monomials is 1 + n mu(T)") {
  QuadratureConfig cfg;
  const AtomicMeasure mu({{UnitCirclePoint(0.7), 0.45}}, {{3.0, 0.5, 0.25, 0.5, 5}});
  const double mass = mu.total_mass();
  for (int n = 0; n <= 5; ++n) {
    EnergyValue v = mu_norm_sq(StructuredFunction::monomial(n), mu, cfg);
    CHECK(!v.diverged);
    CHECK(v.value == doctest::Approx(1.0 + n * mass).epsilon(1e-11));
  }
}

TEST_CASE("mu inner product: trivial values, hermitian symmetry, divergence errors") {
  QuadratureConfig cfg;
  const AtomicMeasure mu({{UnitCirclePoint(1.3), 0.8}});
  CHECK(std::abs(mu_inner(StructuredFunction::constant(1.0), StructuredFunction::monomial(1), mu,
                          cfg)) < 1e-10);

  const AtomicMeasure at0({{UnitCirclePoint(0.0), 1.0}});
  const complex g21 =
      mu_inner(StructuredFunction::monomial(2), StructuredFunction::monomial(1), at0, cfg);
  CHECK(std::abs(g21 - complex(1.0)) < 1e-8);

  const StructuredFunction f = outer_fn(0.0, {power(0.0, 1.0)});
  const StructuredFunction g({{0.5, 1}}, {}, BoundaryModulus());
  const complex fg = mu_inner(f, g, mu, cfg);
  const complex gf = mu_inner(g, f, mu, cfg);
  CHECK(std::abs(fg - std::conj(gf)) < 1e-9);
  // diagonal consistency with the norm route
  const complex ff = mu_inner(f, f, mu, cfg);
  EnergyValue nf = mu_norm_sq(f, mu, cfg);
  CHECK(std::fabs(ff.real() - nf.value) < 1e-6 * (1.0 + nf.value));
  CHECK(std::fabs(ff.imag()) < 1e-9);

  CHECK_THROWS_AS(mu_inner(outer_fn(0.0, {power(0.0, 0.3)}), StructuredFunction::constant(1.0),
                           at0, cfg),
                  std::domain_error);
}

TEST_CASE("monomial Gram entries match the Poisson-mode oracle to 1e-8") {
  QuadratureConfig cfg;
  const double th = 0.7, w = 0.8;
  const AtomicMeasure mu({{UnitCirclePoint(th), w}});
  const std::vector<std::pair<long double, long double>> atoms = {{(long double)th, (long double)w}};
  for (int m = 0; m <= 20; ++m) {
    for (int n = m; n <= 20; ++n) {
      const complex got =
          mu_inner(StructuredFunction::monomial(m), StructuredFunction::monomial(n), mu, cfg);
      const auto ex = oracle::monomial_gram_entry(m, n, atoms);
      const complex exact((double)ex.real(), (double)ex.imag());
      CHECK(std::abs(got - exact) < 1e-8);
    }
  }
}
