#pragma once

#include <utility>
#include <vector>

#include "dmu/geometry.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

// One boundary factor |e^{it} - e^{i theta0}|^alpha; alpha > -1/2 keeps the squared modulus
// integrable, alpha > 0 marks a boundary zero.
struct PowerFactor {
  UnitCirclePoint point;
  double alpha = 0.0;
};

// Boundary modulus of an outer factor:
//   log phi(t) = log_constant + sum_k alpha_k log|e^{it} - e^{i theta_k}| + s(t)
// where s is bounded, given by equispaced samples under trigonometric interpolation.
class BoundaryModulus {
 public:
  BoundaryModulus() = default;
  BoundaryModulus(double log_constant, std::vector<PowerFactor> powers,
                  std::vector<double> grid_samples = {});

  double log_constant() const { return log_constant_; }
  const std::vector<PowerFactor>& powers() const { return powers_; }
  const std::vector<double>& grid() const { return grid_; }
  bool trivial() const;

  // Sum of power exponents within merge tolerance of t, and the remaining finite part of
  // log phi(t). Exact at power points; the basis for all special-point evaluations.
  std::pair<double, double> exponent_and_finite(double t) const;

  // phi(t) with exact zeros/poles at power points.
  double value(double t) const;

  // log phi(t) evaluated directly; +-infinity only if t hits a power point exactly.
  // Quadrature nodes use this form so near-singular panels see the true local profile.
  double log_value(double t) const;

  // log phi at theta_ref + delta with the distance to each power point formed from the
  // exact difference (theta_ref - theta_k) + delta. When theta_ref equals a power angle
  // (the same double, as graded quadrature guarantees) the hugged term reduces to
  // alpha * log(2|sin(delta/2)|) with no cancellation, so deep shells stay accurate.
  double log_value_near(double theta_ref, double delta) const;

  // Grid term s(t) from the trigonometric interpolant.
  double smooth(double t) const;

  // Analytic completion G with Re G = harmonic extension of log phi; exp(G) is the outer
  // factor, positive at the origin. Defined for |z| < 1 and on the circle off power points.
  complex herglotz_log(complex z) const;

  // Analytic completion of the grid term alone (no constant, no power factors).
  complex grid_analytic(complex z) const;
  std::pair<complex, complex> herglotz_log_with_derivative(complex z) const;

  int grid_degree() const { return coeff_.empty() ? 0 : (int)coeff_.size() - 1; }

 private:
  double log_constant_ = 0.0;
  std::vector<PowerFactor> powers_;
  std::vector<double> grid_;
  std::vector<complex> coeff_;  // analytic-completion coefficients a_k, H(z) = sum a_k z^k
};

struct BlaschkeZero {
  complex zero;
  int mult = 1;
};

struct SingularAtom {
  UnitCirclePoint point;
  double mass = 0.0;
};

// Zero data: zeros in the open disc, boundary zeros, and accumulation points of the disc
// zero list (always empty for the finite lists representable here).
struct ZeroSetDescriptor {
  std::vector<BlaschkeZero> disk;
  std::vector<UnitCirclePoint> boundary;
  std::vector<UnitCirclePoint> accumulation;
};

// H^2 function in factored form: finite Blaschke product, finitely many singular atoms and
// an outer factor given by its boundary modulus. The represented function is the canonical
// member of its modulus class: outer factor positive at the origin, Blaschke factors
// (|a|/a)(a - z)/(1 - conj(a) z), plain z for zeros at the origin.
class StructuredFunction {
 public:
  StructuredFunction() = default;  // constant 1
  StructuredFunction(std::vector<BlaschkeZero> blaschke, std::vector<SingularAtom> singular,
                     BoundaryModulus outer);

  static StructuredFunction constant(double c);  // c > 0
  static StructuredFunction monomial(int n);     // z^n

  const std::vector<BlaschkeZero>& blaschke() const { return blaschke_; }
  const std::vector<SingularAtom>& singular() const { return singular_; }
  const BoundaryModulus& outer() const { return outer_; }
  bool is_outer() const { return blaschke_.empty() && singular_.empty(); }

  complex evaluate(complex z) const;  // |z| < 1, domain error otherwise
  std::pair<complex, complex> evaluate_with_derivative(complex z) const;

  // Nontangential boundary value at e^{it}: exact zero at singular atoms and positive power
  // points, infinite modulus at negative power points.
  complex boundary_value(double t) const;

  // Boundary value at theta_ref + delta with gaps to every special angle formed as
  // (theta_ref - angle) + delta, so graded-quadrature nodes hugging a special point see
  // exact distances. Points are treated as "on" a special angle only when the gap is
  // exactly zero (interior quadrature nodes never are), unlike boundary_value's
  // tolerance-based matching.
  complex boundary_value_near(double theta_ref, double delta) const;
  double radial_limit_modulus(double t) const;

  std::vector<UnitCirclePoint> boundary_zero_set() const;
  ZeroSetDescriptor lower_zero_set() const;

  // Angles where the boundary behavior is non-smooth; quadratures grade toward these.
  std::vector<double> special_angles() const;
  // Trig-degree bound used to cap quadrature panel lengths.
  int oscillation_degree() const;
  // (center, radius) intervals around singular atoms where the boundary phase oscillates
  // faster than fixed-order panels resolve.
  std::vector<std::pair<double, double>> singular_guard_intervals() const;

 private:
  std::vector<BlaschkeZero> blaschke_;
  std::vector<SingularAtom> singular_;
  BoundaryModulus outer_;
};

// Mean of |f|^2 over the circle.
EnergyValue h2_norm_sq(const StructuredFunction& f, const QuadratureConfig& cfg = {});

// Pointwise modulus min (wedge) and max (vee) of outer functions. Shared power points keep
// the dominating exponent; the bounded remainder is sampled on a common refinement grid.
// Throws std::domain_error unless both inputs are outer.
StructuredFunction wedge(const StructuredFunction& f, const StructuredFunction& g,
                         int grid_size = 4096);
StructuredFunction vee(const StructuredFunction& f, const StructuredFunction& g,
                       int grid_size = 4096);

// Localization to a closed arc V: the result has the modulus of (z - e^{ia})(e^{ib} - z) f(z)
// on V and of (z - e^{ia})(e^{ib} - z) off V. Requires f outer with bounded modulus and no
// power factor at the arc endpoints.
StructuredFunction fusion(const StructuredFunction& f, const Arc& arc, int grid_size = 4096);

// Greatest common inner divisor: shared Blaschke zeros at minimal multiplicity, shared
// singular atoms at minimal mass, trivial outer part.
StructuredFunction gcd_inner(const StructuredFunction& f, const StructuredFunction& g);

// Product of two factored representations.
StructuredFunction product(const StructuredFunction& f, const StructuredFunction& g);

}  // namespace dmu
