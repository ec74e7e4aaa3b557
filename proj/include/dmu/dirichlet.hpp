#pragma once

#include "dmu/function.hpp"
#include "dmu/measure.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

// Local Dirichlet integral D_p(f) = int |f(e^{it}) - f(p)|^2 / |e^{it} - p|^2 dt/2pi by
// direct quadrature of the difference quotient, graded toward p and toward every special
// angle of f. Near singular atoms the boundary phase oscillates faster than any fixed rule
// resolves; panels whose phase variation exceeds the resolvable budget drop the oscillatory
// cross term (its mean) and fold a stationary-phase bound into error_estimate.
EnergyValue local_dirichlet_direct(const StructuredFunction& f, const UnitCirclePoint& p,
                                   const QuadratureConfig& cfg = {});

// Same quantity through the inner-outer factorization: an exact sum over Blaschke zeros
// (Poisson kernel of each zero times |f_o(p)|^2), an exact sum over singular atoms
// (2 mass / chord^2 times |f_o(p)|^2, infinite if an atom sits at p with f_o(p) != 0),
// and a quadrature of the nonnegative outer integrand
// |f(lambda)|^2 - |f(p)|^2 - 2|f(p)|^2 log|f(lambda)/f(p)| over chord^2.
// When f_o(p) = 0 the whole integral collapses to int |f(lambda)|^2 / chord^2.
EnergyValue local_dirichlet_factored(const StructuredFunction& f, const UnitCirclePoint& p,
                                     const QuadratureConfig& cfg = {});

// D_mu(f) = sum over atoms of weight * D_theta(f), using the factored local integral.
EnergyValue dirichlet_energy(const StructuredFunction& f, const AtomicMeasure& mu,
                             const QuadratureConfig& cfg = {});

// Independent route: (1/pi) int_D |f'(z)|^2 P_mu(z) dA over the disc, tensor quadrature
// with dyadic radial panels in u = 1 - r and angular panels graded toward the atoms and
// toward f's special angles. Cross-checks dirichlet_energy.
EnergyValue dirichlet_energy_area(const StructuredFunction& f, const AtomicMeasure& mu,
                                  const QuadratureConfig& cfg = {});

// ||f||^2_mu = ||f||^2_{H^2} + D_mu(f).
EnergyValue mu_norm_sq(const StructuredFunction& f, const AtomicMeasure& mu,
                       const QuadratureConfig& cfg = {});

// <f, g>_mu = <f, g>_{H^2} + (1/pi) int_D f' conj(g') P_mu dA. Throws domain_error if
// either argument has divergent norm.
complex mu_inner(const StructuredFunction& f, const StructuredFunction& g,
                 const AtomicMeasure& mu, const QuadratureConfig& cfg = {});

// <f, g>_{H^2} as the circle mean of f conj(g), graded toward the special angles of both.
// Identical singular inner parts cancel pointwise in the product; unshared singular phase
// is not resolvable and is not guarded here.
complex h2_inner(const StructuredFunction& f, const StructuredFunction& g,
                 const QuadratureConfig& cfg = {});

// Polarized local Dirichlet pairing
//   D_p(f, g) = int (f(lambda) - f(p)) conj(g(lambda) - g(p)) / |lambda - p|^2 dt/2pi,
// the sesquilinear form whose diagonal is the local Dirichlet integral; Cauchy-Schwarz
// against the two local integrals bounds it. Gram assembly of high-degree polynomial
// multiples runs on this instead of the area product, which cannot resolve the angular
// oscillation at reachable panel counts. With singular factors present, panels whose
// phase variation is unresolvable keep only the terms whose phases cancel (shared inner
// parts) and drop the oscillatory cross terms, as in the direct local integral; no error
// is tracked here, so divergence detection belongs to the diagonal routes.
complex local_dirichlet_pairing(const StructuredFunction& f, const StructuredFunction& g,
                                const UnitCirclePoint& p, const QuadratureConfig& cfg = {});

}  // namespace dmu
