#pragma once

#include <utility>
#include <vector>

#include "dmu/capacity.hpp"
#include "dmu/cyclicity.hpp"
#include "dmu/function.hpp"
#include "dmu/measure.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

// Polynomial in z with ascending complex coefficients. Construction strips trailing
// zeros, so the leading stored coefficient is nonzero; the zero polynomial keeps an
// empty list and reports degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<complex> coefficients);

  static Polynomial from_roots(const std::vector<complex>& roots, complex leading = 1.0);

  const std::vector<complex>& coefficients() const { return coeff_; }
  int degree() const { return (int)coeff_.size() - 1; }
  bool zero() const { return coeff_.empty(); }

  complex operator()(complex z) const;

 private:
  std::vector<complex> coeff_;
};

// Roots with multiplicities, via the companion matrix. Eigenvalues within 1e-4 of each
// other coalesce into one root at their centroid, which restores full accuracy for
// multiplicities up to three at double precision; higher multiplicities can split into
// nearby simple roots, and genuinely distinct roots closer than the cluster radius are
// reported merged. Roots within 1e-12 of the origin snap to exactly zero.
std::vector<std::pair<complex, int>> polynomial_roots(const Polynomial& p);

// Factored H^2 representative generating the same shift-invariant subspace as p. Origin
// and disk roots become the inner data, roots within 1e-8 of the circle become boundary
// power factors, and the modulus contributed by the remaining roots is sampled on a
// uniform grid. Roots that hug the circle without entering the snap band lose accuracy
// to the grid's Fourier truncation; with the default grid the conversion is reliable for
// roots at distance 0.05 or more from the circle.
StructuredFunction to_function(const Polynomial& p, int grid_size = 256);

// (Theta, Lambda, E): inner factor, zeros in the open disk with multiplicities, and the
// carrier of boundary conditions. boundary_set keeps exactly the circle zeros whose
// capacity verdict is Positive; zero-capacity circle zeros impose no constraint and are
// dropped, while Undetermined verdicts land in undetermined_boundary so indecision is
// never silently classified. boundary_candidates records every circle zero before the
// capacity filter.
struct InvariantDescriptor {
  StructuredFunction inner_part;
  std::vector<BlaschkeZero> disk_zeros;
  std::vector<UnitCirclePoint> boundary_set;
  std::vector<UnitCirclePoint> boundary_candidates;
  std::vector<UnitCirclePoint> undetermined_boundary;
};

// Descriptor of the invariant subspace generated by a nonzero polynomial: cluster the
// roots, put |root| < 1 - 1e-8 into disk_zeros (and the inner part), send roots within
// 1e-8 of the circle through the point capacity test, and discard roots outside.
// Throws std::domain_error for the zero polynomial.
InvariantDescriptor polynomial_descriptor(const Polynomial& p, const AtomicMeasure& mu);

// Structural membership test of g against a descriptor: g's Blaschke zeros must cover
// disk_zeros with multiplicity (matched to 1e-9), g's singular part must dominate the
// inner part's singular masses, and g's radial limit modulus must vanish at every point
// of boundary_set. Ignores undetermined_boundary; callers who want a conservative answer
// should treat a nonempty undetermined list as inconclusive.
bool membership_predicted(const StructuredFunction& g, const InvariantDescriptor& d);

// Distance from g to the polynomial span of the generator inside D(mu), degree by
// degree. Same machinery as the cyclicity distance sequence; d_n -> 0 certifies
// membership of g in the closed invariant subspace generated by the generator.
DistanceSequence membership_numerical(const StructuredFunction& g,
                                      const StructuredFunction& generator,
                                      const AtomicMeasure& mu, int n_max,
                                      const QuadratureConfig& cfg = {});

// Descriptor of the invariant subspace generated by a single function f with finite
// mu-norm: inner_part is f's inner factor, disk_zeros its Blaschke zeros, and the
// boundary set collects the positive-capacity support points of mu where f's radial
// limit modulus vanishes. Support points with Undetermined capacity where f vanishes go
// to undetermined_boundary.
InvariantDescriptor generated_subspace_descriptor(const StructuredFunction& f,
                                                  const AtomicMeasure& mu);

}  // namespace dmu
