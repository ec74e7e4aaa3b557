#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dmu/capacity.hpp"
#include "dmu/function.hpp"
#include "dmu/measure.hpp"
#include "dmu/quadrature.hpp"

namespace dmu {

// f is cyclic for D(mu) when the polynomial multiples of f are dense; numerically we track
// d_n = dist_mu(1, span{z^k f : k <= n}) and compare against the structural certificate:
// cyclic exactly when f is outer and its boundary zero set carries zero capacity.

// Agreement thresholds for the extrapolated distance limit, pinned from pre-runs of the
// four canonical cases (1, z, 1-z, 1+z over a unit atom). Decay rates for cyclic vectors
// can be logarithmically slow, so the cyclic band is generous.
inline constexpr double agreement_tol = 0.1;     // cyclic: limit at or below this
inline constexpr double agreement_floor = 0.02;  // non-cyclic: limit at or above this

// Relative spectral cutoff for the rank-revealing least-squares solve.
inline constexpr double gram_rank_cutoff = 1e-12;

// Truncated normal equations for approximating a target by polynomial multiples of f:
// gram_{jk} = <z^j f, z^k f>_mu, rhs_j = <target, z^j f>_mu.
struct GramSystem {
  Eigen::MatrixXcd gram;
  Eigen::VectorXcd rhs;
};

// System for target 1 at degree n. Diagonal entries go through the factored norm (with its
// divergence detection), off-diagonal entries through the boundary H^2 integral plus the
// weighted polarized local pairings, computed in parallel; the area inner product agrees
// but cannot resolve high-degree oscillation at reachable panel counts. Throws
// std::domain_error when a diagonal entry diverges.
GramSystem gram_system(const StructuredFunction& f, const AtomicMeasure& mu, int n,
                       const QuadratureConfig& cfg = {});

struct DistanceSequence {
  std::vector<double> distances;          // d_n for n = 0 .. n_max, possibly truncated
  std::vector<double> condition_numbers;  // spectral condition of the retained-rank block
  int failed_degree = -1;                 // first degree whose solve failed, -1 if none
};

// d_n^2 = ||1||^2_mu - b* x with x the least-squares solution of G x = b through the
// spectral decomposition, eigenvalues below gram_rank_cutoff * lambda_max discarded and
// negative round-off clamped to zero. Monomial-multiple bases are exponentially
// ill-conditioned, hence the reported condition numbers. The sequence stops at the first
// degree whose factorization fails.
DistanceSequence distance_sequence(const StructuredFunction& f, const AtomicMeasure& mu,
                                   int n_max, const QuadratureConfig& cfg = {});

// Same with an arbitrary target in place of 1: membership diagnostics for
// dist_mu(target, span{z^k f : k <= n}).
DistanceSequence distance_sequence_to(const StructuredFunction& target,
                                      const StructuredFunction& f, const AtomicMeasure& mu,
                                      int n_max, const QuadratureConfig& cfg = {});

enum class CyclicityPrediction { Cyclic, NonCyclic, Indeterminate };

const char* to_string(CyclicityPrediction p);

// Structural certificate: outer part test, boundary zero set, and the capacity verdict of
// that set under the measure.
struct CyclicityCertificate {
  bool is_outer = false;
  std::vector<UnitCirclePoint> boundary_zeros;
  CapacityDecision zero_set_capacity = CapacityDecision::Zero;
};

CyclicityCertificate cyclicity_certificate(const StructuredFunction& f,
                                           const AtomicMeasure& mu);

// NonCyclic when an inner factor is present or the boundary zeros carry positive capacity,
// Cyclic when outer with a capacity-zero boundary zero set, Indeterminate when the
// capacity verdict is Undetermined.
CyclicityPrediction predicted_cyclicity(const CyclicityCertificate& c);

// Tail fit d_n ~ a + b n^(-gamma) over the last third of the sequence, gamma on a fixed
// grid, returning max(a, 0) of the best fit. Short sequences fall back to the last value.
double extrapolate_tail(const std::vector<double>& distances);

struct CyclicityReport {
  std::vector<double> distances;
  std::vector<double> condition_numbers;
  double extrapolated_limit = 0.0;
  CyclicityCertificate certificate;
  CyclicityPrediction predicted_cyclic = CyclicityPrediction::Indeterminate;
  // true when the extrapolated limit corroborates the prediction: below agreement_tol for
  // cyclic, above agreement_floor for non-cyclic; always false for indeterminate.
  bool numerics_agree = false;
};

CyclicityReport cyclicity_report(const StructuredFunction& f, const AtomicMeasure& mu,
                                 int n_max, const QuadratureConfig& cfg = {});

}  // namespace dmu
