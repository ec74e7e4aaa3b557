#include "dmu/cyclicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dmu/dirichlet.hpp"
#include "dmu/parallel.hpp"

namespace dmu {

namespace {

std::vector<StructuredFunction> monomial_multiples(const StructuredFunction& f, int n) {
  std::vector<StructuredFunction> zf;
  zf.reserve(n + 1);
  for (int j = 0; j <= n; ++j) zf.push_back(product(StructuredFunction::monomial(j), f));
  return zf;
}

// G for the multiples z^j f: diagonal through the factored norm to surface divergence,
// off-diagonals in parallel through the pairing route. Finite diagonals bound the
// off-diagonals by Cauchy-Schwarz, so the parallel part cannot diverge.
Eigen::MatrixXcd gram_matrix(const std::vector<StructuredFunction>& zf,
                             const AtomicMeasure& mu, const QuadratureConfig& cfg) {
  const int m = static_cast<int>(zf.size());
  Eigen::MatrixXcd G(m, m);
  for (int j = 0; j < m; ++j) {
    const EnergyValue nj = mu_norm_sq(zf[j], mu, cfg);
    if (nj.diverged || !std::isfinite(nj.value))
      throw std::domain_error("gram_system: mu-norm of a polynomial multiple diverges");
    G(j, j) = nj.value;
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) pairs.push_back({j, k});
  parallel_for(static_cast<int>(pairs.size()), [&](int idx) {
    const auto [j, k] = pairs[idx];
    complex e = h2_inner(zf[j], zf[k], cfg);
    for (const auto& atom : mu.atoms())
      e += atom.weight * local_dirichlet_pairing(zf[j], zf[k], atom.point, cfg);
    G(j, k) = e;
    G(k, j) = std::conj(e);
  });
  return G;
}

Eigen::VectorXcd rhs_for_target(const StructuredFunction& target,
                                const std::vector<StructuredFunction>& zf,
                                const AtomicMeasure& mu, const QuadratureConfig& cfg) {
  Eigen::VectorXcd b(zf.size());
  parallel_for(static_cast<int>(zf.size()), [&](int j) {
    complex e = h2_inner(target, zf[j], cfg);
    for (const auto& atom : mu.atoms())
      e += atom.weight * local_dirichlet_pairing(target, zf[j], atom.point, cfg);
    b(j) = e;
  });
  return b;
}

// The pairing against the constant 1 vanishes, so rhs_j = <1, z^j f>_{H^2} = conj of the
// constant Taylor coefficient of z^j f: f(0) at j = 0, zero beyond.
Eigen::VectorXcd rhs_for_one(const StructuredFunction& f, int n) {
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n + 1);
  b(0) = std::conj(f.evaluate(0.0));
  return b;
}

DistanceSequence solve_sequence(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& b,
                                double target_norm_sq) {
  DistanceSequence out;
  const int m = static_cast<int>(G.rows());
  for (int n = 0; n < m; ++n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.topLeftCorner(n + 1, n + 1));
    if (es.info() != Eigen::Success) {
      out.failed_degree = n;
      break;
    }
    const auto& lambda = es.eigenvalues();
    const auto& V = es.eigenvectors();
    const double cutoff = gram_rank_cutoff * std::max(lambda(n), 0.0);
    double quad = 0.0;
    double lambda_min = 0.0;
    for (int i = 0; i <= n; ++i) {
      if (lambda(i) <= cutoff) continue;
      if (lambda_min == 0.0) lambda_min = lambda(i);
      const complex proj = V.col(i).dot(b.head(n + 1));
      quad += std::norm(proj) / lambda(i);
    }
    out.distances.push_back(std::sqrt(std::max(target_norm_sq - quad, 0.0)));
    out.condition_numbers.push_back(lambda_min > 0.0 ? lambda(n) / lambda_min : 1.0);
  }
  return out;
}

double finite_norm_sq(const StructuredFunction& f, const AtomicMeasure& mu,
                      const QuadratureConfig& cfg, const char* who) {
  const EnergyValue nv = mu_norm_sq(f, mu, cfg);
  if (nv.diverged || !std::isfinite(nv.value)) throw std::domain_error(who);
  return nv.value;
}

}  // namespace

GramSystem gram_system(const StructuredFunction& f, const AtomicMeasure& mu, int n,
                       const QuadratureConfig& cfg) {
  const auto zf = monomial_multiples(f, n);
  return {gram_matrix(zf, mu, cfg), rhs_for_one(f, n)};
}

DistanceSequence distance_sequence(const StructuredFunction& f, const AtomicMeasure& mu,
                                   int n_max, const QuadratureConfig& cfg) {
  const double one_norm_sq =
      finite_norm_sq(StructuredFunction(), mu, cfg, "distance_sequence: ||1||_mu diverges");
  const GramSystem sys = gram_system(f, mu, n_max, cfg);
  return solve_sequence(sys.gram, sys.rhs, one_norm_sq);
}

DistanceSequence distance_sequence_to(const StructuredFunction& target,
                                      const StructuredFunction& f, const AtomicMeasure& mu,
                                      int n_max, const QuadratureConfig& cfg) {
  const double t_norm_sq =
      finite_norm_sq(target, mu, cfg, "distance_sequence_to: target norm diverges");
  const auto zf = monomial_multiples(f, n_max);
  const Eigen::MatrixXcd G = gram_matrix(zf, mu, cfg);
  const Eigen::VectorXcd b = rhs_for_target(target, zf, mu, cfg);
  return solve_sequence(G, b, t_norm_sq);
}

const char* to_string(CyclicityPrediction p) {
  switch (p) {
    case CyclicityPrediction::Cyclic: return "Cyclic";
    case CyclicityPrediction::NonCyclic: return "NonCyclic";
    default: return "Indeterminate";
  }
}

CyclicityCertificate cyclicity_certificate(const StructuredFunction& f,
                                           const AtomicMeasure& mu) {
  CyclicityCertificate c;
  c.is_outer = f.is_outer();
  c.boundary_zeros = f.boundary_zero_set();
  c.zero_set_capacity = countable_set_capacity_zero(mu, c.boundary_zeros).aggregate;
  return c;
}

CyclicityPrediction predicted_cyclicity(const CyclicityCertificate& c) {
  if (!c.is_outer) return CyclicityPrediction::NonCyclic;
  switch (c.zero_set_capacity) {
    case CapacityDecision::Zero: return CyclicityPrediction::Cyclic;
    case CapacityDecision::Positive: return CyclicityPrediction::NonCyclic;
    default: return CyclicityPrediction::Indeterminate;
  }
}

double extrapolate_tail(const std::vector<double>& distances) {
  const int n = static_cast<int>(distances.size());
  if (n < 6) return distances.empty() ? 0.0 : distances.back();
  const int lo = n - n / 3;
  double best_a = distances.back(), best_rss = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 40; ++step) {
    const double gamma = 0.1 * std::pow(40.0, step / 40.0);  // 0.1 .. 4, log-spaced
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = lo; i < n; ++i) {
      const double x = std::pow(static_cast<double>(i), -gamma);
      sx += x;
      sy += distances[i];
      sxx += x * x;
      sxy += x * distances[i];
    }
    const double m = n - lo;
    const double var = sxx - sx * sx / m;
    if (var <= 0.0) continue;
    const double slope = (sxy - sx * sy / m) / var;
    const double a = (sy - slope * sx) / m;
    double rss = 0.0;
    for (int i = lo; i < n; ++i) {
      const double r =
          distances[i] - (a + slope * std::pow(static_cast<double>(i), -gamma));
      rss += r * r;
    }
    if (rss < best_rss) {
      best_rss = rss;
      best_a = a;
    }
  }
  return std::max(best_a, 0.0);
}

CyclicityReport cyclicity_report(const StructuredFunction& f, const AtomicMeasure& mu,
                                 int n_max, const QuadratureConfig& cfg) {
  CyclicityReport r;
  r.certificate = cyclicity_certificate(f, mu);
  r.predicted_cyclic = predicted_cyclicity(r.certificate);
  DistanceSequence s = distance_sequence(f, mu, n_max, cfg);
  r.distances = std::move(s.distances);
  r.condition_numbers = std::move(s.condition_numbers);
  r.extrapolated_limit = extrapolate_tail(r.distances);
  r.numerics_agree = (r.predicted_cyclic == CyclicityPrediction::Cyclic &&
                      r.extrapolated_limit <= agreement_tol) ||
                     (r.predicted_cyclic == CyclicityPrediction::NonCyclic &&
                      r.extrapolated_limit >= agreement_floor);
  return r;
}

}  // namespace dmu
