#include "dmu/invariant.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace dmu {

namespace {

constexpr double boundary_snap = 1e-8;   // |root| - 1 within this counts as a circle zero
// A multiplicity-m root perturbs the companion eigenvalues by roughly eps^(1/m): measured
// pairwise splits are ~1.3e-5 for a triple root and ~2.7e-4 for a quadruple. The radius
// below reunites multiplicities up to three; distinct roots closer than it merge.
constexpr double cluster_radius = 1e-4;
constexpr double origin_snap = 1e-12;
constexpr double zero_match_tol = 1e-9;

void sort_points(std::vector<UnitCirclePoint>& v) {
  std::sort(v.begin(), v.end(),
            [](const UnitCirclePoint& a, const UnitCirclePoint& b) { return a.theta < b.theta; });
}

bool contains_angle(const std::vector<UnitCirclePoint>& v, double theta, double tol) {
  for (const auto& p : v)
    if (circular_gap(p.theta, theta) <= tol) return true;
  return false;
}

}  // namespace

Polynomial::Polynomial(std::vector<complex> coefficients) : coeff_(std::move(coefficients)) {
  while (!coeff_.empty() && coeff_.back() == complex(0.0, 0.0)) coeff_.pop_back();
}

Polynomial Polynomial::from_roots(const std::vector<complex>& roots, complex leading) {
  std::vector<complex> c{leading};
  for (complex r : roots) {
    c.push_back(0.0);
    for (size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

complex Polynomial::operator()(complex z) const {
  complex acc = 0.0;
  for (size_t k = coeff_.size(); k-- > 0;) acc = acc * z + coeff_[k];
  return acc;
}

std::vector<std::pair<complex, int>> polynomial_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n <= 0) return {};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const complex lead = p.coefficients().back();
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -p.coefficients()[i] / lead;
    if (i > 0) companion(i, i - 1) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("polynomial_roots: eigensolver failed");

  // Greedy clustering; the centroid of a split multiple root is far more accurate than
  // any single eigenvalue of the cluster.
  std::vector<complex> sum;
  std::vector<int> count;
  for (int i = 0; i < n; ++i) {
    const complex v = es.eigenvalues()(i);
    bool placed = false;
    for (size_t j = 0; j < sum.size() && !placed; ++j) {
      if (std::abs(v - sum[j] / (double)count[j]) <= cluster_radius) {
        sum[j] += v;
        ++count[j];
        placed = true;
      }
    }
    if (!placed) {
      sum.push_back(v);
      count.push_back(1);
    }
  }

  std::vector<std::pair<complex, int>> roots;
  for (size_t j = 0; j < sum.size(); ++j) {
    complex center = sum[j] / (double)count[j];
    if (std::abs(center) <= origin_snap) center = 0.0;
    roots.emplace_back(center, count[j]);
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  return roots;
}

StructuredFunction to_function(const Polynomial& p, int grid_size) {
  if (p.zero()) throw std::domain_error("to_function: zero polynomial");
  if (grid_size < 8) throw std::domain_error("to_function: grid_size too small");

  std::vector<BlaschkeZero> blaschke;
  std::vector<PowerFactor> powers;
  std::vector<std::pair<complex, int>> modulus_roots;  // contribute to the sampled grid
  for (const auto& [r, m] : polynomial_roots(p)) {
    const double mod = std::abs(r);
    if (mod <= origin_snap) {
      blaschke.push_back({complex(0.0, 0.0), m});  // |e^{it}| = 1: no modulus contribution
    } else if (mod < 1.0 - boundary_snap) {
      blaschke.push_back({r, m});
      modulus_roots.emplace_back(r, m);
    } else if (mod <= 1.0 + boundary_snap) {
      powers.push_back({UnitCirclePoint(std::arg(r)), (double)m});
    } else {
      modulus_roots.emplace_back(r, m);
    }
  }

  std::vector<double> grid;
  if (!modulus_roots.empty()) {
    grid.resize(grid_size);
    for (int j = 0; j < grid_size; ++j) {
      const complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * j / grid_size);
      double s = 0.0;
      for (const auto& [r, m] : modulus_roots) s += m * std::log(std::abs(zeta - r));
      grid[j] = s;
    }
  }
  const double log_lead = std::log(std::abs(p.coefficients().back()));
  return StructuredFunction(std::move(blaschke), {},
                            BoundaryModulus(log_lead, std::move(powers), std::move(grid)));
}

InvariantDescriptor polynomial_descriptor(const Polynomial& p, const AtomicMeasure& mu) {
  if (p.zero()) throw std::domain_error("polynomial_descriptor: zero polynomial");

  InvariantDescriptor d;
  for (const auto& [r, m] : polynomial_roots(p)) {
    const double mod = std::abs(r);
    if (mod < 1.0 - boundary_snap) {
      d.disk_zeros.push_back({r, m});
    } else if (mod <= 1.0 + boundary_snap) {
      const UnitCirclePoint pt(std::arg(r));
      d.boundary_candidates.push_back(pt);
      switch (point_capacity(mu, pt).verdict) {
        case CapacityDecision::Positive:
          d.boundary_set.push_back(pt);
          break;
        case CapacityDecision::Undetermined:
          d.undetermined_boundary.push_back(pt);
          break;
        case CapacityDecision::Zero:
          break;  // imposes no constraint
      }
    }
    // roots outside the closed disk divide out of the generated subspace
  }
  sort_points(d.boundary_set);
  sort_points(d.boundary_candidates);
  sort_points(d.undetermined_boundary);
  d.inner_part = StructuredFunction(d.disk_zeros, {}, BoundaryModulus());
  return d;
}

bool membership_predicted(const StructuredFunction& g, const InvariantDescriptor& d) {
  for (const auto& need : d.disk_zeros) {
    int have = 0;
    for (const auto& bz : g.blaschke())
      if (std::abs(bz.zero - need.zero) <= zero_match_tol) have += bz.mult;
    if (have < need.mult) return false;
  }
  for (const auto& s : d.inner_part.singular()) {
    double have = 0.0;
    for (const auto& t : g.singular())
      if (circular_gap(t.point.theta, s.point.theta) <= zero_match_tol) have += t.mass;
    if (have < s.mass - 1e-12) return false;
  }
  for (const auto& e : d.boundary_set)
    if (g.radial_limit_modulus(e.theta) > 0.0) return false;
  return true;
}

DistanceSequence membership_numerical(const StructuredFunction& g,
                                      const StructuredFunction& generator,
                                      const AtomicMeasure& mu, int n_max,
                                      const QuadratureConfig& cfg) {
  return distance_sequence_to(g, generator, mu, n_max, cfg);
}

InvariantDescriptor generated_subspace_descriptor(const StructuredFunction& f,
                                                  const AtomicMeasure& mu) {
  InvariantDescriptor d;
  d.disk_zeros = f.blaschke();
  d.inner_part = StructuredFunction(f.blaschke(), f.singular(), BoundaryModulus());

  for (const auto& a : mu.atoms()) {
    if (f.radial_limit_modulus(a.point.theta) > 0.0) continue;
    if (contains_angle(d.boundary_candidates, a.point.theta, zero_match_tol)) continue;
    d.boundary_candidates.push_back(a.point);
    d.boundary_set.push_back(a.point);  // isolated atoms always carry positive capacity
  }
  for (const auto& fam : mu.families()) {
    const UnitCirclePoint acc(fam.theta_star);
    if (f.radial_limit_modulus(acc.theta) > 0.0) continue;
    if (contains_angle(d.boundary_candidates, acc.theta, zero_match_tol)) continue;
    d.boundary_candidates.push_back(acc);
    switch (point_capacity(mu, acc).verdict) {
      case CapacityDecision::Positive:
        d.boundary_set.push_back(acc);
        break;
      case CapacityDecision::Undetermined:
        d.undetermined_boundary.push_back(acc);
        break;
      case CapacityDecision::Zero:
        break;
    }
  }
  sort_points(d.boundary_set);
  sort_points(d.boundary_candidates);
  sort_points(d.undetermined_boundary);
  return d;
}

}  // namespace dmu
