#include "dmu/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dmu/quadrature.hpp"

namespace dmu {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double ln2 = std::numbers::ln2;

// |beta| inside this band is borderline: the criterion integral behaves like
// int u^(beta-1) du there and quadrature alone cannot separate slow convergence
// from logarithmic divergence.
constexpr double beta_band = 0.05;

// Angular gap below which a point is numerically on the support. Closer than this the
// divergent part of the criterion integral hides below any reachable sampling depth.
constexpr double support_tol = 1e-9;

// rms log-residual beyond which the power-law fit is distrusted.
constexpr double residual_tol = 0.15;

// Log increment per octave under which the kernel samples count as bounded; matches
// beta about 0.03, comfortably inside the borderline band.
constexpr double bounded_increment = 0.02;

// Deepest dyadic level 2^(-k) at which the truncated measure still resembles the measure
// it encodes near this angle. A family stops producing atoms at gap angle_ratio^count;
// samples much below that scale see the truncation, not the cascade.
int resolved_octaves(const AtomicMeasure& mu, double theta) {
  double cap = 40.0;
  for (const auto& fam : mu.families()) {
    if (circular_gap(fam.theta_star, theta) > support_tol) continue;
    const double innermost = fam.count * std::log2(1.0 / fam.angle_ratio);
    cap = std::min(cap, innermost - 2.0);
  }
  return std::max(8, static_cast<int>(cap));
}

struct GrowthFit {
  double beta = 0.0;
  double residual = 0.0;        // rms in log units over the fit window
  double tail_increment = 0.0;  // largest log step per octave over the last four octaves
  bool usable = false;
};

// Least squares for log P_mu against the octave index k at r = 1 - 2^(-k), fit over the
// deeper half of the range where the dyadic scales have settled.
GrowthFit fit_growth(const AtomicMeasure& mu, complex dir, int deepest) {
  GrowthFit fit;
  const int k0 = 2;
  if (deepest < k0 + 5) return fit;
  std::vector<double> y;
  y.reserve(deepest - k0 + 1);
  for (int k = k0; k <= deepest; ++k) {
    const double u = std::ldexp(1.0, -k);
    y.push_back(std::log(mu.poisson_integral((1.0 - u) * dir)));
  }
  const int n = static_cast<int>(y.size());
  const int lo = n / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = lo; i < n; ++i) {
    sx += i;
    sy += y[i];
    sxx += static_cast<double>(i) * i;
    sxy += i * y[i];
  }
  const double m = n - lo;
  const double var = sxx - sx * sx / m;
  if (var <= 0.0) return fit;
  const double slope = (sxy - sx * sy / m) / var;
  const double icept = (sy - slope * sx) / m;
  double rss = 0.0;
  for (int i = lo; i < n; ++i) {
    const double r = y[i] - (icept + slope * i);
    rss += r * r;
  }
  fit.beta = slope / ln2;
  fit.residual = std::sqrt(rss / m);
  for (int i = std::max(1, n - 4); i < n; ++i)
    fit.tail_increment = std::max(fit.tail_increment, y[i] - y[i - 1]);
  fit.usable = true;
  return fit;
}

struct CriterionPartial {
  double value = 0.0;
  double s_prev = 0.0, s_last = 0.0;  // last two octave sums, for the geometric tail
};

// int du / (u P(1-u) + u^2) over u in [2^(-octaves), 1], Gauss per dyadic octave.
CriterionPartial criterion_partial(const AtomicMeasure& mu, complex dir, int octaves) {
  const GaussRule& g = gauss_legendre(16);
  CriterionPartial out;
  for (int k = 0; k < octaves; ++k) {
    const double b = std::ldexp(1.0, -k);
    const double half = 0.25 * b;  // half-width of [b/2, b]
    const double mid = 0.75 * b;
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const double u = mid + half * g.x[i];
      const double p = mu.poisson_integral((1.0 - u) * dir);
      s += g.w[i] * half / (u * p + u * u);
    }
    out.value += s;
    out.s_prev = out.s_last;
    out.s_last = s;
  }
  return out;
}

double tailed_estimate(const CriterionPartial& part) {
  return part.value + geometric_tail(part.s_prev, part.s_last).first;
}

// Verdict without the truncation-stability recomputation.
CapacityVerdict core_verdict(const AtomicMeasure& mu, const UnitCirclePoint& p) {
  if (mu.empty()) throw std::domain_error("point_capacity requires a nonzero measure");
  CapacityVerdict out;
  const complex dir = p.unit();

  double atom_gap = inf;
  for (const auto& a : mu.atoms()) atom_gap = std::min(atom_gap, circular_gap(a.point.theta, p.theta));
  double acc_gap = inf;
  for (double t : mu.accumulation_angles()) acc_gap = std::min(acc_gap, circular_gap(t, p.theta));

  const int octs = resolved_octaves(mu, p.theta);
  const GrowthFit fit = fit_growth(mu, dir, octs);
  out.growth_exponent_estimate = fit.beta;

  // An exact atom match wins unless the query is itself an accumulation angle: deep
  // cascade atoms crowd arbitrarily close to their limit point while carrying negligible
  // weight, and must not lend it their automatic positivity. A genuinely heavy atom
  // placed at an accumulation angle still comes out Positive through the regression,
  // since its kernel grows like 1/(1-r) there.
  const bool acc_exact = acc_gap <= angle_merge_tol;
  const bool at_atom = (atom_gap <= angle_merge_tol && !acc_exact) ||
                       (acc_gap > support_tol && atom_gap <= support_tol);
  if (at_atom) {
    // at an atom the integrand is bounded by 1 / (weight (1+r)): always convergent
    out.verdict = CapacityDecision::Positive;
    out.criterion_integral_estimate = tailed_estimate(criterion_partial(mu, dir, 40));
    return out;
  }
  if (acc_gap > support_tol) {
    // positive distance from the closed support: P stays bounded, the integral loses
    // its kernel term and diverges like int du / u^2
    out.verdict = CapacityDecision::Zero;
    out.criterion_integral_estimate = inf;
    return out;
  }

  // accumulation point of a cascade: the growth exponent decides
  const bool bounded = fit.tail_increment <= bounded_increment;
  const bool sane = fit.usable && fit.residual <= residual_tol;
  if (sane && fit.beta > beta_band) {
    out.verdict = CapacityDecision::Positive;
    out.criterion_integral_estimate = tailed_estimate(criterion_partial(mu, dir, octs));
  } else if (sane && fit.beta < -beta_band) {
    out.verdict = CapacityDecision::Zero;
    out.criterion_integral_estimate = inf;
  } else if (sane && bounded) {
    // inside the band with level samples: P grows at most logarithmically, which still
    // fails the criterion (int du / (u log(1/u)) diverges)
    out.verdict = CapacityDecision::Zero;
    out.criterion_integral_estimate = inf;
  } else {
    out.verdict = CapacityDecision::Undetermined;
    out.criterion_integral_estimate = criterion_partial(mu, dir, octs).value;
  }
  return out;
}

}  // namespace

const char* to_string(CapacityDecision d) {
  switch (d) {
    case CapacityDecision::Positive: return "Positive";
    case CapacityDecision::Zero: return "Zero";
    default: return "Undetermined";
  }
}

CapacityVerdict point_capacity(const AtomicMeasure& mu, UnitCirclePoint p) {
  CapacityVerdict v = core_verdict(mu, p);
  if (!mu.families().empty()) {
    const CapacityVerdict doubled = core_verdict(mu.doubled_truncation(), p);
    v.truncation_stable = doubled.verdict == v.verdict;
  }
  return v;
}

SetCapacityResult countable_set_capacity_zero(const AtomicMeasure& mu,
                                              const std::vector<UnitCirclePoint>& points) {
  SetCapacityResult out;
  bool any_positive = false, any_undetermined = false;
  out.verdicts.reserve(points.size());
  for (const auto& p : points) {
    out.verdicts.push_back(point_capacity(mu, p));
    const auto v = out.verdicts.back().verdict;
    any_positive = any_positive || v == CapacityDecision::Positive;
    any_undetermined = any_undetermined || v == CapacityDecision::Undetermined;
  }
  if (any_positive)
    out.aggregate = CapacityDecision::Positive;
  else if (any_undetermined)
    out.aggregate = CapacityDecision::Undetermined;
  else
    out.aggregate = CapacityDecision::Zero;
  return out;
}

std::vector<UnitCirclePoint> positive_capacity_atoms(const AtomicMeasure& mu) {
  std::vector<UnitCirclePoint> out;
  for (const auto& a : mu.atoms()) out.push_back(a.point);
  for (double t : mu.accumulation_angles()) {
    const UnitCirclePoint p(t);
    bool seen = false;
    for (const auto& q : out) seen = seen || circular_gap(q.theta, p.theta) <= support_tol;
    if (seen) continue;
    if (point_capacity(mu, p).verdict == CapacityDecision::Positive) out.push_back(p);
  }
  std::sort(out.begin(), out.end(),
            [](const UnitCirclePoint& a, const UnitCirclePoint& b) { return a.theta < b.theta; });
  return out;
}

}  // namespace dmu
