#include "dmu/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dmu {

namespace {

const double inf = std::numeric_limits<double>::infinity();

double chord_sq(double gap) {
  const double s = std::sin(0.5 * gap);
  return 4.0 * s * s;
}

double panel_cap(int degree, int gl_order) {
  if (degree <= 0) return std::numbers::pi / 4.0;
  return std::clamp((double)gl_order / (double)degree, 1e-3, std::numbers::pi / 4.0);
}

// u^2 - 1 - 2 log u for u = e^{dl}: expm1(2 dl) - 2 dl, with a short series when the
// subtraction would cancel. Nonnegative for every real dl.
double outer_excess(double dl) {
  if (std::fabs(dl) < 1e-4)
    return dl * dl * (2.0 + dl * (4.0 / 3.0 + dl * (2.0 / 3.0 + (4.0 / 15.0) * dl)));
  return std::expm1(2.0 * dl) - 2.0 * dl;
}

// Trig-degree bound of the outer modulus squared (grid term plus power factors).
int modulus_sq_degree(const BoundaryModulus& m) {
  double a = 0.0;
  for (const auto& p : m.powers()) a += std::fabs(p.alpha);
  return 2 * m.grid_degree() + 2 * (int)std::ceil(a) + 4;
}

}  // namespace

EnergyValue local_dirichlet_direct(const StructuredFunction& f, const UnitCirclePoint& p,
                                   const QuadratureConfig& cfg) {
  const complex c = f.boundary_value(p.theta);
  if (!std::isfinite(std::abs(c))) return EnergyValue::divergent();
  const double c_sq = std::norm(c);
  const bool zero_base = (c == complex(0.0));
  const BoundaryModulus& m = f.outer();
  const auto& atoms = f.singular();

  std::vector<double> specials = f.special_angles();
  specials.push_back(p.theta);
  const double cap = panel_cap(2 * f.oscillation_degree() + 2, 32);
  const auto cp = graded_circle_panels(specials, cfg.boundary_panels, cap);
  const GaussRule& hi = gauss_legendre(32);
  const GaussRule& lo = gauss_legendre(16);
  const double threshold = cfg.divergence_threshold * two_pi;

  // phase speed of the singular inner factor at angle offset x from ref
  auto phase_speed = [&](double ref, double x) {
    double om = 0.0;
    for (const auto& s : atoms) om += 2.0 * s.mass / chord_sq((ref - s.point.theta) + x);
    return om;
  };
  // |f|^2 on the circle is the outer modulus squared (inner factors are unimodular)
  auto mod_sq = [&](double ref, double x) { return std::exp(2.0 * m.log_value_near(ref, x)); };
  auto den_at = [&](double ref, double x) { return chord_sq((ref - p.theta) + x); };

  int max_level = 0;
  for (const auto& pan : cp.panels) max_level = std::max(max_level, pan.level);
  std::vector<double> level_sums(max_level + 1, 0.0);
  std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> shells;
  double err = 0.0;

  const int osc_deg = f.oscillation_degree();
  for (const auto& pan : cp.panels) {
    const double ref = (pan.point >= 0) ? cp.points[pan.point] : 0.0;
    const double mid = 0.5 * (pan.a + pan.b), half = 0.5 * (pan.b - pan.a);
    const double len = pan.b - pan.a;

    bool guarded = false;
    double omega = 0.0;
    if (!zero_base && !atoms.empty()) {
      omega = std::min(phase_speed(ref, pan.a), phase_speed(ref, pan.b));
      guarded = omega * len > 12.0 * two_pi && omega > 16.0 * (double)osc_deg;
    }

    double v = 0.0, v2 = 0.0;
    if (zero_base) {
      for (size_t i = 0; i < hi.x.size(); ++i) {
        const double x = mid + half * hi.x[i];
        v += half * hi.w[i] * mod_sq(ref, x) / den_at(ref, x);
      }
      for (size_t i = 0; i < lo.x.size(); ++i) {
        const double x = mid + half * lo.x[i];
        v2 += half * lo.w[i] * mod_sq(ref, x) / den_at(ref, x);
      }
      err += std::fabs(v - v2);
    } else if (guarded) {
      // unresolvable singular phase: keep the mean of |f - c|^2 and bound the dropped
      // oscillatory cross term by the stationary-phase estimate
      double peak = 0.0;
      for (size_t i = 0; i < hi.x.size(); ++i) {
        const double x = mid + half * hi.x[i];
        const double ms = mod_sq(ref, x), den = den_at(ref, x);
        v += half * hi.w[i] * (ms + c_sq) / den;
        peak = std::max(peak, std::sqrt(ms) / den);
      }
      const double full = 2.0 * std::sqrt(c_sq) * peak * len;
      const double vdc = 48.0 * std::sqrt(c_sq) * peak / omega;
      err += std::min(full, vdc);
    } else {
      for (size_t i = 0; i < hi.x.size(); ++i) {
        const double x = mid + half * hi.x[i];
        v += half * hi.w[i] * std::norm(f.boundary_value_near(ref, x) - c) / den_at(ref, x);
      }
      for (size_t i = 0; i < lo.x.size(); ++i) {
        const double x = mid + half * lo.x[i];
        v2 += half * lo.w[i] * std::norm(f.boundary_value_near(ref, x) - c) / den_at(ref, x);
      }
      err += std::fabs(v - v2);
    }

    level_sums[pan.level] += v;
    if (pan.point >= 0 && pan.level >= 1) {
      auto& s = shells[{pan.point, pan.side}];
      if (!s.empty() && s.back().first == pan.level)
        s.back().second += v;
      else
        s.push_back({pan.level, v});
    }
  }

  if (growth_divergent(level_sums, threshold)) return EnergyValue::divergent();

  EnergyValue out;
  for (double s : level_sums) out.value += s;
  for (auto& [key, series] : shells) {
    if (series.size() < 2) continue;
    std::sort(series.begin(), series.end());
    auto [tail, terr] = geometric_tail(series[series.size() - 2].second, series.back().second);
    out.value += tail;
    err += terr;
  }
  if (std::fabs(out.value) >= threshold) return EnergyValue::divergent();
  out.error_estimate = err;
  return out.scale(1.0 / two_pi);
}

EnergyValue local_dirichlet_factored(const StructuredFunction& f, const UnitCirclePoint& p,
                                     const QuadratureConfig& cfg) {
  const BoundaryModulus& m = f.outer();
  auto [a, b] = m.exponent_and_finite(p.theta);
  if (a < 0.0) return EnergyValue::divergent();
  const bool zero_base = a > 0.0;
  const double fo = zero_base ? 0.0 : std::exp(b);
  const double fo_sq = fo * fo;

  // singular atom at the base point forces divergence unless the outer part vanishes there
  for (const auto& s : f.singular())
    if (!zero_base && same_angle(s.point.theta, p.theta)) return EnergyValue::divergent();

  EnergyValue out;
  if (!zero_base) {
    const complex zeta = p.unit();
    double base = 0.0;
    for (const auto& bz : f.blaschke())
      base += (double)bz.mult * (1.0 - std::norm(bz.zero)) / std::norm(zeta - bz.zero);
    for (const auto& s : f.singular())
      base += 2.0 * s.mass / chord_sq(p.theta - s.point.theta);
    out.value = base * fo_sq;
  }

  std::vector<double> specials;
  for (const auto& pw : m.powers()) specials.push_back(pw.point.theta);
  specials.push_back(p.theta);
  const double cap = panel_cap(modulus_sq_degree(m), 32);
  const double log_fo = zero_base ? 0.0 : std::log(fo);

  GradedIntegrand fn;
  if (zero_base) {
    fn = [&](double ref, double d) {
      return std::exp(2.0 * m.log_value_near(ref, d)) / chord_sq((ref - p.theta) + d);
    };
  } else {
    fn = [&, log_fo](double ref, double d) {
      const double dl = m.log_value_near(ref, d) - log_fo;
      return fo_sq * outer_excess(dl) / chord_sq((ref - p.theta) + d);
    };
  }
  EnergyValue oi = integrate_graded(fn, specials, cfg.boundary_panels, cap, 32,
                                    cfg.divergence_threshold * two_pi);
  if (oi.diverged) return EnergyValue::divergent();
  out += oi.scale(1.0 / two_pi);
  if (out.value >= cfg.divergence_threshold) return EnergyValue::divergent();
  return out;
}

EnergyValue dirichlet_energy(const StructuredFunction& f, const AtomicMeasure& mu,
                             const QuadratureConfig& cfg) {
  EnergyValue out;
  for (const auto& atom : mu.atoms()) {
    EnergyValue term = local_dirichlet_factored(f, atom.point, cfg);
    if (term.diverged) return EnergyValue::divergent();
    out += term.scale(atom.weight);
  }
  if (out.value >= cfg.divergence_threshold) return EnergyValue::divergent();
  return out;
}

EnergyValue dirichlet_energy_area(const StructuredFunction& f, const AtomicMeasure& mu,
                                  const QuadratureConfig& cfg) {
  const auto& atoms = mu.atoms();
  if (atoms.empty()) return {};

  std::vector<double> specials = f.special_angles();
  for (const auto& atom : atoms) specials.push_back(atom.point.theta);
  const double cap = panel_cap(2 * f.oscillation_degree() + 2, 16);

  // angular integral at boundary distance u; Poisson kernel from (u, offset) directly:
  // |1 - conj(zeta) r lambda|^2 = u^2 + (1 - u) chord^2 and 1 - r^2 = u (2 - u)
  auto layer = [&](double u) {
    return integrate_graded(
        [&, u](double ref, double d) {
          const complex z = std::polar(1.0 - u, ref + d);
          const complex fd = f.evaluate_with_derivative(z).second;
          double pk = 0.0;
          for (const auto& atom : atoms) {
            const double cs = chord_sq((ref - atom.point.theta) + d);
            pk += atom.weight * u * (2.0 - u) / (u * u + (1.0 - u) * cs);
          }
          return std::norm(fd) * pk;
        },
        specials, cfg.boundary_panels, cap, 16, inf);
  };

  // radial levels stay a few octaves above the angular shell floor so that every Poisson
  // peak is still angularly resolved at the deepest layer
  const int levels = std::min(std::clamp(cfg.radial_nodes / 8, 16, 36), cfg.boundary_panels - 4);
  const auto rp = graded_radial_panels(levels);
  std::vector<double> rlevel(levels, 0.0);
  double err = 0.0;
  for (const auto& pan : rp) {
    // the shallow panels carry the high polynomial degrees in r, so they get more nodes
    const GaussRule& g = gauss_legendre(pan.level <= 2 ? 16 : 8);
    const double mid = 0.5 * (pan.a + pan.b), half = 0.5 * (pan.b - pan.a);
    for (size_t i = 0; i < g.x.size(); ++i) {
      const double u = mid + half * g.x[i];
      const double wgt = half * g.w[i] * (1.0 - u);  // r dr = (1 - u) du
      EnergyValue A = layer(u);
      rlevel[pan.level] += wgt * A.value;
      err += wgt * A.error_estimate;
    }
  }

  const double threshold = cfg.divergence_threshold * std::numbers::pi;
  if (growth_divergent(rlevel, threshold)) return EnergyValue::divergent();
  EnergyValue out;
  for (double s : rlevel) out.value += s;
  if (levels >= 2) {
    auto [tail, terr] = geometric_tail(rlevel[levels - 2], rlevel[levels - 1]);
    out.value += tail;
    err += terr;
  }
  if (std::fabs(out.value) >= threshold) return EnergyValue::divergent();
  out.error_estimate = err;
  return out.scale(1.0 / std::numbers::pi);
}

EnergyValue mu_norm_sq(const StructuredFunction& f, const AtomicMeasure& mu,
                       const QuadratureConfig& cfg) {
  EnergyValue out = h2_norm_sq(f, cfg);
  if (out.diverged) return EnergyValue::divergent();
  EnergyValue d = dirichlet_energy(f, mu, cfg);
  if (d.diverged) return EnergyValue::divergent();
  out += d;
  if (out.value >= cfg.divergence_threshold) return EnergyValue::divergent();
  return out;
}

complex h2_inner(const StructuredFunction& f, const StructuredFunction& g,
                 const QuadratureConfig& cfg) {
  std::vector<double> specials = f.special_angles();
  {
    auto gs = g.special_angles();
    specials.insert(specials.end(), gs.begin(), gs.end());
  }
  const double cap = panel_cap(f.oscillation_degree() + g.oscillation_degree() + 2, 24);
  const complex v = integrate_graded_complex(
      [&](double ref, double d) {
        return f.boundary_value_near(ref, d) * std::conj(g.boundary_value_near(ref, d));
      },
      specials, cfg.boundary_panels, cap, 24);
  return v / two_pi;
}

complex local_dirichlet_pairing(const StructuredFunction& f, const StructuredFunction& g,
                                const UnitCirclePoint& p, const QuadratureConfig& cfg) {
  const complex cf = f.boundary_value(p.theta);
  const complex cg = g.boundary_value(p.theta);
  if (!std::isfinite(std::abs(cf)) || !std::isfinite(std::abs(cg)))
    throw std::domain_error("local_dirichlet_pairing requires finite boundary values at p");

  std::vector<double> specials = f.special_angles();
  {
    auto gs = g.special_angles();
    specials.insert(specials.end(), gs.begin(), gs.end());
  }
  specials.push_back(p.theta);
  const int osc = f.oscillation_degree() + g.oscillation_degree() + 2;
  const double cap = panel_cap(osc, 32);

  if (f.singular().empty() && g.singular().empty()) {
    const complex v = integrate_graded_complex(
        [&](double ref, double d) {
          const complex vf = f.boundary_value_near(ref, d);
          const complex vg = g.boundary_value_near(ref, d);
          return (vf - cf) * std::conj(vg - cg) / chord_sq((ref - p.theta) + d);
        },
        specials, cfg.boundary_panels, cap, 32);
    return v / two_pi;
  }

  // Signed singular masses: the product f conj(g) oscillates with the difference of the
  // two phases, each cross term with one function's own phase.
  std::vector<std::pair<double, double>> mass_f, mass_g, mass_net;
  for (const auto& s : f.singular()) mass_f.push_back({s.point.theta, s.mass});
  for (const auto& s : g.singular()) mass_g.push_back({s.point.theta, s.mass});
  mass_net = mass_f;
  for (const auto& [th, m] : mass_g) {
    bool merged = false;
    for (auto& [tn, mn] : mass_net)
      if (same_angle(tn, th)) {
        mn -= m;
        merged = true;
        break;
      }
    if (!merged) mass_net.push_back({th, -m});
  }
  auto speed = [](const std::vector<std::pair<double, double>>& ms, double ref, double x) {
    double om = 0.0;
    for (const auto& [th, m] : ms) om += 2.0 * std::fabs(m) / chord_sq((ref - th) + x);
    return om;
  };
  auto resolvable = [&](const std::vector<std::pair<double, double>>& ms, double ref,
                        double a, double b, double len) {
    const double om = std::min(speed(ms, ref, a), speed(ms, ref, b));
    return !(om * len > 12.0 * two_pi && om > 16.0 * (double)osc);
  };

  const auto cp = graded_circle_panels(specials, cfg.boundary_panels, cap);
  const GaussRule& gl = gauss_legendre(32);
  complex acc = 0.0;
  for (const auto& pan : cp.panels) {
    const double ref = (pan.point >= 0) ? cp.points[pan.point] : 0.0;
    const double mid = 0.5 * (pan.a + pan.b), half = 0.5 * (pan.b - pan.a);
    const double len = pan.b - pan.a;
    const bool keep_prod = resolvable(mass_net, ref, pan.a, pan.b, len);
    const bool keep_f = resolvable(mass_f, ref, pan.a, pan.b, len);
    const bool keep_g = resolvable(mass_g, ref, pan.a, pan.b, len);
    complex s = 0.0;
    if (keep_prod && keep_f && keep_g) {
      // the combined form keeps the cancellation near p intact
      for (size_t i = 0; i < gl.x.size(); ++i) {
        const double x = mid + half * gl.x[i];
        const complex vf = f.boundary_value_near(ref, x);
        const complex vg = g.boundary_value_near(ref, x);
        s += half * gl.w[i] * (vf - cf) * std::conj(vg - cg) / chord_sq((ref - p.theta) + x);
      }
    } else {
      // only reached near a singular point, away from p: no cancellation to lose, and
      // every dropped term has mean near zero by its unresolvable phase
      for (size_t i = 0; i < gl.x.size(); ++i) {
        const double x = mid + half * gl.x[i];
        const complex vf = f.boundary_value_near(ref, x);
        const complex vg = g.boundary_value_near(ref, x);
        complex val = cf * std::conj(cg);
        if (keep_prod) val += vf * std::conj(vg);
        if (keep_f) val -= vf * std::conj(cg);
        if (keep_g) val -= cf * std::conj(vg);
        s += half * gl.w[i] * val / chord_sq((ref - p.theta) + x);
      }
    }
    acc += s;
  }
  return acc / two_pi;
}

complex mu_inner(const StructuredFunction& f, const StructuredFunction& g,
                 const AtomicMeasure& mu, const QuadratureConfig& cfg) {
  if (mu_norm_sq(f, mu, cfg).diverged || mu_norm_sq(g, mu, cfg).diverged)
    throw std::domain_error("mu_inner requires both arguments to have finite mu-norm");

  std::vector<double> specials = f.special_angles();
  {
    auto gs = g.special_angles();
    specials.insert(specials.end(), gs.begin(), gs.end());
  }
  const complex h2 = h2_inner(f, g, cfg);

  const auto& atoms = mu.atoms();
  if (atoms.empty()) return h2;

  std::vector<double> specials_a = specials;
  for (const auto& atom : atoms) specials_a.push_back(atom.point.theta);
  const double cap_a =
      panel_cap(f.oscillation_degree() + g.oscillation_degree() + 2, 16);

  auto layer = [&](double u) {
    return integrate_graded_complex(
        [&, u](double ref, double d) {
          const complex z = std::polar(1.0 - u, ref + d);
          const complex fd = f.evaluate_with_derivative(z).second;
          const complex gd = g.evaluate_with_derivative(z).second;
          double pk = 0.0;
          for (const auto& atom : atoms) {
            const double cs = chord_sq((ref - atom.point.theta) + d);
            pk += atom.weight * u * (2.0 - u) / (u * u + (1.0 - u) * cs);
          }
          return fd * std::conj(gd) * pk;
        },
        specials_a, cfg.boundary_panels, cap_a, 16);
  };

  const int levels = std::min(std::clamp(cfg.radial_nodes / 8, 16, 36), cfg.boundary_panels - 4);
  const auto rp = graded_radial_panels(levels);
  std::vector<complex> rlevel(levels, 0.0);
  for (const auto& pan : rp) {
    const GaussRule& gr = gauss_legendre(pan.level <= 2 ? 16 : 8);
    const double mid = 0.5 * (pan.a + pan.b), half = 0.5 * (pan.b - pan.a);
    for (size_t i = 0; i < gr.x.size(); ++i) {
      const double u = mid + half * gr.x[i];
      rlevel[pan.level] += half * gr.w[i] * (1.0 - u) * layer(u);
    }
  }
  complex area = 0.0;
  for (const auto& s : rlevel) area += s;
  if (levels >= 2 && std::abs(rlevel[levels - 2]) > 0.0) {
    const complex q = rlevel[levels - 1] / rlevel[levels - 2];
    if (std::abs(q) < 0.95) area += rlevel[levels - 1] * q / (1.0 - q);
  }
  return h2 + area / std::numbers::pi;
}

}  // namespace dmu
