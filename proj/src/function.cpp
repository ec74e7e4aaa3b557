#include "dmu/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dmu {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double alpha_floor = -0.5;  // square-integrability of the modulus
constexpr double zero_match_tol = 1e-9;

int pow2_at_least(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

complex pow_int(complex b, int n) {
  complex r = 1.0;
  while (n-- > 0) r *= b;
  return r;
}

}  // namespace

BoundaryModulus::BoundaryModulus(double log_constant, std::vector<PowerFactor> powers,
                                 std::vector<double> grid_samples)
    : log_constant_(log_constant), grid_(std::move(grid_samples)) {
  if (!std::isfinite(log_constant_)) throw std::domain_error("outer log_constant must be finite");
  for (auto& p : powers) {
    if (!std::isfinite(p.alpha)) throw std::domain_error("power factor alpha must be finite");
    if (p.alpha <= alpha_floor)
      throw std::domain_error("power factor alpha must exceed -1/2");
    p.point = UnitCirclePoint(p.point.theta);
  }
  std::sort(powers.begin(), powers.end(),
            [](const PowerFactor& a, const PowerFactor& b) { return a.point.theta < b.point.theta; });
  for (const auto& p : powers) {
    if (!powers_.empty() && same_angle(powers_.back().point.theta, p.point.theta))
      powers_.back().alpha += p.alpha;
    else
      powers_.push_back(p);
  }
  std::erase_if(powers_, [](const PowerFactor& p) { return std::fabs(p.alpha) < 1e-15; });
  for (const auto& p : powers_)
    if (p.alpha <= alpha_floor) throw std::domain_error("merged power factor alpha must exceed -1/2");

  if (!grid_.empty()) {
    for (double v : grid_)
      if (!std::isfinite(v)) throw std::domain_error("outer grid samples must be finite");
    const size_t n = grid_.size();
    auto c = fourier_coefficients(grid_);
    const size_t half = n / 2;
    coeff_.assign(half + 1, 0.0);
    coeff_[0] = c[0].real();
    for (size_t k = 1; k < half; ++k) coeff_[k] = 2.0 * c[k];
    if (n % 2 == 0)
      coeff_[half] = c[half].real();  // Nyquist mode of a real signal
    else if (half >= 1)
      coeff_[half] = 2.0 * c[half];
  }
}

bool BoundaryModulus::trivial() const {
  if (log_constant_ != 0.0 || !powers_.empty()) return false;
  for (const auto& c : coeff_)
    if (std::abs(c) > 1e-15) return false;
  return true;
}

double BoundaryModulus::smooth(double t) const {
  if (coeff_.empty()) return 0.0;
  const complex z = std::polar(1.0, t);
  complex acc = 0.0;
  for (size_t k = coeff_.size(); k-- > 0;) acc = acc * z + coeff_[k];
  return acc.real();
}

std::pair<double, double> BoundaryModulus::exponent_and_finite(double t) const {
  double a = 0.0;
  double b = log_constant_ + smooth(t);
  for (const auto& p : powers_) {
    if (same_angle(t, p.point.theta))
      a += p.alpha;
    else
      b += p.alpha * std::log(chordal_distance(t, p.point.theta));
  }
  return {a, b};
}

double BoundaryModulus::value(double t) const {
  auto [a, b] = exponent_and_finite(t);
  if (a > 0.0) return 0.0;
  if (a < 0.0) return inf;
  return std::exp(b);
}

double BoundaryModulus::log_value(double t) const { return log_value_near(0.0, t); }

double BoundaryModulus::log_value_near(double theta_ref, double delta) const {
  double s = log_constant_ + smooth(theta_ref + delta);
  for (const auto& p : powers_) {
    double gap = (theta_ref - p.point.theta) + delta;
    s += p.alpha * std::log(2.0 * std::fabs(std::sin(0.5 * gap)));
  }
  return s;
}

complex BoundaryModulus::herglotz_log(complex z) const {
  complex g = log_constant_;
  for (const auto& p : powers_) g += p.alpha * std::log(1.0 - std::conj(p.point.unit()) * z);
  return g + grid_analytic(z);
}

complex BoundaryModulus::grid_analytic(complex z) const {
  complex acc = 0.0;
  for (size_t k = coeff_.size(); k-- > 0;) acc = acc * z + coeff_[k];
  return acc;
}

std::pair<complex, complex> BoundaryModulus::herglotz_log_with_derivative(complex z) const {
  complex g = log_constant_, dg = 0.0;
  for (const auto& p : powers_) {
    const complex w = std::conj(p.point.unit());
    g += p.alpha * std::log(1.0 - w * z);
    dg += -p.alpha * w / (1.0 - w * z);
  }
  if (!coeff_.empty()) {
    complex acc = 0.0, dacc = 0.0;
    for (size_t k = coeff_.size(); k-- > 0;) acc = acc * z + coeff_[k];
    for (size_t k = coeff_.size(); k-- > 1;) dacc = dacc * z + (double)k * coeff_[k];
    g += acc;
    dg += dacc;
  }
  return {g, dg};
}

StructuredFunction::StructuredFunction(std::vector<BlaschkeZero> blaschke,
                                       std::vector<SingularAtom> singular, BoundaryModulus outer)
    : outer_(std::move(outer)) {
  for (auto& b : blaschke) {
    if (b.mult < 1) throw std::domain_error("blaschke multiplicity must be at least 1");
    if (!(std::abs(b.zero) < 1.0)) throw std::domain_error("blaschke zero must lie in the open disc");
    bool merged = false;
    for (auto& have : blaschke_)
      if (std::abs(have.zero - b.zero) <= 1e-12) {
        have.mult += b.mult;
        merged = true;
        break;
      }
    if (!merged) blaschke_.push_back(b);
  }
  std::sort(blaschke_.begin(), blaschke_.end(), [](const BlaschkeZero& a, const BlaschkeZero& b) {
    if (a.zero.real() != b.zero.real()) return a.zero.real() < b.zero.real();
    return a.zero.imag() < b.zero.imag();
  });
  for (auto& s : singular) {
    if (!(s.mass > 0.0) || !std::isfinite(s.mass))
      throw std::domain_error("singular atom mass must be positive and finite");
    s.point = UnitCirclePoint(s.point.theta);
    bool merged = false;
    for (auto& have : singular_)
      if (same_angle(have.point.theta, s.point.theta)) {
        have.mass += s.mass;
        merged = true;
        break;
      }
    if (!merged) singular_.push_back(s);
  }
  std::sort(singular_.begin(), singular_.end(),
            [](const SingularAtom& a, const SingularAtom& b) { return a.point.theta < b.point.theta; });
}

StructuredFunction StructuredFunction::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::domain_error("canonical constants must be positive and finite");
  return StructuredFunction({}, {}, BoundaryModulus(std::log(c), {}));
}

StructuredFunction StructuredFunction::monomial(int n) {
  if (n < 0) throw std::domain_error("monomial degree must be nonnegative");
  if (n == 0) return StructuredFunction();
  return StructuredFunction({{complex(0.0, 0.0), n}}, {}, BoundaryModulus());
}

namespace {

// Value and derivative of one Blaschke factor (a - z)/(1 - conj(a) z) * |a|/a, or z for a = 0.
std::pair<complex, complex> blaschke_factor(complex a, complex z) {
  if (a == complex(0.0, 0.0)) return {z, 1.0};
  const complex rot = std::abs(a) / a;
  const complex den = 1.0 - std::conj(a) * z;
  return {rot * (a - z) / den, rot * (std::norm(a) - 1.0) / (den * den)};
}

}  // namespace

std::pair<complex, complex> StructuredFunction::evaluate_with_derivative(complex z) const {
  if (!(std::abs(z) < 1.0)) throw std::domain_error("evaluate requires |z| < 1");
  complex v = 1.0, d = 0.0;
  for (const auto& b : blaschke_) {
    auto [bv, bd] = blaschke_factor(b.zero, z);
    const complex fv = pow_int(bv, b.mult);
    const complex fd = (double)b.mult * pow_int(bv, b.mult - 1) * bd;
    d = d * fv + v * fd;
    v *= fv;
  }
  if (!singular_.empty()) {
    complex e = 0.0, de = 0.0;
    for (const auto& s : singular_) {
      const complex zeta = s.point.unit();
      e += -s.mass * (zeta + z) / (zeta - z);
      de += -s.mass * 2.0 * zeta / ((zeta - z) * (zeta - z));
    }
    const complex sv = std::exp(e);
    d = d * sv + v * sv * de;
    v *= sv;
  }
  auto [g, dg] = outer_.herglotz_log_with_derivative(z);
  const complex ov = std::exp(g);
  d = d * ov + v * ov * dg;
  v *= ov;
  return {v, d};
}

complex StructuredFunction::evaluate(complex z) const {
  if (!(std::abs(z) < 1.0)) throw std::domain_error("evaluate requires |z| < 1");
  complex v = 1.0;
  for (const auto& b : blaschke_) v *= pow_int(blaschke_factor(b.zero, z).first, b.mult);
  if (!singular_.empty()) {
    complex e = 0.0;
    for (const auto& s : singular_) {
      const complex zeta = s.point.unit();
      e += -s.mass * (zeta + z) / (zeta - z);
    }
    v *= std::exp(e);
  }
  return v * std::exp(outer_.herglotz_log(z));
}

complex StructuredFunction::boundary_value(double t) const {
  for (const auto& s : singular_)
    if (same_angle(t, s.point.theta)) return 0.0;
  auto [a, b] = outer_.exponent_and_finite(t);
  if (a > 0.0) return 0.0;
  if (a < 0.0) return complex(inf, 0.0);

  const complex lambda = std::polar(1.0, t);
  complex v = 1.0;
  for (const auto& bz : blaschke_) v *= pow_int(blaschke_factor(bz.zero, lambda).first, bz.mult);
  if (!singular_.empty()) {
    double phase = 0.0;
    for (const auto& s : singular_) phase += s.mass / std::tan(0.5 * (s.point.theta - t));
    v *= std::polar(1.0, phase);
  }
  // outer phase from the analytic completion, modulus from the exact finite part
  complex g = outer_.herglotz_log(lambda);
  return v * std::polar(std::exp(b), g.imag());
}

complex StructuredFunction::boundary_value_near(double theta_ref, double delta) const {
  const complex lambda = std::polar(1.0, theta_ref + delta);
  complex v = 1.0;
  for (const auto& bz : blaschke_) v *= pow_int(blaschke_factor(bz.zero, lambda).first, bz.mult);
  for (const auto& s : singular_) {
    const double gap = (theta_ref - s.point.theta) + delta;
    if (gap == 0.0) return 0.0;
    v *= std::polar(1.0, s.mass / std::tan(-0.5 * gap));
  }
  // outer factor per power: 1 - e^{i gap} = 2|sin(gap/2)| with principal argument
  // gap/2 -+ pi/2; the gap must sit in (-2pi, 2pi) for that branch to be principal.
  double lm = outer_.log_constant();
  double ph = 0.0;
  for (const auto& p : outer_.powers()) {
    double gap = (theta_ref - p.point.theta) + delta;
    if (gap == 0.0) return (p.alpha > 0.0) ? complex(0.0) : complex(inf, 0.0);
    if (gap > two_pi) gap -= two_pi;
    else if (gap < -two_pi) gap += two_pi;
    const double sn = std::sin(0.5 * gap);
    lm += p.alpha * std::log(2.0 * std::fabs(sn));
    ph += p.alpha * (0.5 * gap + (sn < 0.0 ? 0.5 : -0.5) * std::numbers::pi);
  }
  const complex h = outer_.grid_analytic(lambda);
  return v * std::polar(std::exp(lm + h.real()), ph + h.imag());
}

double StructuredFunction::radial_limit_modulus(double t) const {
  for (const auto& s : singular_)
    if (same_angle(t, s.point.theta)) return 0.0;
  auto [a, b] = outer_.exponent_and_finite(t);
  if (a > 0.0) return 0.0;
  if (a < 0.0) return inf;
  return std::exp(b);
}

std::vector<UnitCirclePoint> StructuredFunction::boundary_zero_set() const {
  std::vector<UnitCirclePoint> out;
  auto add = [&out](const UnitCirclePoint& p) {
    for (const auto& q : out)
      if (same_angle(q.theta, p.theta)) return;
    out.push_back(p);
  };
  for (const auto& p : outer_.powers())
    if (p.alpha > 0.0) add(p.point);
  for (const auto& s : singular_) add(s.point);
  std::sort(out.begin(), out.end(),
            [](const UnitCirclePoint& a, const UnitCirclePoint& b) { return a.theta < b.theta; });
  return out;
}

ZeroSetDescriptor StructuredFunction::lower_zero_set() const {
  return {blaschke_, boundary_zero_set(), {}};
}

std::vector<double> StructuredFunction::special_angles() const {
  std::vector<double> out;
  auto add = [&out](double t) {
    t = canonical_angle(t);
    for (double s : out)
      if (same_angle(s, t)) return;
    out.push_back(t);
  };
  for (const auto& p : outer_.powers()) add(p.point.theta);
  for (const auto& s : singular_) add(s.point.theta);
  for (const auto& b : blaschke_)
    if (std::abs(b.zero) > 1e-14) add(std::arg(b.zero));
  std::sort(out.begin(), out.end());
  return out;
}

int StructuredFunction::oscillation_degree() const {
  int deg = outer_.grid_degree() + 2;
  for (const auto& b : blaschke_) deg += b.mult;
  double asum = 0.0;
  for (const auto& p : outer_.powers()) asum += std::fabs(p.alpha);
  return deg + (int)std::ceil(asum);
}

std::vector<std::pair<double, double>> StructuredFunction::singular_guard_intervals() const {
  std::vector<std::pair<double, double>> out;
  for (const auto& s : singular_) out.push_back({s.point.theta, s.mass / 20.0});
  return out;
}

namespace {

double panel_cap(int degree, int gl_order) {
  if (degree <= 0) return std::numbers::pi / 4.0;
  return std::clamp((double)gl_order / (double)degree, 1e-3, std::numbers::pi / 4.0);
}

}  // namespace

EnergyValue h2_norm_sq(const StructuredFunction& f, const QuadratureConfig& cfg) {
  const BoundaryModulus& m = f.outer();
  std::vector<double> specials;
  for (const auto& p : m.powers()) specials.push_back(p.point.theta);
  const double cap = panel_cap(2 * f.oscillation_degree(), 32);
  auto fn = [&m](double ref, double d) { return std::exp(2.0 * m.log_value_near(ref, d)); };
  EnergyValue out = integrate_graded(fn, specials, cfg.boundary_panels, cap, 32,
                                     cfg.divergence_threshold * two_pi);
  return out.scale(1.0 / two_pi);
}

namespace {

void require_outer(const StructuredFunction& f, const char* op) {
  if (!f.is_outer()) throw std::domain_error(std::string(op) + " is defined for outer functions only");
}

struct MergedExponents {
  std::vector<UnitCirclePoint> points;
  std::vector<double> alpha_f, alpha_g;
};

MergedExponents merge_power_points(const BoundaryModulus& f, const BoundaryModulus& g) {
  MergedExponents m;
  for (const auto& p : f.powers()) {
    m.points.push_back(p.point);
    m.alpha_f.push_back(p.alpha);
    m.alpha_g.push_back(0.0);
  }
  for (const auto& p : g.powers()) {
    bool found = false;
    for (size_t i = 0; i < m.points.size(); ++i)
      if (same_angle(m.points[i].theta, p.point.theta)) {
        m.alpha_g[i] = p.alpha;
        found = true;
        break;
      }
    if (!found) {
      m.points.push_back(p.point);
      m.alpha_f.push_back(0.0);
      m.alpha_g.push_back(p.alpha);
    }
  }
  return m;
}

StructuredFunction lattice_op(const StructuredFunction& f, const StructuredFunction& g,
                              int grid_size, bool take_min) {
  require_outer(f, take_min ? "wedge" : "vee");
  require_outer(g, take_min ? "wedge" : "vee");

  MergedExponents m = merge_power_points(f.outer(), g.outer());
  std::vector<PowerFactor> res;
  for (size_t i = 0; i < m.points.size(); ++i) {
    // min modulus keeps the larger exponent near the point, max modulus the smaller
    double a = take_min ? std::max(m.alpha_f[i], m.alpha_g[i]) : std::min(m.alpha_f[i], m.alpha_g[i]);
    if (std::fabs(a) > 1e-15) res.push_back({m.points[i], a});
  }

  int n = pow2_at_least(std::max(
      grid_size, 4 * std::max(f.outer().grid_degree(), g.outer().grid_degree()) + 4));
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) {
    const double t = two_pi * i / n;
    auto [af, bf] = f.outer().exponent_and_finite(t);
    auto [ag, bg] = g.outer().exponent_and_finite(t);
    double win;
    if (take_min)
      win = (af > ag) ? bf : (ag > af) ? bg : std::min(bf, bg);
    else
      win = (af < ag) ? bf : (ag < af) ? bg : std::max(bf, bg);
    for (const auto& p : res)
      if (!same_angle(t, p.point.theta))
        win -= p.alpha * std::log(chordal_distance(t, p.point.theta));
    samples[i] = win;
  }
  return StructuredFunction({}, {}, BoundaryModulus(0.0, std::move(res), std::move(samples)));
}

}  // namespace

StructuredFunction wedge(const StructuredFunction& f, const StructuredFunction& g, int grid_size) {
  return lattice_op(f, g, grid_size, true);
}

StructuredFunction vee(const StructuredFunction& f, const StructuredFunction& g, int grid_size) {
  return lattice_op(f, g, grid_size, false);
}

StructuredFunction fusion(const StructuredFunction& f, const Arc& arc, int grid_size) {
  require_outer(f, "fusion");
  for (const auto& p : f.outer().powers()) {
    if (p.alpha < 0.0) throw std::domain_error("fusion requires a bounded modulus");
    if (same_angle(p.point.theta, arc.start().theta) || same_angle(p.point.theta, arc.end().theta))
      throw std::domain_error("fusion cannot place a power factor at an arc endpoint");
  }

  std::vector<PowerFactor> res = {{arc.start(), 1.0}, {arc.end(), 1.0}};
  std::vector<PowerFactor> inside;
  for (const auto& p : f.outer().powers())
    if (arc.contains(p.point.theta)) {
      res.push_back(p);
      inside.push_back(p);
    }

  int n = pow2_at_least(std::max(grid_size, 4 * f.outer().grid_degree() + 4));
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) {
    const double t = two_pi * i / n;
    double v;
    if (arc.contains(t)) {
      v = f.outer().exponent_and_finite(t).second;
      for (const auto& p : inside)
        if (!same_angle(t, p.point.theta))
          v -= p.alpha * std::log(chordal_distance(t, p.point.theta));
    } else {
      v = 0.0;
      for (const auto& p : inside) v -= p.alpha * std::log(chordal_distance(t, p.point.theta));
    }
    samples[i] = v;
  }
  return StructuredFunction({}, {}, BoundaryModulus(0.0, std::move(res), std::move(samples)));
}

StructuredFunction gcd_inner(const StructuredFunction& f, const StructuredFunction& g) {
  std::vector<BlaschkeZero> zeros;
  for (const auto& a : f.blaschke())
    for (const auto& b : g.blaschke())
      if (std::abs(a.zero - b.zero) <= zero_match_tol) {
        zeros.push_back({a.zero, std::min(a.mult, b.mult)});
        break;
      }
  std::vector<SingularAtom> atoms;
  for (const auto& a : f.singular())
    for (const auto& b : g.singular())
      if (same_angle(a.point.theta, b.point.theta, zero_match_tol)) {
        atoms.push_back({a.point, std::min(a.mass, b.mass)});
        break;
      }
  return StructuredFunction(std::move(zeros), std::move(atoms), BoundaryModulus());
}

StructuredFunction product(const StructuredFunction& f, const StructuredFunction& g) {
  std::vector<BlaschkeZero> zeros = f.blaschke();
  zeros.insert(zeros.end(), g.blaschke().begin(), g.blaschke().end());
  std::vector<SingularAtom> atoms = f.singular();
  atoms.insert(atoms.end(), g.singular().begin(), g.singular().end());

  std::vector<PowerFactor> powers = f.outer().powers();
  powers.insert(powers.end(), g.outer().powers().begin(), g.outer().powers().end());
  const double c = f.outer().log_constant() + g.outer().log_constant();

  std::vector<double> samples;
  if (!f.outer().grid().empty() || !g.outer().grid().empty()) {
    int n = pow2_at_least(
        4 * std::max(f.outer().grid_degree(), g.outer().grid_degree()) + 4);
    n = std::max(n, 16);
    samples.resize(n);
    for (int i = 0; i < n; ++i) {
      const double t = two_pi * i / n;
      samples[i] = f.outer().smooth(t) + g.outer().smooth(t);
    }
  }
  return StructuredFunction(std::move(zeros), std::move(atoms),
                            BoundaryModulus(c, std::move(powers), std::move(samples)));
}

}  // namespace dmu
