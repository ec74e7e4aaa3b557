#include "dmu/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace dmu {

EnergyValue EnergyValue::divergent() {
  return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), true};
}

EnergyValue& EnergyValue::operator+=(const EnergyValue& o) {
  diverged = diverged || o.diverged;
  value = diverged ? std::numeric_limits<double>::infinity() : value + o.value;
  error_estimate += o.error_estimate;
  return *this;
}

EnergyValue& EnergyValue::scale(double c) {
  value *= c;
  error_estimate *= std::fabs(c);
  return *this;
}

namespace {

GaussRule make_gauss_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on the Legendre polynomial from the usual Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

constexpr double panel_width_floor = 1e-14;

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_gauss_rule(order)).first;
  return it->second;
}

namespace {

// Append [a, b] split into chunks no longer than max_len.
void push_split(std::vector<GradedPanel>& out, double a, double b, int level, int point, int side,
                double max_len) {
  double len = b - a;
  if (len <= 0.0) return;
  int pieces = std::max(1, (int)std::ceil(len / max_len));
  for (int i = 0; i < pieces; ++i)
    out.push_back({a + len * i / pieces, a + len * (i + 1) / pieces, level, point, side});
}

}  // namespace

CirclePanels graded_circle_panels(std::vector<double> singular_angles, int depth,
                                  double max_len) {
  max_len = std::max(max_len, 1e-6);
  CirclePanels out;

  for (auto& s : singular_angles) s = canonical_angle(s);
  std::sort(singular_angles.begin(), singular_angles.end());
  std::vector<double>& sing = out.points;
  for (double s : singular_angles)
    if (sing.empty() || s - sing.back() > angle_merge_tol) sing.push_back(s);
  if (sing.size() > 1 && (two_pi - sing.back()) + sing.front() <= angle_merge_tol) sing.pop_back();

  if (sing.empty()) {
    push_split(out.panels, 0.0, two_pi, 0, -1, 0, max_len);
    return out;
  }

  const int n = (int)sing.size();
  for (int i = 0; i < n; ++i) {
    double s = sing[i];
    double e = (i + 1 < n) ? sing[i + 1] : sing[0] + two_pi;
    double half = 0.5 * (e - s);
    if (half <= panel_width_floor) continue;
    int levels = std::min(depth, (int)std::floor(std::log2(half / panel_width_floor)));
    levels = std::max(levels, 1);
    // shells toward s, as positive offsets from sing[i]; innermost (deepest level) first
    for (int j = levels; j >= 1; --j) {
      double lo = half * std::ldexp(1.0, -j);
      double hi = half * std::ldexp(1.0, -(j - 1));
      push_split(out.panels, lo, hi, j, i, 0, max_len);
    }
    // shells toward e, as negative offsets from sing[(i+1) % n]
    int inext = (i + 1) % n;
    for (int j = levels; j >= 1; --j) {
      double lo = half * std::ldexp(1.0, -j);
      double hi = half * std::ldexp(1.0, -(j - 1));
      push_split(out.panels, -hi, -lo, j, inext, 1, max_len);
    }
  }
  return out;
}

std::vector<GradedPanel> graded_radial_panels(int levels) {
  std::vector<GradedPanel> panels;
  panels.push_back({0.5, 1.0, 0, 0, 0});
  for (int k = 1; k < levels; ++k)
    panels.push_back({std::ldexp(1.0, -(k + 1)), std::ldexp(1.0, -k), k, 0, 0});
  return panels;
}

bool growth_divergent(const std::vector<double>& level_sums, double threshold) {
  double total = 0.0;
  std::vector<double> ratios;
  double prev_total = 0.0;
  for (size_t k = 0; k < level_sums.size(); ++k) {
    total += level_sums[k];
    if (std::fabs(total) >= threshold) return true;
    if (k > 0 && prev_total > 0.0) ratios.push_back(total / prev_total);
    prev_total = total;
  }
  if (ratios.size() < 4) return false;
  for (size_t i = ratios.size() - 4; i < ratios.size(); ++i)
    if (ratios[i] < 1.1) return false;
  return true;
}

std::pair<double, double> geometric_tail(double s_prev, double s_last) {
  if (s_last == 0.0 || s_prev == 0.0) return {0.0, std::fabs(s_last)};
  double q = s_last / s_prev;
  if (q <= 0.0) return {0.0, std::fabs(s_last)};
  if (q < 0.95) {
    double tail = s_last * q / (1.0 - q);
    return {tail, 0.15 * std::fabs(tail)};
  }
  // nearly flat or growing shells: do not extrapolate, report the uncertainty
  return {0.0, 30.0 * std::fabs(s_last)};
}

namespace {

template <class T, class Fn>
T panel_sum(const Fn& fn, double ref, const GradedPanel& p, const GaussRule& g) {
  T acc{};
  const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
  for (size_t i = 0; i < g.x.size(); ++i) acc += T(half * g.w[i]) * fn(ref, mid + half * g.x[i]);
  return acc;
}

}  // namespace

EnergyValue integrate_graded(const GradedIntegrand& fn,
                             const std::vector<double>& singular_angles, int depth,
                             double max_len, int gl_order, double threshold) {
  auto cp = graded_circle_panels(singular_angles, depth, max_len);
  const GaussRule& hi = gauss_legendre(gl_order);
  const GaussRule& lo = gauss_legendre(std::max(4, gl_order / 2));

  int max_level = 0;
  for (const auto& p : cp.panels) max_level = std::max(max_level, p.level);
  std::vector<double> level_sums(max_level + 1, 0.0);
  std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> shells;
  double err = 0.0;

  for (const auto& p : cp.panels) {
    double ref = (p.point >= 0) ? cp.points[p.point] : 0.0;
    double v = panel_sum<double>(fn, ref, p, hi);
    double v2 = panel_sum<double>(fn, ref, p, lo);
    err += std::fabs(v - v2);
    level_sums[p.level] += v;
    if (p.point >= 0 && p.level >= 1) {
      auto& s = shells[{p.point, p.side}];
      if (!s.empty() && s.back().first == p.level)
        s.back().second += v;
      else
        s.push_back({p.level, v});
    }
  }

  if (growth_divergent(level_sums, threshold)) return EnergyValue::divergent();

  EnergyValue out;
  for (double s : level_sums) out.value += s;
  for (auto& [key, series] : shells) {
    if (series.size() < 2) continue;
    // shells were gathered innermost first; extrapolate from the two deepest levels
    std::sort(series.begin(), series.end());
    auto [tail, terr] = geometric_tail(series[series.size() - 2].second, series.back().second);
    out.value += tail;
    err += terr;
  }
  if (std::fabs(out.value) >= threshold) return EnergyValue::divergent();
  out.error_estimate = err;
  return out;
}

complex integrate_graded_complex(const GradedIntegrandC& fn,
                                 const std::vector<double>& singular_angles, int depth,
                                 double max_len, int gl_order) {
  auto cp = graded_circle_panels(singular_angles, depth, max_len);
  const GaussRule& g = gauss_legendre(gl_order);
  complex acc = 0.0;
  std::map<std::pair<int, int>, std::vector<std::pair<int, complex>>> shells;
  for (const auto& p : cp.panels) {
    double ref = (p.point >= 0) ? cp.points[p.point] : 0.0;
    complex v = panel_sum<complex>(fn, ref, p, g);
    acc += v;
    if (p.point >= 0 && p.level >= 1) {
      auto& s = shells[{p.point, p.side}];
      if (!s.empty() && s.back().first == p.level)
        s.back().second += v;
      else
        s.push_back({p.level, v});
    }
  }
  // same geometric completion of the uncovered slivers as the real-valued integrator
  for (auto& [key, series] : shells) {
    if (series.size() < 2) continue;
    std::sort(series.begin(), series.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    complex s_prev = series[series.size() - 2].second, s_last = series.back().second;
    if (std::abs(s_prev) == 0.0) continue;
    complex q = s_last / s_prev;
    if (std::abs(q) < 0.95) acc += s_last * q / (1.0 - q);
  }
  return acc;
}

namespace {

bool is_pow2(size_t n) { return n && !(n & (n - 1)); }

void fft_inplace(std::vector<complex>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -two_pi / (double)len;
    const complex wl = std::polar(1.0, ang);
    for (size_t i = 0; i < n; i += len) {
      complex w = 1.0;
      for (size_t k = 0; k < len / 2; ++k) {
        complex u = a[i + k], v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

std::vector<complex> fourier_coefficients(const std::vector<double>& samples) {
  const size_t n = samples.size();
  if (n == 0) return {};
  std::vector<complex> out(n);
  if (is_pow2(n)) {
    for (size_t i = 0; i < n; ++i) out[i] = samples[i];
    fft_inplace(out);
    for (auto& c : out) c /= (double)n;
    return out;
  }
  for (size_t k = 0; k < n; ++k) {
    complex acc = 0.0;
    for (size_t j = 0; j < n; ++j)
      acc += samples[j] * std::polar(1.0, -two_pi * (double)(j * k % n) / (double)n);
    out[k] = acc / (double)n;
  }
  return out;
}

}  // namespace dmu
