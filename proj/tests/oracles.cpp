#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double tau = 2.0 * pi;

double wrap(double t) {
  t = std::fmod(t, tau);
  if (t < 0.0) t += tau;
  return t;
}

}  // namespace

long double poisson_sum(const std::vector<std::pair<long double, long double>>& atoms,
                        std::complex<long double> z) {
  const long double one_minus = 1.0L - std::norm(z);
  long double sum = 0.0L;
  for (const auto& [theta, weight] : atoms) {
    std::complex<long double> zeta(std::cos(theta), std::sin(theta));
    sum += weight * one_minus / std::norm(1.0L - std::conj(zeta) * z);
  }
  return sum;
}

namespace {

struct LogModulus {
  double log_constant;
  const std::vector<std::pair<double, double>>& powers;

  double operator()(double t) const {
    double u = log_constant;
    for (const auto& [theta, alpha] : powers)
      u += alpha * std::log(2.0 * std::fabs(std::sin(0.5 * (t - theta))));
    return u;
  }
};

std::complex<double> herglotz_kernel(double t, std::complex<double> z) {
  const std::complex<double> e = std::polar(1.0, t);
  return (e + z) / (e - z);
}

// Composite Simpson of kernel * u over [a, b].
std::complex<double> simpson(const LogModulus& u, std::complex<double> z, double a, double b,
                             int m) {
  const double h = (b - a) / m;
  std::complex<double> acc = herglotz_kernel(a, z) * u(a) + herglotz_kernel(b, z) * u(b);
  for (int i = 1; i < m; ++i) {
    const double t = a + h * i;
    acc += herglotz_kernel(t, z) * u(t) * ((i % 2) ? 4.0 : 2.0);
  }
  return acc * (h / 3.0);
}

}  // namespace

std::complex<double> outer_value(double log_constant,
                                 const std::vector<std::pair<double, double>>& powers,
                                 std::complex<double> z) {
  LogModulus u{log_constant, powers};

  std::vector<double> breaks;
  for (const auto& [theta, alpha] : powers) breaks.push_back(wrap(theta));
  if (std::abs(z) > 0.0) breaks.push_back(wrap(std::arg(z)));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
               breaks.end());
  if (breaks.empty()) return std::exp(std::complex<double>(log_constant, 0.0));

  const int m = 160;  // Simpson subintervals per shell
  std::complex<double> total = 0.0;
  const int nb = (int)breaks.size();
  for (int i = 0; i < nb; ++i) {
    const double s = breaks[i];
    const double e = (i + 1 < nb) ? breaks[i + 1] : breaks[0] + tau;
    const double half = 0.5 * (e - s);
    if (half < 1e-13) continue;
    // keep the innermost shell width above 1e-14 so nodes stay clear of the break angle
    const int levels = std::min(48, (int)std::floor(std::log2(half / 1e-14)));
    for (int j = levels; j >= 1; --j) {
      const double w = half * std::ldexp(1.0, -j);
      total += simpson(u, z, s + w, s + 2.0 * w, m);       // shell toward the left break
      total += simpson(u, z, e - 2.0 * w, e - w, m);       // shell toward the right break
    }
  }
  return std::exp(total / tau);
}

double parseval_norm_sq(const std::vector<std::complex<double>>& taylor) {
  double s = 0.0;
  for (const auto& c : taylor) s += std::norm(c);
  return s;
}

double criterion_integral_single_atom() {
  // int_0^1 dr/(r^2 - r + 2) = (4/sqrt(7)) atan(1/sqrt(7))
  return 4.0 / std::sqrt(7.0) * std::atan(1.0 / std::sqrt(7.0));
}

double chordal_power_mean(double a) {
  // (1/2pi) int_0^{2pi} (2 sin(t/2))^a dt = 2^a Gamma((a+1)/2) / (sqrt(pi) Gamma(a/2 + 1))
  return std::pow(2.0, a) * std::tgamma(0.5 * (a + 1.0)) /
         (std::sqrt(pi) * std::tgamma(0.5 * a + 1.0));
}

long double monomial_local_integral(int n, long double theta) {
  const std::complex<long double> zeta(std::cos(theta), std::sin(theta));
  long double s = 0.0L;
  std::complex<long double> c(1.0L, 0.0L);  // zeta^{n-1-k} walked down from zeta^{n-1}
  for (int k = 0; k < n - 1; ++k) c *= zeta;
  for (int k = 0; k < n; ++k) {
    s += std::norm(c);
    c /= zeta;
  }
  return s;
}

std::complex<long double> monomial_gram_entry(
    int m, int n, const std::vector<std::pair<long double, long double>>& atoms) {
  std::complex<long double> g = (m == n) ? 1.0L : 0.0L;
  if (m == 0 || n == 0) return g;
  // angular integral picks the r^{|m-n|} Fourier mode of the kernel; radial integral is
  // 2mn int_0^1 r^{m+n-1+|m-n|} dr = 2mn / (m + n + |m-n|)
  const long double radial = 2.0L * m * n / (long double)(m + n + std::abs(m - n));
  for (const auto& [theta, weight] : atoms) {
    const long double phi = (m - n) * theta;
    g += weight * radial * std::complex<long double>(std::cos(phi), std::sin(phi));
  }
  return g;
}

long double criterion_partial(const std::vector<std::pair<long double, long double>>& atoms,
                              long double theta, int octaves) {
  const std::complex<long double> dir(std::cos(theta), std::sin(theta));
  long double total = 0.0L;
  for (int k = 0; k < octaves; ++k) {
    const long double b = std::ldexp(1.0L, -k);
    const long double a = 0.5L * b;
    const int m = 128;
    const long double h = (b - a) / m;
    long double acc = 0.0L;
    for (int i = 0; i <= m; ++i) {
      const long double u = a + h * i;
      const long double p = poisson_sum(atoms, (1.0L - u) * dir);
      const long double f = 1.0L / (u * p + u * u);
      acc += ((i == 0 || i == m) ? 1.0L : (i % 2 ? 4.0L : 2.0L)) * f;
    }
    total += acc * h / 3.0L;
  }
  return total;
}

}  // namespace oracle
