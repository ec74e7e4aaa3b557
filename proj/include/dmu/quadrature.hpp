#pragma once

#include <functional>
#include <vector>

#include "dmu/geometry.hpp"

namespace dmu {

struct QuadratureConfig {
  int boundary_panels = 40;  // dyadic grading depth toward boundary singularities
  int radial_nodes = 256;    // radial budget for area quadrature, clustered near r = 1
  int angular_nodes = 1024;  // angular budget per radius for area quadrature
  double divergence_threshold = 1e12;
};

// Result of a numerical energy integral; value is +infinity when diverged is set.
struct EnergyValue {
  double value = 0.0;
  double error_estimate = 0.0;
  bool diverged = false;

  static EnergyValue divergent();
  EnergyValue& operator+=(const EnergyValue& o);
  EnergyValue& scale(double c);
};

// Gauss-Legendre nodes and weights on [-1, 1]; rules are cached per order.
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int order);

// One integration panel. level 0 is the coarse far field with absolute bounds; level j >= 1
// is the j-th dyadic shell toward the singular angle indexed by point, with [a, b] holding
// signed offsets from that angle. Offsets keep the deep shells exactly representable: storing
// absolute bounds would quantize them at ulp(angle), which is large relative to a deep shell.
struct GradedPanel {
  double a = 0.0, b = 0.0;
  int level = 0;
  int point = -1;
  int side = 0;
};

struct CirclePanels {
  std::vector<GradedPanel> panels;
  std::vector<double> points;  // canonicalized, deduplicated singular angles
};

// Cover one period with panels dyadically graded toward each listed angle. depth bounds the
// number of shells per side; max_len caps panel length (oscillation control). The innermost
// sliver at each angle is left uncovered and handled by tail extrapolation.
CirclePanels graded_circle_panels(std::vector<double> singular_angles, int depth,
                                  double max_len);

// Dyadic radial panels in the boundary distance u = 1 - r: [1/2, 1] then [2^-(k+1), 2^-k].
// Integrands work in u so that 1 - r never suffers cancellation near the circle.
std::vector<GradedPanel> graded_radial_panels(int levels);

// True when the cumulative per-level sums pass the configured threshold or the last four
// level-to-level ratios each grow the running total by at least 10%.
bool growth_divergent(const std::vector<double>& level_sums, double threshold);

// Geometric extrapolation of the uncovered innermost shells from the last two covered ones.
// Returns {tail value, uncertainty}.
std::pair<double, double> geometric_tail(double s_prev, double s_last);

// Circle integrands receive (ref, offset) with the node at angle ref + offset; ref is the
// hugged singular angle for shell panels and 0 for far-field panels. Evaluating distances
// from (ref - other_angle) + offset avoids catastrophic cancellation in deep shells.
using GradedIntegrand = std::function<double(double ref, double offset)>;
using GradedIntegrandC = std::function<complex(double ref, double offset)>;

// Integrate fn over graded panels with divergence bookkeeping and tail extrapolation.
EnergyValue integrate_graded(const GradedIntegrand& fn,
                             const std::vector<double>& singular_angles, int depth,
                             double max_len, int gl_order, double threshold);

// Same panel geometry, complex integrand, no divergence logic (finiteness checked upstream).
complex integrate_graded_complex(const GradedIntegrandC& fn,
                                 const std::vector<double>& singular_angles, int depth,
                                 double max_len, int gl_order);

// Fourier coefficients c_k = (1/N) sum_j s_j e^{-2 pi i j k / N}; radix-2 fast path.
std::vector<complex> fourier_coefficients(const std::vector<double>& samples);

}  // namespace dmu
