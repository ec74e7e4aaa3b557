#pragma once

#include <string>
#include <vector>

#include "dmu/quadrature.hpp"

namespace dmu {

// One property check inside a suite. observed is the measured figure (usually the worst
// relative discrepancy, or an extrapolated limit), bound the threshold it was held to;
// both are zero when a check is a bare verdict match.
struct VerifyCase {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double bound = 0.0;
};

struct VerifySuiteResult {
  std::string suite;
  std::vector<VerifyCase> cases;
  bool passed() const;
};

// Suite names in canonical execution order.
const std::vector<std::string>& verify_suite_names();

// Run one suite. The seed drives the randomized batteries (lattice pairs); a fixed seed
// and config make every figure deterministic. Unknown suite names throw
// std::domain_error.
VerifySuiteResult run_verify_suite(const std::string& name, unsigned seed,
                                   const QuadratureConfig& cfg = {});

// All suites in order.
std::vector<VerifySuiteResult> run_all_verify_suites(unsigned seed,
                                                     const QuadratureConfig& cfg = {});

}  // namespace dmu
