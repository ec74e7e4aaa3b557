// Command-line front end: parses measure/function files, dispatches to the library and
// emits JSON/CSV reports. Exit codes: 0 success, 1 parse or domain errors, 2 verification
// suite failure. Reports carry the tool version and the fully resolved configuration and
// contain no timestamps, so identical inputs give byte-identical output.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dmu/capacity.hpp"
#include "dmu/cyclicity.hpp"
#include "dmu/dirichlet.hpp"
#include "dmu/invariant.hpp"
#include "dmu/io.hpp"
#include "dmu/verify.hpp"
#include "dmu/version.hpp"
#include "json.hpp"

namespace {

using dmu::complex;
using nlohmann::ordered_json;

// JSON has no infinity: divergent values serialize as null next to a flag.
ordered_json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

ordered_json energy_json(const dmu::EnergyValue& e) {
  ordered_json j;
  j["value"] = finite_or_null(e.value);
  j["error_estimate"] = e.error_estimate;
  j["diverged"] = e.diverged;
  return j;
}

ordered_json verdict_json(const dmu::CapacityVerdict& v) {
  ordered_json j;
  j["verdict"] = dmu::to_string(v.verdict);
  j["integral_estimate"] = finite_or_null(v.criterion_integral_estimate);
  j["exponent"] = v.growth_exponent_estimate;
  j["stable"] = v.truncation_stable;
  return j;
}

ordered_json angles_json(const std::vector<dmu::UnitCirclePoint>& pts) {
  ordered_json a = ordered_json::array();
  for (const auto& p : pts) a.push_back(p.theta + 0.0);  // clears the sign of -0.0
  return a;
}

ordered_json function_json(const dmu::StructuredFunction& f) {
  return ordered_json::parse(dmu::function_to_json(f));
}

ordered_json config_json(const dmu::QuadratureConfig& cfg) {
  ordered_json j;
  j["panels"] = cfg.boundary_panels;
  j["radial_nodes"] = cfg.radial_nodes;
  j["angular_nodes"] = cfg.angular_nodes;
  return j;
}

ordered_json report_skeleton(const std::string& command) {
  ordered_json j;
  j["version"] = dmu::version;
  j["command"] = command;
  return j;
}

void emit(const ordered_json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    dmu::save_text(out_path, text);
}

std::vector<double> parse_points_file(const std::string& path) {
  const auto j = ordered_json::parse(dmu::load_text(path));
  const ordered_json* arr = nullptr;
  if (j.is_array())
    arr = &j;
  else if (j.is_object() && j.contains("points") && j.at("points").is_array())
    arr = &j.at("points");
  else
    throw std::runtime_error(path + ": expected an array of angles or {\"points\":[...]}");
  std::vector<double> out;
  for (size_t i = 0; i < arr->size(); ++i) {
    if (!(*arr)[i].is_number())
      throw std::runtime_error(path + ": points[" + std::to_string(i) + "] must be a number");
    out.push_back((*arr)[i].get<double>());
  }
  return out;
}

std::vector<complex> parse_coefficients(const std::string& text) {
  std::vector<complex> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    try {
      size_t used = 0;
      const double v = std::stod(tok, &used);
      while (used < tok.size() && std::isspace((unsigned char)tok[used])) ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.emplace_back(v, 0.0);
    } catch (const std::exception&) {
      throw std::runtime_error("--poly: coefficient '" + tok + "' is not a number");
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (out.empty()) throw std::runtime_error("--poly: no coefficients given");
  return out;
}

// ---- subcommand runners ---------------------------------------------------------------

int run_capacity(const std::string& measure_path, double theta,
                 const std::string& points_file, const dmu::QuadratureConfig& cfg,
                 const std::string& out_path) {
  const auto mu = dmu::load_measure(measure_path);
  auto report = report_skeleton("capacity");
  report["config"] = config_json(cfg);
  report["config"]["measure"] = measure_path;
  report["config"]["point"] = theta;
  if (!points_file.empty()) report["config"]["points_file"] = points_file;

  report["point"] = verdict_json(dmu::point_capacity(mu, dmu::UnitCirclePoint(theta)));
  if (!points_file.empty()) {
    std::vector<dmu::UnitCirclePoint> pts;
    for (double t : parse_points_file(points_file)) pts.emplace_back(t);
    const auto set = dmu::countable_set_capacity_zero(mu, pts);
    ordered_json s;
    s["capacity_zero"] = set.capacity_zero();
    s["aggregate"] = dmu::to_string(set.aggregate);
    s["verdicts"] = ordered_json::array();
    for (const auto& v : set.verdicts) s["verdicts"].push_back(verdict_json(v));
    report["set"] = std::move(s);
  }
  emit(report, out_path);
  return 0;
}

int run_norm(const std::string& measure_path, const std::string& function_path,
             const dmu::QuadratureConfig& cfg, const std::string& out_path) {
  const auto mu = dmu::load_measure(measure_path);
  const auto f = dmu::load_function(function_path);
  auto report = report_skeleton("norm");
  report["config"] = config_json(cfg);
  report["config"]["measure"] = measure_path;
  report["config"]["function"] = function_path;

  const double h2 = dmu::h2_inner(f, f, cfg).real();
  const auto energy = dmu::dirichlet_energy(f, mu, cfg);
  const auto total = dmu::mu_norm_sq(f, mu, cfg);
  report["h2_norm_sq"] = h2;
  report["dirichlet_energy"] = energy_json(energy);
  report["norm_sq"] = finite_or_null(total.value);
  report["diverged"] = total.diverged;
  emit(report, out_path);
  return 0;
}

int run_local(const std::string& function_path, double theta,
              const dmu::QuadratureConfig& cfg, const std::string& out_path) {
  const auto f = dmu::load_function(function_path);
  auto report = report_skeleton("local");
  report["config"] = config_json(cfg);
  report["config"]["function"] = function_path;
  report["config"]["point"] = theta;

  const dmu::UnitCirclePoint p(theta);
  const auto direct = dmu::local_dirichlet_direct(f, p, cfg);
  const auto factored = dmu::local_dirichlet_factored(f, p, cfg);
  report["direct"] = energy_json(direct);
  report["factored"] = energy_json(factored);
  if (!direct.diverged && !factored.diverged)
    report["relative_gap"] =
        std::fabs(direct.value - factored.value) / (1.0 + std::fabs(factored.value));
  else
    report["relative_gap"] = nullptr;
  emit(report, out_path);
  return 0;
}

int run_cyclicity(const std::string& measure_path, const std::string& function_path,
                  int max_degree, const dmu::QuadratureConfig& cfg,
                  const std::string& out_path, const std::string& csv_path) {
  const auto mu = dmu::load_measure(measure_path);
  const auto f = dmu::load_function(function_path);
  const auto r = dmu::cyclicity_report(f, mu, max_degree, cfg);

  auto report = report_skeleton("cyclicity");
  report["config"] = config_json(cfg);
  report["config"]["measure"] = measure_path;
  report["config"]["function"] = function_path;
  report["config"]["max_degree"] = max_degree;

  report["distances"] = r.distances;
  report["condition_numbers"] = r.condition_numbers;
  report["extrapolated_limit"] = r.extrapolated_limit;
  ordered_json cert;
  cert["is_outer"] = r.certificate.is_outer;
  cert["boundary_zeros"] = angles_json(r.certificate.boundary_zeros);
  cert["zero_set_capacity"] = dmu::to_string(r.certificate.zero_set_capacity);
  report["certificate"] = std::move(cert);
  report["predicted"] = dmu::to_string(r.predicted_cyclic);
  report["numerics_agree"] = r.numerics_agree;
  emit(report, out_path);

  if (!csv_path.empty()) {
    std::string csv = "n,d_n,condition_number\n";
    char line[96];
    for (size_t n = 0; n < r.distances.size(); ++n) {
      std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", n, r.distances[n],
                    r.condition_numbers[n]);
      csv += line;
    }
    dmu::save_text(csv_path, csv);
  }
  return 0;
}

int run_invariant(const std::string& poly_text, const std::string& measure_path,
                  const std::string& candidate_path, int max_degree,
                  const dmu::QuadratureConfig& cfg, const std::string& out_path) {
  const auto mu = dmu::load_measure(measure_path);
  const dmu::Polynomial p(parse_coefficients(poly_text));
  const auto d = dmu::polynomial_descriptor(p, mu);

  auto report = report_skeleton("invariant");
  report["config"] = config_json(cfg);
  report["config"]["poly"] = poly_text;
  report["config"]["measure"] = measure_path;
  if (!candidate_path.empty()) {
    report["config"]["candidate"] = candidate_path;
    report["config"]["max_degree"] = max_degree;
  }

  // + 0.0 clears negative zeros so equal roots serialize identically
  ordered_json roots = ordered_json::array();
  for (const auto& [r, m] : dmu::polynomial_roots(p))
    roots.push_back({{"re", r.real() + 0.0}, {"im", r.imag() + 0.0}, {"mult", m}});
  report["roots"] = std::move(roots);

  ordered_json desc;
  desc["disk_zeros"] = ordered_json::array();
  for (const auto& z : d.disk_zeros)
    desc["disk_zeros"].push_back(
        {{"re", z.zero.real() + 0.0}, {"im", z.zero.imag() + 0.0}, {"mult", z.mult}});
  desc["boundary_set"] = angles_json(d.boundary_set);
  desc["boundary_candidates"] = angles_json(d.boundary_candidates);
  desc["undetermined_boundary"] = angles_json(d.undetermined_boundary);
  desc["inner_part"] = function_json(d.inner_part);
  report["descriptor"] = std::move(desc);

  if (!candidate_path.empty()) {
    const auto g = dmu::load_function(candidate_path);
    const bool predicted = dmu::membership_predicted(g, d);
    const auto seq = dmu::membership_numerical(g, dmu::to_function(p), mu, max_degree, cfg);
    const double limit = dmu::extrapolate_tail(seq.distances);
    ordered_json m;
    m["predicted"] = predicted;
    m["distances"] = seq.distances;
    m["extrapolated_limit"] = limit;
    m["numerics_agree"] =
        predicted ? limit < dmu::agreement_tol : limit >= dmu::agreement_floor;
    report["membership"] = std::move(m);
  }
  emit(report, out_path);
  return 0;
}

int run_verify(const std::string& suite, unsigned seed, const dmu::QuadratureConfig& cfg,
               const std::string& out_path) {
  std::vector<dmu::VerifySuiteResult> results;
  if (suite == "all")
    results = dmu::run_all_verify_suites(seed, cfg);
  else
    results.push_back(dmu::run_verify_suite(suite, seed, cfg));

  auto report = report_skeleton("verify");
  report["config"] = config_json(cfg);
  report["config"]["suite"] = suite;
  report["config"]["seed"] = seed;

  bool all_passed = true;
  report["suites"] = ordered_json::array();
  for (const auto& r : results) {
    ordered_json s;
    s["suite"] = r.suite;
    s["passed"] = r.passed();
    s["cases"] = ordered_json::array();
    for (const auto& c : r.cases)
      s["cases"].push_back({{"name", c.name},
                            {"passed", c.passed},
                            {"observed", c.observed},
                            {"bound", c.bound}});
    report["suites"].push_back(std::move(s));
    all_passed = all_passed && r.passed();
  }
  report["all_passed"] = all_passed;
  emit(report, out_path);

  // human summary on stderr so piped JSON stays clean
  std::fprintf(stderr, "%-12s %7s %7s\n", "suite", "cases", "status");
  for (const auto& r : results) {
    int ok = 0;
    for (const auto& c : r.cases) ok += c.passed ? 1 : 0;
    std::fprintf(stderr, "%-12s %3d/%-3zu %7s\n", r.suite.c_str(), ok, r.cases.size(),
                 r.passed() ? "pass" : "FAIL");
  }
  std::fprintf(stderr, "overall: %s\n", all_passed ? "pass" : "FAIL");
  return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for harmonically weighted Dirichlet spaces D(mu)"};
  app.require_subcommand(1);

  dmu::QuadratureConfig cfg;
  std::string measure_path, function_path, out_path, csv_path, points_file;
  std::string poly_text, candidate_path, suite = "all";
  double theta = 0.0;
  int max_degree = 24;
  unsigned seed = 0;

  auto add_quad = [&cfg](CLI::App* sub) {
    sub->add_option("--panels", cfg.boundary_panels, "dyadic grading depth for boundary panels")
        ->check(CLI::PositiveNumber);
    sub->add_option("--radial-nodes", cfg.radial_nodes, "radial budget for area quadrature")
        ->check(CLI::PositiveNumber);
    sub->add_option("--angular-nodes", cfg.angular_nodes, "angular budget for area quadrature")
        ->check(CLI::PositiveNumber);
  };

  auto* cap = app.add_subcommand("capacity", "capacity verdict for a boundary point");
  cap->add_option("--measure", measure_path, "measure JSON file")->required();
  cap->add_option("--point", theta, "boundary angle")->required();
  cap->add_option("--points-file", points_file, "JSON angle list for a set verdict");
  cap->add_option("--out", out_path, "report path (stdout when absent)");
  add_quad(cap);

  auto* nrm = app.add_subcommand("norm", "norm of a function in D(mu)");
  nrm->add_option("--measure", measure_path, "measure JSON file")->required();
  nrm->add_option("--function", function_path, "function JSON file")->required();
  nrm->add_option("--out", out_path, "report path (stdout when absent)");
  add_quad(nrm);

  auto* loc = app.add_subcommand("local", "local Dirichlet integral at a boundary point");
  loc->add_option("--function", function_path, "function JSON file")->required();
  loc->add_option("--point", theta, "boundary angle")->required();
  loc->add_option("--out", out_path, "report path (stdout when absent)");
  add_quad(loc);

  auto* cyc = app.add_subcommand("cyclicity", "distance sequence and cyclicity certificate");
  cyc->add_option("--measure", measure_path, "measure JSON file")->required();
  cyc->add_option("--function", function_path, "function JSON file")->required();
  cyc->add_option("--max-degree", max_degree, "largest polynomial degree")
      ->check(CLI::PositiveNumber);
  cyc->add_option("--out", out_path, "report path (stdout when absent)");
  cyc->add_option("--csv", csv_path, "distance table path (n, d_n, condition_number)");
  add_quad(cyc);

  auto* inv = app.add_subcommand("invariant", "invariant subspace descriptor of a polynomial");
  inv->add_option("--poly", poly_text, "ascending real coefficients c0,c1,...")->required();
  inv->add_option("--measure", measure_path, "measure JSON file")->required();
  inv->add_option("--candidate", candidate_path, "function JSON to test for membership");
  inv->add_option("--max-degree", max_degree, "largest multiplier degree for membership")
      ->check(CLI::PositiveNumber);
  inv->add_option("--out", out_path, "report path (stdout when absent)");
  add_quad(inv);

  auto* ver = app.add_subcommand("verify", "built-in verification suites");
  ver->add_option("--suite", suite, "suite name or 'all'");
  ver->add_option("--seed", seed, "seed for randomized batteries");
  ver->add_option("--out", out_path, "report path (stdout when absent)");
  add_quad(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cap->parsed()) return run_capacity(measure_path, theta, points_file, cfg, out_path);
    if (nrm->parsed()) return run_norm(measure_path, function_path, cfg, out_path);
    if (loc->parsed()) return run_local(function_path, theta, cfg, out_path);
    if (cyc->parsed())
      return run_cyclicity(measure_path, function_path, max_degree, cfg, out_path, csv_path);
    if (inv->parsed())
      return run_invariant(poly_text, measure_path, candidate_path, max_degree, cfg, out_path);
    if (ver->parsed()) return run_verify(suite, seed, cfg, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
