#include "gsd3/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <utility>

#include "gsd3/canonical.hpp"
#include "gsd3/report.hpp"
#include "gsd3/w_family.hpp"

namespace gsd3 {

namespace {

constexpr double kVerifyNormTol = 1e-4;
constexpr double kWFamilyNormTol = 1e-9;
constexpr double kLiteralAmpFloor = 1e-6;

const QubitVector kKetZero{{1.0, 0.0}, {0.0, 0.0}};

// The printed lambda0^2 reference for the contracted five-term state exceeds
// what any bipartite cut allows, so reports carry this note instead of the
// number whenever that exact state comes in.
void warn_if_contracted_reference(const PureState3Q& state, std::vector<std::string>* warnings,
                                  std::ostream* os) {
  if (state_fidelity(state, named_state("psi_contr")) < 1.0 - 1e-12) return;
  const std::string msg =
      "input matches the contracted five-term reference state; the quoted reference value "
      "lambda0^2 = (14+3*sqrt(2))/22 ~= 0.8292 exceeds the bipartite upper bound "
      "(11+sqrt(17))/22 ~= 0.6874, so the computed value is reported instead";
  if (warnings) warnings->push_back(msg);
  if (os) *os << "warning: " << msg << "\n";
}

void fill_literal_form(const PureState3Q& state, const SolverConfig& config,
                       double best_lambda, LiteralFormInfo* out) {
  const ProductTriple literal{{kKetZero, kKetZero, kKetZero}};
  const double residual = stationarity_residual(state, literal);
  if (residual > config.tol_match || std::abs(state.amp[0]) <= kLiteralAmpFloor) return;
  try {
    const CanonicalForm cf = build_canonical_form(state, literal);
    out->present = true;
    out->lambda0 = cf.lambda0;
    out->lambda1 = cf.lambda1;
    out->lambda2 = cf.lambda2;
    out->lambda3 = cf.lambda3;
    out->lambda4 = cf.lambda4;
    out->stationarity_residual = residual;
    out->schmidt_inequality =
        schmidt_inequality_residual(cf.lambda0, cf.lambda1, cf.lambda2, cf.lambda3);
    out->verdicts = judge_gsd(cf, best_lambda);
    out->valid = out->verdicts.overall;
  } catch (const CanonicalFormError&) {
    // borderline stationarity; treat as absent
  }
}

std::string check_line(const char* name, bool ok, const std::string& detail) {
  std::string line = "check ";
  line += name;
  line += ok ? ": pass" : ": FAIL";
  if (!detail.empty()) line += " (" + detail + ")";
  line += "\n";
  return line;
}

}  // namespace

int cmd_decompose(const DecomposeOptions& opt) {
  std::string bytes;
  try {
    bytes = read_file_bytes(opt.in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  PureState3Q state;
  double norm_correction = 0.0;
  try {
    state = parse_state_json(bytes, &norm_correction);
  } catch (const StateParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  DecompositionReport report;
  report.input_digest = digest_bytes(bytes);
  report.config.n_restarts = opt.restarts;
  report.config.tol_convergence = opt.tol;
  report.config.rng_seed = opt.seed;

  if (norm_correction > kRenormWarnTol)
    report.warnings.push_back("input amplitudes were renormalized; norm deviation " +
                              format_double(norm_correction));
  warn_if_contracted_reference(state, &report.warnings, nullptr);

  try {
    SolveResult solved = find_stationary_points(state, report.config);
    if (solved.points.empty()) {
      std::cerr << "error: no stationary point converged\n";
      return 1;
    }
    report.stationary_points = solved.points;
    report.discarded_restarts = solved.discarded_restarts;

    const StationaryPoint& best = solved.points.front();
    report.gsd = build_canonical_form(state, best.triple);
    report.verdicts = judge_gsd(report.gsd, best.lambda);
    report.residual_schmidt_inequality = schmidt_inequality_residual(
        report.gsd.lambda0, report.gsd.lambda1, report.gsd.lambda2, report.gsd.lambda3);
    report.residual_reconstruction_infidelity = reconstruction_infidelity(state, report.gsd);
    report.residual_stationarity = best.residual;
    fill_literal_form(state, report.config, best.lambda, &report.literal_form);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string rendered =
      opt.format == "text" ? render_report_text(report) : render_report_json(report);
  if (opt.out.empty()) {
    std::cout << rendered;
  } else {
    try {
      write_file_bytes(opt.out, rendered);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }

  if (!report.verdicts.overall) return 1;
  if (report.literal_form.present && !report.literal_form.valid) return 3;
  return 0;
}

int cmd_verify(const VerifyOptions& opt) {
  const double l0 = opt.coeffs[0], l1 = opt.coeffs[1], l2 = opt.coeffs[2], l3 = opt.coeffs[3];
  const cplx l4(opt.coeffs[4], opt.coeffs[5]);

  const double total = l0 * l0 + l1 * l1 + l2 * l2 + l3 * l3 + std::norm(l4);
  const bool normalized = std::abs(total - 1.0) <= kVerifyNormTol;
  std::cout << check_line("normalization", normalized,
                          "sum of squares = " + format_double(total));
  if (!normalized) return 2;

  const bool largest = l0 > 0.0 && l1 >= 0.0 && l2 >= 0.0 && l3 >= 0.0 && l0 >= l1 &&
                       l0 >= l2 && l0 >= l3;
  std::cout << check_line("largest coefficient", largest,
                          "lambda0 = " + format_double(l0));

  const bool bound4 = l0 >= std::abs(l4) - kLambda4Slack;
  std::cout << check_line("lambda0 >= |lambda4|", bound4,
                          "|lambda4| = " + format_double(std::abs(l4)));

  const bool arg_ok = l4.real() >= -kLambda4Slack;
  std::cout << check_line("Arg(lambda4) within [-pi/2, pi/2]", arg_ok,
                          "Arg(lambda4) = " + format_double(std::arg(l4)));

  bool ineq_ok = false;
  if (largest) {
    const double residual = schmidt_inequality_residual(l0, l1, l2, l3);
    ineq_ok = residual >= -kInequalitySlack;
    std::cout << check_line("largest-coefficient inequality", ineq_ok,
                            "residual = " + format_double(residual));
  } else {
    std::cout << "check largest-coefficient inequality: skipped (needs lambda0 largest)\n";
  }

  std::cout << "note: these conditions are necessary, not sufficient; a valid decomposition "
               "additionally needs lambda0 to equal the maximal product overlap\n";
  return (largest && bound4 && arg_ok && ineq_ok) ? 0 : 1;
}

int cmd_wfamily(const WFamilyOptions& opt) {
  if (!(opt.a > 0.0) || !(opt.b > 0.0) || !(opt.c > 0.0)) {
    std::cerr << "error: parameters a, b, c must be strictly positive\n";
    return 2;
  }
  const double norm2 = opt.a * opt.a + opt.b * opt.b + opt.c * opt.c;
  if (std::abs(norm2 - 1.0) > kWFamilyNormTol && !opt.renormalize) {
    std::cerr << "error: a^2+b^2+c^2 = " << format_double(norm2)
              << " is not 1; pass --renormalize to accept\n";
    return 2;
  }
  const double scale = std::sqrt(norm2);
  const WParams p = WParams::make(opt.a / scale, opt.b / scale, opt.c / scale);

  std::cout << "parameters: a=" << format_double(p.a) << " b=" << format_double(p.b)
            << " c=" << format_double(p.c) << "\n";
  std::cout << "bloch: r_a=" << format_double(p.r_a) << " r_b=" << format_double(p.r_b)
            << " r_c=" << format_double(p.r_c) << " 16S^2=" << format_double(p.area16)
            << "\n";

  const auto solutions = w_stationary_solutions(p);
  std::cout << "stationary solutions (" << solutions.size() << "):\n";
  const PureState3Q state = w_state(p);
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const auto& sol = solutions[i];
    std::cout << "  [" << i << "] lambda=" << format_double(sol.lambda)
              << " residual=" << format_double(stationarity_residual(state, sol.triple))
              << "\n";
    for (int k = 0; k < 3; ++k) {
      const QubitVector& u = sol.triple.q[k];
      std::cout << "      u" << k + 1 << "=(" << format_double(u.a0.real()) << " "
                << format_double(u.a0.imag()) << ", " << format_double(u.a1.real()) << " "
                << format_double(u.a1.imag()) << ")\n";
    }
  }

  const WClassification cls = w_classify(p);
  std::cout << "classification: rule=" << cls.rule << " boundary=" << (cls.boundary ? "yes" : "no")
            << " lambda0=" << format_double(cls.lambda0) << "\n";

  const WCoefficients w = w_canonical_coefficients(p);
  std::cout << "coefficients: lambda0=" << format_double(w.lambda0)
            << " lambda1=" << format_double(w.lambda1)
            << " lambda2=" << format_double(w.lambda2)
            << " lambda3=" << format_double(w.lambda3) << " lambda4=("
            << format_double(w.lambda4.real()) << " " << format_double(w.lambda4.imag())
            << ")\n";

  if (p.triangle())
    std::cout << "triangle residual: " << format_double(triangle_residual(p)) << "\n";
  else
    std::cout << "triangle residual: not applicable (no triangle)\n";
  return 0;
}

int cmd_scan(const ScanOptions& opt) {
  SolverConfig config;
  config.rng_seed = opt.seed;

  ScanResult result;
  try {
    result = scan_ensemble(opt.n, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string data;
  for (const ScanRecord& rec : result.records) data += render_scan_line(rec, config) + "\n";
  try {
    write_file_bytes(opt.out, data);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  int violations = 0;
  for (const ScanRecord& rec : result.records)
    if (rec.inequality_residual < -kInequalitySlack) ++violations;

  std::cout << "records written: " << result.records.size() << " (of " << opt.n
            << " states, " << result.failed_seeds.size() << " failed)\n";
  std::cout << "min lambda0^2: " << format_double(result.min_lambda0_sq) << "\n";
  std::cout << "inequality violations: " << violations << "\n";
  const std::array<std::pair<const char*, ScanBin>, 2> corners{
      {{"(0,0,0)", ScanBin{0, 0, 0}}, {"(10,10,10)", ScanBin{10, 10, 10}}}};
  for (const auto& [label, bin] : corners) {
    const auto it = result.max_ratio_by_bin.find(bin);
    std::cout << "max |lambda4|/lambda0 in bin " << label << ": "
              << (it == result.max_ratio_by_bin.end() ? std::string("n/a")
                                                      : format_double(it->second))
              << "\n";
  }
  std::cout << "populated bins: " << result.max_ratio_by_bin.size() << "\n";
  return 0;
}

int cmd_oracle(const OracleOptions& opt) {
  std::string bytes;
  try {
    bytes = read_file_bytes(opt.in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  PureState3Q state;
  try {
    state = parse_state_json(bytes);
  } catch (const StateParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    opt.grid.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  warn_if_contracted_reference(state, nullptr, &std::cout);
  try {
    const double brute = brute_force_overlap(state, opt.grid);
    const MaxOverlap solved = maximal_product_overlap(state, SolverConfig{});
    const double bounds[3] = {reduced_density_bound(state, 1), reduced_density_bound(state, 2),
                              reduced_density_bound(state, 3)};
    const double min_bound = std::min({bounds[0], bounds[1], bounds[2]});

    std::cout << "brute-force lambda0: " << format_double(brute) << "\n";
    std::cout << "solver lambda0:      " << format_double(solved.lambda) << "\n";
    std::cout << "gap:                 " << format_double(std::abs(brute - solved.lambda))
              << "\n";
    std::cout << "lambda0^2:           " << format_double(solved.lambda * solved.lambda)
              << "\n";
    std::cout << "reduced density bounds: q1=" << format_double(bounds[0])
              << " q2=" << format_double(bounds[1]) << " q3=" << format_double(bounds[2])
              << "\n";
    std::cout << "min bound - lambda0^2:  "
              << format_double(min_bound - solved.lambda * solved.lambda) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace gsd3
