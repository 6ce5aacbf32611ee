#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gsd3/canonical.hpp"
#include "gsd3/core.hpp"
#include "gsd3/oracle.hpp"
#include "gsd3/solver.hpp"

namespace gsd3 {

// FNV-1a over the raw bytes, rendered as "fnv1a64:<16 hex digits>".
std::string digest_bytes(const std::string& bytes);

// Scientific notation with 17 significant digits, enough to round-trip a
// double exactly.
std::string format_double(double x);

struct StateParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::string& bytes);

// State files hold {"amplitudes": [[re, im] x 8]} ordered by flat index.
// Throws StateParseError naming the offending field. The applied
// normalization correction is reported through norm_correction when given.
PureState3Q parse_state_json(const std::string& bytes, double* norm_correction = nullptr);
std::string render_state_json(const PureState3Q& state);

// The literal five-term labeling read directly off the computational basis,
// present when (|0>,|0>,|0>) is itself a stationary triple.
struct LiteralFormInfo {
  bool present = false;
  bool valid = false;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  cplx lambda4{0.0, 0.0};
  double stationarity_residual = 0.0;
  double schmidt_inequality = 0.0;
  GsdVerdicts verdicts;
};

struct DecompositionReport {
  std::string input_digest;
  SolverConfig config;
  std::vector<StationaryPoint> stationary_points;
  CanonicalForm gsd;
  GsdVerdicts verdicts;
  LiteralFormInfo literal_form;
  double residual_schmidt_inequality = 0.0;
  double residual_reconstruction_infidelity = 0.0;
  double residual_stationarity = 0.0;
  std::vector<std::string> warnings;
  int discarded_restarts = 0;
};

std::string render_report_json(const DecompositionReport& report);
std::string render_report_text(const DecompositionReport& report);

// One compact JSON object per line: the record fields followed by the run
// config echo, in a fixed column order.
std::string render_scan_line(const ScanRecord& record, const SolverConfig& config);

}  // namespace gsd3
