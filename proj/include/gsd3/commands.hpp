#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "gsd3/oracle.hpp"

namespace gsd3 {

// Exit codes shared by the subcommands:
//   0  success, all verdicts pass
//   1  I/O or solver failure, or the computed decomposition is invalid
//   2  malformed input (file contents or parameter values)
//   3  decomposition succeeded but the literal coefficient labeling of the
//      input is not a valid one; the report carries the corrected form

struct DecomposeOptions {
  std::string in;
  std::string out;  // empty writes the report to stdout
  int restarts = 64;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  std::string format = "json";
};

struct VerifyOptions {
  std::array<double, 6> coeffs{};  // lambda0..3, Re lambda4, Im lambda4
};

struct WFamilyOptions {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool renormalize = false;
};

struct ScanOptions {
  int n = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

struct OracleOptions {
  std::string in;
  GridSpec grid;
};

int cmd_decompose(const DecomposeOptions& opt);
int cmd_verify(const VerifyOptions& opt);
int cmd_wfamily(const WFamilyOptions& opt);
int cmd_scan(const ScanOptions& opt);
int cmd_oracle(const OracleOptions& opt);

}  // namespace gsd3
