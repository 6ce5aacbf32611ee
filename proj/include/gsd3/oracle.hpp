#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsd3/core.hpp"
#include "gsd3/solver.hpp"

namespace gsd3 {

// Exhaustive-search resolution: per-qubit polar and azimuthal grid sizes plus
// the number of local refinement sweeps applied to the best cell.
struct GridSpec {
  int n_theta = 48;
  int n_phi = 48;
  int refine_iters = 40;
  void validate() const;
};

// "ghz", "w" or "psi_contr".
PureState3Q named_state(const std::string& name);

// Grid search over product states u = cos(theta)|0> + e^{i phi} sin(theta)|1>
// on qubits 2 and 3; the optimal qubit-1 vector for a fixed pair is the
// normalized double contraction, so it is eliminated exactly rather than
// gridded. The best cell is polished by power sweeps. The result is a
// certified lower bound on the maximal product overlap.
double brute_force_overlap(const PureState3Q& state, const GridSpec& grid);

// Largest eigenvalue of the reduced density matrix of qubit k (1-based).
// The squared maximal product overlap never exceeds this across any cut.
double reduced_density_bound(const PureState3Q& state, int k);

// The three-term family l0|000> + l1|011> + l4|111> with all entries real
// nonnegative and squares summing to 1.
PureState3Q psi_simple(double lambda0, double lambda1, double lambda4_abs);

struct SimpleFamilyCheck {
  double competing_lambda = 0.0;  // overlap of the competing stationary point
  bool valid = false;             // lambda0 is the maximal product overlap
};

// The family has a second stationary point with overlap sqrt(l1^2 + l4^2);
// the literal coefficient labeling is a valid decomposition iff lambda0
// dominates it.
SimpleFamilyCheck simple_family_check(double lambda0, double lambda1, double lambda4_abs);

// Eight independent standard complex Gaussian amplitudes, normalized.
PureState3Q haar_random_state(std::uint64_t seed);

struct ScanRecord {
  std::uint64_t state_seed = 0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double lambda4_abs = 0.0;
  double lambda4_arg = 0.0;
  double inequality_residual = 0.0;
};

// Per-record ratio bins: floor(lambda_i/lambda0 / 0.05) on each axis,
// clamped to [0, 19].
using ScanBin = std::array<int, 3>;

struct ScanResult {
  std::vector<ScanRecord> records;          // ordered by seed
  std::vector<std::uint64_t> failed_seeds;  // states whose decomposition failed
  double min_lambda0_sq = 0.0;
  std::map<ScanBin, double> max_ratio_by_bin;  // max |lambda4|/lambda0 per bin
};

ScanBin scan_bin(const ScanRecord& record);

// Decomposes n seeded random states (seeds config.rng_seed + i) and collects
// the canonical coefficient tuples. Failures are recorded, not fatal.
ScanResult scan_ensemble(int n, const SolverConfig& config);

}  // namespace gsd3
