#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gsd3/core.hpp"

namespace gsd3 {

// Stationary points with overlap at or below this are dropped: they are
// fixed points of the stationarity equations but carry no decomposition.
inline constexpr double kLambdaFloor = 1e-9;

// Orbit-aware deduplication. Symmetric states have continuous families of
// equivalent maximizers; samples on such an orbit share the overlap value to
// near machine precision while their per-qubit fidelity stays above this
// floor for neighboring samples, so transitive chaining collapses the orbit.
inline constexpr double kOrbitLambdaTol = 1e-9;
inline constexpr double kOrbitFidelityFloor = 0.80;

struct SolverConfig {
  double tol_convergence = 1e-12;  // overlap increment per sweep
  double tol_match = 1e-8;         // residual acceptance and dedup fidelity gap
  int max_sweeps = 10000;
  int n_restarts = 64;
  std::uint64_t rng_seed = 0;

  void validate() const;  // throws std::invalid_argument
};

enum class StationaryKind { candidate_max, not_max, undetermined };

const char* to_string(StationaryKind kind) noexcept;

struct StationaryPoint {
  ProductTriple triple;
  double lambda = 0.0;    // |<u1 u2 u3|psi>| at the point
  double residual = 0.0;  // stationarity residual
  std::array<double, 3> a_eigenvalues{};  // second-variation spectrum, ascending
  StationaryKind kind = StationaryKind::undetermined;
};

struct SolveResult {
  // Sorted by lambda descending, ties broken lexicographically on the
  // nanoscale-rounded triple components.
  std::vector<StationaryPoint> points;
  int discarded_restarts = 0;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One cyclic update pass: u1 <- normalize(<u2 u3|psi>), then u2 and u3 with
// the freshly updated vectors. Returns |overlap| after the pass, which never
// decreases. Throws ZeroContractionError on a degenerate start; the caller
// re-seeds that qubit.
double power_sweep(const PureState3Q& state, ProductTriple& triple);

// Multistart search for stationary points of the product overlap. Sweeps
// handle the attracting points; saddle-type points repel monotone sweeps, so
// every restart additionally runs a Newton correction on the tangent
// residual from its raw seed, and the eight computational-basis triples are
// offered as extra seeds. Deterministic for a fixed config on one platform,
// independent of worker count.
SolveResult find_stationary_points(const PureState3Q& state, const SolverConfig& config);

struct MaxOverlap {
  double lambda = 0.0;
  ProductTriple triple;
};

// Largest stationary overlap and its triple. Throws SolverError when no
// restart converges.
MaxOverlap maximal_product_overlap(const PureState3Q& state, const SolverConfig& config);

}  // namespace gsd3
