#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace gsd3 {

using cplx = std::complex<double>;

// Shared numeric contract. These values are documented in the README and
// pinned by the test suite; changing them changes observable behavior.
inline constexpr double kStateNormTol = 1e-12;        // construction-time drift allowance
inline constexpr double kRenormWarnTol = 1e-9;        // warn when a load correction exceeds this
inline constexpr double kZeroContractionTol = 1e-14;  // degenerate partial inner product

// Big-endian qubit order: flat = 4*i + 2*j + k for basis ket |ijk>.
constexpr int flat_index(int i, int j, int k) noexcept { return 4 * i + 2 * j + k; }

// splitmix64; used to derive independent substream seeds deterministically.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct QubitVector {
  cplx a0{0.0, 0.0};
  cplx a1{0.0, 0.0};

  double norm() const noexcept;
  QubitVector normalized() const;
  // <this|other>, antilinear in *this.
  cplx inner(const QubitVector& other) const noexcept;
  // |<this|other>|^2
  double fidelity(const QubitVector& other) const noexcept;
  QubitVector scaled(cplx factor) const noexcept;
  // Multiplies by the unit phase that makes the largest-magnitude component
  // real and nonnegative. Gauge fix for reporting; physically a no-op.
  QubitVector phase_normalized() const;
};

// v with <v|u> = 0, unit norm, fixed convention v = (-conj(a1), conj(a0)).
QubitVector orthogonal_complement(const QubitVector& u);

struct ProductTriple {
  std::array<QubitVector, 3> q{};

  ProductTriple normalized() const;
  ProductTriple phase_normalized() const;
};

struct PureState3Q {
  std::array<cplx, 8> amp{};

  // Normalizes raw amplitudes. norm_correction, when given, receives the
  // absolute deviation of the raw norm from 1. Throws std::invalid_argument
  // on an (effectively) zero vector.
  static PureState3Q from_amplitudes(const std::array<cplx, 8>& raw,
                                     double* norm_correction = nullptr);

  cplx at(int i, int j, int k) const noexcept { return amp[flat_index(i, j, k)]; }
};

// |<a|b>|^2 for unit state vectors.
double state_fidelity(const PureState3Q& a, const PureState3Q& b) noexcept;

// <u1 u2 u3|psi>, complex, before taking the absolute value.
cplx overlap(const PureState3Q& state, const ProductTriple& triple) noexcept;

// <u|_k psi projected out of qubit k (1-based); survivors keep their order,
// result index is 2*j + k over the remaining qubits.
std::array<cplx, 4> contract_single(const PureState3Q& state, int k, const QubitVector& u);

// <u_j u_k|psi>: unnormalized single-qubit vector on the remaining qubit.
// j, k are distinct 1-based indices.
QubitVector contract_double(const PureState3Q& state, int j, int k, const QubitVector& uj,
                            const QubitVector& uk);

// max_k || c_k - u_k <u_k|c_k> || where c_k is the double contraction leaving
// qubit k; zero exactly at stationary points of the product overlap.
double stationarity_residual(const PureState3Q& state, const ProductTriple& triple);

struct ZeroContractionError : std::runtime_error {
  explicit ZeroContractionError(int qubit_index);
  int qubit;  // 1-based qubit whose partial inner product vanished
};

}  // namespace gsd3
