#include "gsd3/core.hpp"

#include <cmath>
#include <string>

namespace gsd3 {

double QubitVector::norm() const noexcept { return std::sqrt(std::norm(a0) + std::norm(a1)); }

QubitVector QubitVector::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw std::invalid_argument("cannot normalize a zero qubit vector");
  return {a0 / n, a1 / n};
}

cplx QubitVector::inner(const QubitVector& other) const noexcept {
  return std::conj(a0) * other.a0 + std::conj(a1) * other.a1;
}

double QubitVector::fidelity(const QubitVector& other) const noexcept {
  return std::norm(inner(other));
}

QubitVector QubitVector::scaled(cplx factor) const noexcept { return {a0 * factor, a1 * factor}; }

QubitVector QubitVector::phase_normalized() const {
  const cplx lead = std::abs(a0) >= std::abs(a1) ? a0 : a1;
  const double mag = std::abs(lead);
  if (mag < 1e-300) return *this;
  return scaled(std::conj(lead) / mag);
}

QubitVector orthogonal_complement(const QubitVector& u) {
  return {-std::conj(u.a1), std::conj(u.a0)};
}

ProductTriple ProductTriple::normalized() const {
  return {{q[0].normalized(), q[1].normalized(), q[2].normalized()}};
}

ProductTriple ProductTriple::phase_normalized() const {
  return {{q[0].phase_normalized(), q[1].phase_normalized(), q[2].phase_normalized()}};
}

PureState3Q PureState3Q::from_amplitudes(const std::array<cplx, 8>& raw, double* norm_correction) {
  double n2 = 0.0;
  for (const cplx& a : raw) n2 += std::norm(a);
  const double n = std::sqrt(n2);
  if (n < 1e-150) throw std::invalid_argument("state amplitudes have zero norm");
  if (norm_correction) *norm_correction = std::abs(n - 1.0);
  PureState3Q s;
  for (int i = 0; i < 8; ++i) s.amp[i] = raw[i] / n;
  return s;
}

double state_fidelity(const PureState3Q& a, const PureState3Q& b) noexcept {
  cplx ip{0.0, 0.0};
  for (int i = 0; i < 8; ++i) ip += std::conj(a.amp[i]) * b.amp[i];
  return std::norm(ip);
}

cplx overlap(const PureState3Q& state, const ProductTriple& triple) noexcept {
  cplx acc{0.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    const cplx ci = std::conj(i ? triple.q[0].a1 : triple.q[0].a0);
    for (int j = 0; j < 2; ++j) {
      const cplx cj = std::conj(j ? triple.q[1].a1 : triple.q[1].a0);
      for (int k = 0; k < 2; ++k) {
        const cplx ck = std::conj(k ? triple.q[2].a1 : triple.q[2].a0);
        acc += ci * cj * ck * state.amp[flat_index(i, j, k)];
      }
    }
  }
  return acc;
}

namespace {

cplx component(const QubitVector& u, int s) noexcept { return s ? u.a1 : u.a0; }

}  // namespace

std::array<cplx, 4> contract_single(const PureState3Q& state, int k, const QubitVector& u) {
  if (k < 1 || k > 3) throw std::invalid_argument("qubit index must be 1, 2 or 3");
  std::array<cplx, 4> out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) {
        const int idx[3] = {i, j, l};
        const cplx term = std::conj(component(u, idx[k - 1])) * state.amp[flat_index(i, j, l)];
        // Survivors keep their relative order.
        int rest = 0;
        for (int m = 0; m < 3; ++m)
          if (m != k - 1) rest = 2 * rest + idx[m];
        out[rest] += term;
      }
  return out;
}

QubitVector contract_double(const PureState3Q& state, int j, int k, const QubitVector& uj,
                            const QubitVector& uk) {
  if (j < 1 || j > 3 || k < 1 || k > 3 || j == k)
    throw std::invalid_argument("qubit indices must be distinct values in 1..3");
  const int rem = 6 - j - k;  // 1-based index of the surviving qubit
  QubitVector out{};
  for (int i0 = 0; i0 < 2; ++i0)
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2) {
        const int idx[3] = {i0, i1, i2};
        const cplx term = std::conj(component(uj, idx[j - 1])) *
                          std::conj(component(uk, idx[k - 1])) *
                          state.amp[flat_index(i0, i1, i2)];
        if (idx[rem - 1] == 0)
          out.a0 += term;
        else
          out.a1 += term;
      }
  return out;
}

double stationarity_residual(const PureState3Q& state, const ProductTriple& triple) {
  static constexpr int others[3][2] = {{2, 3}, {1, 3}, {1, 2}};
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const QubitVector c = contract_double(state, others[k][0], others[k][1],
                                          triple.q[others[k][0] - 1], triple.q[others[k][1] - 1]);
    // In two dimensions the off-axis part of c is its component along the
    // orthogonal complement of u_k.
    const double off = std::abs(orthogonal_complement(triple.q[k]).inner(c));
    worst = std::max(worst, off);
  }
  return worst;
}

ZeroContractionError::ZeroContractionError(int qubit_index)
    : std::runtime_error("partial inner product vanished on qubit " +
                         std::to_string(qubit_index)),
      qubit(qubit_index) {}

}  // namespace gsd3
