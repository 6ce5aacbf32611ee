#include "gsd3/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gsd3/canonical.hpp"
#include "gsd3/parallel.hpp"

namespace gsd3 {

namespace {

constexpr double kSimpleFamilySlack = 1e-12;
constexpr double kRefineBreakTol = 1e-15;

QubitVector bloch_vector(double theta, double phi) {
  return QubitVector{cplx(std::cos(theta), 0.0), std::polar(std::sin(theta), phi)};
}

struct GridBest {
  double value2 = -1.0;
  int t2 = 0, p2 = 0, t3 = 0, p3 = 0;
};

}  // namespace

void GridSpec::validate() const {
  if (n_theta < 2 || n_phi < 2 || refine_iters < 2)
    throw std::invalid_argument("grid parameters must all be at least 2");
}

PureState3Q named_state(const std::string& name) {
  std::array<cplx, 8> amp{};
  if (name == "ghz") {
    amp[0] = amp[7] = 1.0 / std::sqrt(2.0);
  } else if (name == "w") {
    amp[4] = amp[2] = amp[1] = 1.0 / std::sqrt(3.0);
  } else if (name == "psi_contr") {
    const double s = 1.0 / std::sqrt(11.0);
    amp[0] = 2.0 * s;
    amp[3] = s;
    amp[5] = s;
    amp[6] = s;
    amp[7] = 2.0 * s;
  } else {
    throw std::invalid_argument("unknown named state: " + name);
  }
  return PureState3Q::from_amplitudes(amp);
}

double brute_force_overlap(const PureState3Q& state, const GridSpec& grid) {
  grid.validate();
  const double dtheta = (std::numbers::pi / 2.0) / (grid.n_theta - 1);
  const double dphi = (2.0 * std::numbers::pi) / grid.n_phi;

  // One task per qubit-3 cell; qubit 3 is contracted once per task, qubit 1
  // is eliminated in closed form, so each inner cell costs a handful of
  // multiplications.
  const std::size_t tasks = static_cast<std::size_t>(grid.n_theta) * grid.n_phi;
  std::vector<GridBest> slot(tasks);
  parallel_for(tasks, [&](std::size_t task) {
    const int t3 = static_cast<int>(task) / grid.n_phi;
    const int p3 = static_cast<int>(task) % grid.n_phi;
    const QubitVector u3 = bloch_vector(t3 * dtheta, p3 * dphi);
    const std::array<cplx, 4> rest = contract_single(state, 3, u3);
    GridBest best;
    for (int t2 = 0; t2 < grid.n_theta; ++t2)
      for (int p2 = 0; p2 < grid.n_phi; ++p2) {
        const QubitVector u2 = bloch_vector(t2 * dtheta, p2 * dphi);
        const cplx c0 = std::conj(u2.a0) * rest[0] + std::conj(u2.a1) * rest[1];
        const cplx c1 = std::conj(u2.a0) * rest[2] + std::conj(u2.a1) * rest[3];
        const double value2 = std::norm(c0) + std::norm(c1);
        if (value2 > best.value2) best = GridBest{value2, t2, p2, t3, p3};
      }
    slot[task] = best;
  });

  GridBest best;
  for (const GridBest& s : slot)
    if (s.value2 > best.value2) best = s;

  ProductTriple triple;
  triple.q[1] = bloch_vector(best.t2 * dtheta, best.p2 * dphi);
  triple.q[2] = bloch_vector(best.t3 * dtheta, best.p3 * dphi);
  triple.q[0] = contract_double(state, 2, 3, triple.q[1], triple.q[2]).normalized();

  double value = std::sqrt(std::max(best.value2, 0.0));
  for (int it = 0; it < grid.refine_iters; ++it) {
    double next = 0.0;
    try {
      next = power_sweep(state, triple);
    } catch (const ZeroContractionError&) {
      break;
    }
    const bool settled = std::abs(next - value) < kRefineBreakTol;
    value = std::max(value, next);
    if (settled) break;
  }
  return value;
}

double reduced_density_bound(const PureState3Q& state, int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("qubit index must be 1, 2 or 3");
  cplx rho00 = 0.0, rho01 = 0.0, rho11 = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) {
        int idx[3] = {i, j, l};
        const cplx a = state.at(i, j, l);
        for (int other = 0; other < 2; ++other) {
          int jdx[3] = {idx[0], idx[1], idx[2]};
          jdx[k - 1] = other;
          const cplx b = state.at(jdx[0], jdx[1], jdx[2]);
          const cplx term = a * std::conj(b);
          if (idx[k - 1] == 0 && other == 0) rho00 += term;
          if (idx[k - 1] == 0 && other == 1) rho01 += term;
          if (idx[k - 1] == 1 && other == 1) rho11 += term;
        }
      }
  const double half_trace = 0.5 * (rho00.real() + rho11.real());
  const double half_gap = 0.5 * (rho00.real() - rho11.real());
  return half_trace + std::sqrt(half_gap * half_gap + std::norm(rho01));
}

PureState3Q psi_simple(double lambda0, double lambda1, double lambda4_abs) {
  if (lambda0 < 0.0 || lambda1 < 0.0 || lambda4_abs < 0.0)
    throw std::invalid_argument("coefficients must be nonnegative");
  const double total =
      lambda0 * lambda0 + lambda1 * lambda1 + lambda4_abs * lambda4_abs;
  if (std::abs(total - 1.0) > kStateNormTol)
    throw std::invalid_argument("coefficients must have squares summing to 1");
  std::array<cplx, 8> amp{};
  amp[flat_index(0, 0, 0)] = lambda0;
  amp[flat_index(0, 1, 1)] = lambda1;
  amp[flat_index(1, 1, 1)] = lambda4_abs;
  return PureState3Q::from_amplitudes(amp);
}

SimpleFamilyCheck simple_family_check(double lambda0, double lambda1, double lambda4_abs) {
  psi_simple(lambda0, lambda1, lambda4_abs);  // validates the inputs
  SimpleFamilyCheck check;
  check.competing_lambda = std::hypot(lambda1, lambda4_abs);
  check.valid = lambda0 >= check.competing_lambda - kSimpleFamilySlack;
  return check;
}

PureState3Q haar_random_state(std::uint64_t seed) {
  std::mt19937_64 eng(splitmix64(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<cplx, 8> amp{};
  for (auto& a : amp) a = cplx(gauss(eng), gauss(eng));
  return PureState3Q::from_amplitudes(amp);
}

ScanBin scan_bin(const ScanRecord& record) {
  ScanBin bin{};
  const double ratios[3] = {record.lambda1 / record.lambda0,
                            record.lambda2 / record.lambda0,
                            record.lambda3 / record.lambda0};
  for (int i = 0; i < 3; ++i)
    bin[i] = std::clamp(static_cast<int>(ratios[i] / 0.05), 0, 19);
  return bin;
}

ScanResult scan_ensemble(int n, const SolverConfig& config) {
  if (n < 1) throw std::invalid_argument("ensemble size must be at least 1");
  config.validate();

  struct Slot {
    ScanRecord record;
    bool ok = false;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(n));
  parallel_for(slots.size(), [&](std::size_t i) {
    const std::uint64_t seed = config.rng_seed + i;
    Slot& slot = slots[i];
    slot.record.state_seed = seed;
    try {
      const PureState3Q state = haar_random_state(seed);
      const MaxOverlap best = maximal_product_overlap(state, config);
      const CanonicalForm cf = build_canonical_form(state, best.triple);
      slot.record.lambda0 = cf.lambda0;
      slot.record.lambda1 = cf.lambda1;
      slot.record.lambda2 = cf.lambda2;
      slot.record.lambda3 = cf.lambda3;
      slot.record.lambda4_abs = std::abs(cf.lambda4);
      slot.record.lambda4_arg = std::arg(cf.lambda4);
      slot.record.inequality_residual = schmidt_inequality_residual(
          cf.lambda0, cf.lambda1, cf.lambda2, cf.lambda3);
      slot.ok = true;
    } catch (const std::exception&) {
      slot.ok = false;
    }
  });

  ScanResult result;
  result.min_lambda0_sq = 1.0;
  for (const Slot& slot : slots) {
    if (!slot.ok) {
      result.failed_seeds.push_back(slot.record.state_seed);
      continue;
    }
    result.records.push_back(slot.record);
    result.min_lambda0_sq =
        std::min(result.min_lambda0_sq, slot.record.lambda0 * slot.record.lambda0);
    const ScanBin bin = scan_bin(slot.record);
    const double ratio = slot.record.lambda4_abs / slot.record.lambda0;
    auto [it, inserted] = result.max_ratio_by_bin.try_emplace(bin, ratio);
    if (!inserted) it->second = std::max(it->second, ratio);
  }
  return result;
}

}  // namespace gsd3
