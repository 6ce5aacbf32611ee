#include "gsd3/canonical.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace gsd3 {

namespace {

cplx triple_coeff(const PureState3Q& state, const QubitVector& x1, const QubitVector& x2,
                  const QubitVector& x3) {
  return x1.inner(contract_double(state, 2, 3, x2, x3));
}

cplx component(const QubitVector& v, int i) { return i == 0 ? v.a0 : v.a1; }

// Phase knobs alpha_k rotating v_k -> e^{i alpha_k} v_k, chosen so that the
// coefficients of |u1 v2 v3>, |v1 u2 v3>, |v1 v2 u3> become real nonnegative.
// The coefficient k acquires e^{-i (sum of the other two alphas)}, so with
// phases phi_k = arg(c_k) the fully determined case solves
//   alpha2 + alpha3 = phi1,  alpha1 + alpha3 = phi2,  alpha1 + alpha2 = phi3.
// A vanishing coefficient drops its equation and the freed knob is set to 0.
std::array<double, 3> solve_phase_knobs(const std::array<cplx, 3>& c) {
  const bool z1 = std::abs(c[0]) < kPhaseFixZeroTol;
  const bool z2 = std::abs(c[1]) < kPhaseFixZeroTol;
  const bool z3 = std::abs(c[2]) < kPhaseFixZeroTol;
  const double p1 = z1 ? 0.0 : std::arg(c[0]);
  const double p2 = z2 ? 0.0 : std::arg(c[1]);
  const double p3 = z3 ? 0.0 : std::arg(c[2]);

  if (!z1 && !z2 && !z3)
    return {(-p1 + p2 + p3) / 2.0, (p1 - p2 + p3) / 2.0, (p1 + p2 - p3) / 2.0};
  if (z1 && !z2 && !z3) return {0.0, p3, p2};
  if (!z1 && z2 && !z3) return {p3, 0.0, p1};
  if (!z1 && !z2 && z3) return {p2, p1, 0.0};
  if (z1 && z2 && !z3) return {p3, 0.0, 0.0};
  if (z1 && !z2 && z3) return {p2, 0.0, 0.0};
  if (!z1 && z2 && z3) return {0.0, p1, 0.0};
  return {0.0, 0.0, 0.0};
}

}  // namespace

CanonicalForm build_canonical_form(const PureState3Q& state, const ProductTriple& triple) {
  CanonicalForm cf;
  cf.basis_u = triple.normalized();

  // Rotate u1 so the overlap coefficient itself becomes real nonnegative.
  const cplx omega = overlap(state, cf.basis_u);
  cf.lambda0 = std::abs(omega);
  if (cf.lambda0 > 0.0) {
    const cplx rot = std::polar(1.0, std::arg(omega));
    cf.basis_u.q[0] = cf.basis_u.q[0].scaled(rot);
  }

  for (int k = 0; k < 3; ++k) cf.basis_v.q[k] = orthogonal_complement(cf.basis_u.q[k]);
  const QubitVector& u1 = cf.basis_u.q[0];
  const QubitVector& u2 = cf.basis_u.q[1];
  const QubitVector& u3 = cf.basis_u.q[2];
  QubitVector& v1 = cf.basis_v.q[0];
  QubitVector& v2 = cf.basis_v.q[1];
  QubitVector& v3 = cf.basis_v.q[2];

  const std::array<cplx, 3> cross = {triple_coeff(state, v1, u2, u3),
                                     triple_coeff(state, u1, v2, u3),
                                     triple_coeff(state, u1, u2, v3)};
  static const char* const cross_names[3] = {"<v1 u2 u3|psi>", "<u1 v2 u3|psi>",
                                             "<u1 u2 v3|psi>"};
  for (int k = 0; k < 3; ++k) {
    cf.cross_residual = std::max(cf.cross_residual, std::abs(cross[k]));
    if (std::abs(cross[k]) > kCrossCoeffRejectTol) {
      std::ostringstream msg;
      msg << "triple is not a stationary point: " << cross_names[k] << " has magnitude "
          << std::abs(cross[k]);
      throw CanonicalFormError(msg.str());
    }
  }

  if (cf.lambda0 >= kDegenerateLambda0) {
    // Product state: the decomposition is the single term l0|u1 u2 u3>.
    return cf;
  }

  const std::array<cplx, 3> c = {triple_coeff(state, u1, v2, v3),
                                 triple_coeff(state, v1, u2, v3),
                                 triple_coeff(state, v1, v2, u3)};
  const cplx c4 = triple_coeff(state, v1, v2, v3);

  const std::array<double, 3> alpha = solve_phase_knobs(c);
  for (int k = 0; k < 3; ++k)
    cf.basis_v.q[k] = cf.basis_v.q[k].scaled(std::polar(1.0, alpha[k]));
  cf.lambda1 = std::abs(c[0]) < kPhaseFixZeroTol ? 0.0 : std::abs(c[0]);
  cf.lambda2 = std::abs(c[1]) < kPhaseFixZeroTol ? 0.0 : std::abs(c[1]);
  cf.lambda3 = std::abs(c[2]) < kPhaseFixZeroTol ? 0.0 : std::abs(c[2]);
  cf.lambda4 = c4 * std::polar(1.0, -(alpha[0] + alpha[1] + alpha[2]));

  // Collective sign flip of all v_k leaves l1..l3 invariant and negates l4;
  // use it to enforce Re(l4) >= 0, with Im(l4) >= 0 breaking the tie.
  const bool re_negative = cf.lambda4.real() < -kPhaseFixZeroTol;
  const bool re_zero = std::abs(cf.lambda4.real()) <= kPhaseFixZeroTol;
  if (re_negative || (re_zero && cf.lambda4.imag() < 0.0)) {
    for (auto& v : cf.basis_v.q) v = v.scaled(cplx(-1.0, 0.0));
    cf.lambda4 = -cf.lambda4;
  }

  const double total = cf.lambda0 * cf.lambda0 + cf.lambda1 * cf.lambda1 +
                       cf.lambda2 * cf.lambda2 + cf.lambda3 * cf.lambda3 +
                       std::norm(cf.lambda4);
  if (std::abs(total - 1.0) > kCoeffNormTol) {
    std::ostringstream msg;
    msg << "canonical coefficients carry norm " << total << " instead of 1";
    throw CanonicalFormError(msg.str());
  }
  return cf;
}

PureState3Q reconstruct_state(const CanonicalForm& cf) {
  const QubitVector& u1 = cf.basis_u.q[0];
  const QubitVector& u2 = cf.basis_u.q[1];
  const QubitVector& u3 = cf.basis_u.q[2];
  const QubitVector& v1 = cf.basis_v.q[0];
  const QubitVector& v2 = cf.basis_v.q[1];
  const QubitVector& v3 = cf.basis_v.q[2];
  std::array<cplx, 8> amp{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        amp[flat_index(i, j, k)] =
            cf.lambda0 * component(u1, i) * component(u2, j) * component(u3, k) +
            cf.lambda1 * component(u1, i) * component(v2, j) * component(v3, k) +
            cf.lambda2 * component(v1, i) * component(u2, j) * component(v3, k) +
            cf.lambda3 * component(v1, i) * component(v2, j) * component(u3, k) +
            cf.lambda4 * component(v1, i) * component(v2, j) * component(v3, k);
  return PureState3Q::from_amplitudes(amp);
}

double reconstruction_infidelity(const PureState3Q& state, const CanonicalForm& cf) {
  return 1.0 - state_fidelity(state, reconstruct_state(cf));
}

double schmidt_inequality_residual(double lambda0, double lambda1, double lambda2,
                                   double lambda3) {
  if (!(lambda0 > 0.0))
    throw std::domain_error("schmidt_inequality_residual requires lambda0 > 0");
  return lambda0 * lambda0 - lambda1 * lambda1 - lambda2 * lambda2 - lambda3 * lambda3 -
         2.0 * lambda1 * lambda2 * lambda3 / lambda0;
}

SecondVariationMatrix second_variation_matrix(const CanonicalForm& cf) {
  SecondVariationMatrix a;
  a << cf.lambda0, -cf.lambda3, -cf.lambda2,  //
      -cf.lambda3, cf.lambda0, -cf.lambda1,   //
      -cf.lambda2, -cf.lambda1, cf.lambda0;
  return a;
}

std::array<double, 3> second_variation_eigenvalues(const CanonicalForm& cf) {
  Eigen::SelfAdjointEigenSolver<SecondVariationMatrix> solver(second_variation_matrix(cf));
  if (solver.info() != Eigen::Success)
    throw CanonicalFormError("eigenvalue computation failed");
  const auto& ev = solver.eigenvalues();
  return {ev[0], ev[1], ev[2]};
}

bool positivity_verdict(const SecondVariationMatrix& a) {
  const double tr = a.trace();
  const double tr2_minus = tr * tr - (a * a).trace();
  const double det = a.determinant();
  return tr >= -kPositivityTol && tr2_minus >= -kPositivityTol && det >= -kPositivityTol;
}

double tangent_hessian(const PureState3Q&, const CanonicalForm& cf, cplx d1, cplx d2,
                       cplx d3) {
  const double l0 = cf.lambda0;
  const double quad = std::norm(d1) + std::norm(d2) + std::norm(d3);
  const cplx mix = cf.lambda3 * std::conj(d1) * std::conj(d2) +
                   cf.lambda2 * std::conj(d1) * std::conj(d3) +
                   cf.lambda1 * std::conj(d2) * std::conj(d3);
  return -l0 * l0 * quad + 2.0 * l0 * mix.real();
}

GsdVerdicts judge_gsd(const CanonicalForm& cf, double max_overlap_lambda) {
  GsdVerdicts v;
  v.inequality_ok =
      cf.lambda0 > 0.0 &&
      schmidt_inequality_residual(cf.lambda0, cf.lambda1, cf.lambda2, cf.lambda3) >=
          -kInequalitySlack;
  v.lambda4_bound_ok = cf.lambda0 >= std::abs(cf.lambda4) - kLambda4Slack;
  v.global_max_ok = std::abs(cf.lambda0 - max_overlap_lambda) <= kGlobalMaxSlack;
  v.overall = v.inequality_ok && v.lambda4_bound_ok && v.global_max_ok;
  return v;
}

GsdVerdicts is_gsd(const PureState3Q& state, const CanonicalForm& cf,
                   const SolverConfig& config) {
  return judge_gsd(cf, maximal_product_overlap(state, config).lambda);
}

}  // namespace gsd3
