#pragma once

#include <Eigen/Core>
#include <array>
#include <stdexcept>

#include "gsd3/core.hpp"
#include "gsd3/solver.hpp"

namespace gsd3 {

// Tolerances for building and judging the five-term canonical form.
inline constexpr double kCrossCoeffRejectTol = 1e-8;
inline constexpr double kCoeffNormTol = 1e-10;
inline constexpr double kPhaseFixZeroTol = 1e-12;
inline constexpr double kDegenerateLambda0 = 1.0 - 1e-12;
inline constexpr double kInequalitySlack = 1e-9;
inline constexpr double kLambda4Slack = 1e-12;
inline constexpr double kGlobalMaxSlack = 1e-6;
inline constexpr double kPositivityTol = 1e-12;

struct CanonicalFormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Five-term decomposition
//   |psi> = l0|u1 u2 u3> + l1|u1 v2 v3> + l2|v1 u2 v3> + l3|v1 v2 u3> + l4|v1 v2 v3>
// with l0..l3 real nonnegative, v_k orthogonal to u_k, Re(l4) >= 0 and
// Im(l4) >= 0 whenever Re(l4) vanishes.
struct CanonicalForm {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  cplx lambda4{0.0, 0.0};
  ProductTriple basis_u;
  ProductTriple basis_v;
  // Largest magnitude among the three coefficients that must vanish at a
  // stationary point (|v1 u2 u3>, |u1 v2 u3>, |u1 u2 v3>).
  double cross_residual = 0.0;
};

// Builds the canonical form at a stationary triple. Throws CanonicalFormError
// when a cross coefficient exceeds kCrossCoeffRejectTol (the triple is not
// stationary) or when the extracted coefficients fail to carry the full norm.
CanonicalForm build_canonical_form(const PureState3Q& state, const ProductTriple& triple);

PureState3Q reconstruct_state(const CanonicalForm& cf);

// 1 - fidelity between the state and the form rebuilt from its coefficients.
double reconstruction_infidelity(const PureState3Q& state, const CanonicalForm& cf);

// lambda0^2 - lambda1^2 - lambda2^2 - lambda3^2 - 2 lambda1 lambda2 lambda3 / lambda0.
// Nonnegative iff the largest-coefficient inequality holds. Throws
// std::domain_error when lambda0 <= 0.
double schmidt_inequality_residual(double lambda0, double lambda1, double lambda2,
                                   double lambda3);

using SecondVariationMatrix = Eigen::Matrix3d;

//      ( l0  -l3  -l2 )
//  A = (-l3   l0  -l1 )
//      (-l2  -l1   l0 )
SecondVariationMatrix second_variation_matrix(const CanonicalForm& cf);

// Eigenvalues of the second-variation matrix, ascending.
std::array<double, 3> second_variation_eigenvalues(const CanonicalForm& cf);

// Necessary conditions for A to be positive semidefinite:
// tr(A) >= 0, tr(A)^2 - tr(A^2) >= 0, det(A) >= 0, each within kPositivityTol.
bool positivity_verdict(const SecondVariationMatrix& a);

// Second variation of the overlap magnitude along tangent directions
// du_k = d_k v_k:
//   -l0^2 (|d1|^2+|d2|^2+|d3|^2)
//   + 2 l0 Re[ l3 conj(d1)conj(d2) + l2 conj(d1)conj(d3) + l1 conj(d2)conj(d3) ].
double tangent_hessian(const PureState3Q& state, const CanonicalForm& cf, cplx d1, cplx d2,
                       cplx d3);

struct GsdVerdicts {
  bool inequality_ok = false;
  bool lambda4_bound_ok = false;
  bool global_max_ok = false;
  bool overall = false;
};

// Judges a canonical form against a known maximal product overlap.
GsdVerdicts judge_gsd(const CanonicalForm& cf, double max_overlap_lambda);

// Same, running the multistart solver internally to obtain the maximum.
GsdVerdicts is_gsd(const PureState3Q& state, const CanonicalForm& cf,
                   const SolverConfig& config);

}  // namespace gsd3
