#pragma once

#include <optional>
#include <vector>

#include "gsd3/core.hpp"

namespace gsd3 {

inline constexpr double kWNormTol = 1e-12;
inline constexpr double kBoundaryRTol = 1e-12;
inline constexpr double kDegenerateAreaTol = 1e-14;

// Parameters of the three-term family a|100> + b|010> + c|001> together with
// the derived quantities driving its closed-form solutions:
//   r_a = b^2 + c^2 - a^2 (cyclic), 16 S^2 = Heron's formula for sides a,b,c.
struct WParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double r_a = 0.0;
  double r_b = 0.0;
  double r_c = 0.0;
  double area16 = 0.0;

  // Requires a,b,c > 0 with a^2+b^2+c^2 = 1 within kWNormTol.
  static WParams make(double a, double b, double c);

  double area() const;
  bool triangle() const;
};

PureState3Q w_state(const WParams& p);

struct WStationarySolution {
  ProductTriple triple;
  double lambda = 0.0;
};

// The closed-form interior stationary point; absent when a,b,c form no
// triangle or the triangle is degenerate. On the boundary (some r_x = 0) it
// coincides with one of the basis solutions and is likewise omitted.
std::optional<WStationarySolution> w_special_solution(const WParams& p);

// All closed-form stationary points: the three basis solutions with
// lambda = a, b, c plus the interior one when distinct.
std::vector<WStationarySolution> w_stationary_solutions(const WParams& p);

struct WClassification {
  int rule = 0;          // 1, 2, 3: some r_x < 0, max is the basis solution;
                         // 4: triangle region, max is the interior solution
  double lambda0 = 0.0;  // maximal product overlap
  bool boundary = false; // some |r_x| <= kBoundaryRTol (rule 4 limit)
};

WClassification w_classify(const WParams& p);

// Canonical-form coefficients of the maximal solution for the applicable rule.
struct WCoefficients {
  int rule = 0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  cplx lambda4{0.0, 0.0};
};

WCoefficients w_canonical_coefficients(const WParams& p);

// 4(abc)^2 - (a r_a)^2 - (b r_b)^2 - (c r_c)^2 - r_a r_b r_c. Defined on the
// triangle region; throws std::domain_error outside it. Equals
// 16 S^2 times the inequality residual of the rule-4 coefficients.
double triangle_residual(const WParams& p);

}  // namespace gsd3
