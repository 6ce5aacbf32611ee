#include "gsd3/w_family.hpp"

#include <cmath>
#include <stdexcept>

namespace gsd3 {

namespace {

const QubitVector kZero{{1.0, 0.0}, {0.0, 0.0}};
const QubitVector kOne{{0.0, 0.0}, {1.0, 0.0}};

double clamped(double r) { return r > 0.0 ? r : 0.0; }

}  // namespace

WParams WParams::make(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw std::invalid_argument("w-family parameters must be strictly positive");
  const double norm2 = a * a + b * b + c * c;
  if (std::abs(norm2 - 1.0) > kWNormTol)
    throw std::invalid_argument("w-family parameters must satisfy a^2+b^2+c^2 = 1");
  WParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.r_a = b * b + c * c - a * a;
  p.r_b = a * a + c * c - b * b;
  p.r_c = a * a + b * b - c * c;
  p.area16 = 2.0 * a * a * b * b + 2.0 * b * b * c * c + 2.0 * a * a * c * c -
             a * a * a * a - b * b * b * b - c * c * c * c;
  return p;
}

double WParams::area() const { return std::sqrt(clamped(area16)) / 4.0; }

bool WParams::triangle() const {
  return r_a >= -kBoundaryRTol && r_b >= -kBoundaryRTol && r_c >= -kBoundaryRTol;
}

PureState3Q w_state(const WParams& p) {
  std::array<cplx, 8> amp{};
  amp[flat_index(1, 0, 0)] = p.a;
  amp[flat_index(0, 1, 0)] = p.b;
  amp[flat_index(0, 0, 1)] = p.c;
  return PureState3Q::from_amplitudes(amp);
}

std::optional<WStationarySolution> w_special_solution(const WParams& p) {
  if (!p.triangle()) return std::nullopt;
  const double s = p.area();
  if (s <= kDegenerateAreaTol) return std::nullopt;
  if (std::min({p.r_a, p.r_b, p.r_c}) <= kBoundaryRTol) return std::nullopt;

  const double ra = clamped(p.r_a), rb = clamped(p.r_b), rc = clamped(p.r_c);
  const double inv = 1.0 / (4.0 * s);
  WStationarySolution sol;
  sol.triple.q[0] = QubitVector{p.a * std::sqrt(2.0 * ra) * inv, std::sqrt(rb * rc) * inv};
  sol.triple.q[1] = QubitVector{p.b * std::sqrt(2.0 * rb) * inv, std::sqrt(rc * ra) * inv};
  sol.triple.q[2] = QubitVector{p.c * std::sqrt(2.0 * rc) * inv, std::sqrt(ra * rb) * inv};
  sol.lambda = p.a * p.b * p.c / (2.0 * s);
  return sol;
}

std::vector<WStationarySolution> w_stationary_solutions(const WParams& p) {
  std::vector<WStationarySolution> out;
  out.push_back({ProductTriple{{kOne, kZero, kZero}}, p.a});
  out.push_back({ProductTriple{{kZero, kOne, kZero}}, p.b});
  out.push_back({ProductTriple{{kZero, kZero, kOne}}, p.c});
  if (auto special = w_special_solution(p)) out.push_back(*special);
  return out;
}

WClassification w_classify(const WParams& p) {
  WClassification c;
  if (p.r_a < -kBoundaryRTol) {
    c.rule = 1;
    c.lambda0 = p.a;
  } else if (p.r_b < -kBoundaryRTol) {
    c.rule = 2;
    c.lambda0 = p.b;
  } else if (p.r_c < -kBoundaryRTol) {
    c.rule = 3;
    c.lambda0 = p.c;
  } else {
    c.rule = 4;
    c.lambda0 = p.a * p.b * p.c / (2.0 * p.area());
    c.boundary = std::min({p.r_a, p.r_b, p.r_c}) <= kBoundaryRTol;
  }
  return c;
}

WCoefficients w_canonical_coefficients(const WParams& p) {
  const WClassification cls = w_classify(p);
  WCoefficients w;
  w.rule = cls.rule;
  w.lambda0 = cls.lambda0;
  switch (cls.rule) {
    case 1:
      w.lambda2 = p.c;
      w.lambda3 = p.b;
      break;
    case 2:
      w.lambda1 = p.c;
      w.lambda3 = p.a;
      break;
    case 3:
      w.lambda1 = p.b;
      w.lambda2 = p.a;
      break;
    default: {
      // Within the boundary band the interior solution has collapsed onto a
      // basis one, so sub-resolution r values count as exact zeros here.
      const double ra = p.r_a > kBoundaryRTol ? p.r_a : 0.0;
      const double rb = p.r_b > kBoundaryRTol ? p.r_b : 0.0;
      const double rc = p.r_c > kBoundaryRTol ? p.r_c : 0.0;
      const double inv = 1.0 / (4.0 * p.area());
      w.lambda1 = p.a * ra * inv;
      w.lambda2 = p.b * rb * inv;
      w.lambda3 = p.c * rc * inv;
      w.lambda4 = cplx(0.0, std::sqrt(2.0 * ra * rb * rc) * inv);
      break;
    }
  }
  return w;
}

double triangle_residual(const WParams& p) {
  if (!p.triangle())
    throw std::domain_error("triangle_residual requires a, b, c to form a triangle");
  const double abc = p.a * p.b * p.c;
  const double ta = p.a * p.r_a;
  const double tb = p.b * p.r_b;
  const double tc = p.c * p.r_c;
  return 4.0 * abc * abc - ta * ta - tb * tb - tc * tc - p.r_a * p.r_b * p.r_c;
}

}  // namespace gsd3
