#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/LU>
#include <cmath>
#include <string>

#include "doctest.h"
#include "gsd3/canonical.hpp"
#include "gsd3/oracle.hpp"
#include "test_util.hpp"

using namespace gsd3;
using namespace gsd3::testutil;

namespace {

CanonicalForm make_form(double l0, double l1, double l2, double l3, cplx l4 = {}) {
  CanonicalForm cf;
  cf.lambda0 = l0;
  cf.lambda1 = l1;
  cf.lambda2 = l2;
  cf.lambda3 = l3;
  cf.lambda4 = l4;
  return cf;
}

double coeff_norm2(const CanonicalForm& cf) {
  return cf.lambda0 * cf.lambda0 + cf.lambda1 * cf.lambda1 + cf.lambda2 * cf.lambda2 +
         cf.lambda3 * cf.lambda3 + std::norm(cf.lambda4);
}

ProductTriple displaced(const CanonicalForm& cf, cplx d1, cplx d2, cplx d3, double t) {
  const std::array<cplx, 3> d = {d1, d2, d3};
  ProductTriple m;
  for (int k = 0; k < 3; ++k) {
    const cplx step = t * d[k];
    m.q[k] = QubitVector{cf.basis_u.q[k].a0 + step * cf.basis_v.q[k].a0,
                         cf.basis_u.q[k].a1 + step * cf.basis_v.q[k].a1}
                 .normalized();
  }
  return m;
}

double overlap_sq_along(const PureState3Q& state, const CanonicalForm& cf, cplx d1, cplx d2,
                        cplx d3, double t) {
  return std::norm(overlap(state, displaced(cf, d1, d2, d3, t)));
}

}  // namespace

TEST_CASE("ghz-type state yields a real positive fifth coefficient from both maxima") {
  const PureState3Q state = named_state("ghz");
  const double inv2 = 1.0 / std::sqrt(2.0);

  const CanonicalForm low = build_canonical_form(state, basis_triple(ket0, ket0, ket0));
  CHECK(low.lambda0 == doctest::Approx(inv2).epsilon(1e-14));
  CHECK(low.lambda1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(low.lambda2 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(low.lambda3 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(low.lambda4.real() == doctest::Approx(inv2).epsilon(1e-14));
  CHECK(low.lambda4.imag() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(low.cross_residual <= 1e-14);

  // From the other maximum the naive fifth coefficient lands on the negative
  // axis; the collective flip of the v vectors restores the convention.
  const CanonicalForm high = build_canonical_form(state, basis_triple(ket1, ket1, ket1));
  CHECK(high.lambda0 == doctest::Approx(inv2).epsilon(1e-14));
  CHECK(high.lambda4.real() == doctest::Approx(inv2).epsilon(1e-14));
  CHECK(high.lambda4.imag() == doctest::Approx(0.0).epsilon(1e-14));
  for (int k = 0; k < 3; ++k) {
    CHECK(high.basis_v.q[k].a0.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(high.basis_v.q[k].a1) <= 1e-14);
  }
}

TEST_CASE("equal-amplitude three-term state maps to the known five-term form") {
  const PureState3Q state = named_state("w");
  const CanonicalForm cf = build_canonical_form(state, w_equal_special_triple());
  CHECK(cf.lambda0 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(cf.lambda1 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(cf.lambda2 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(cf.lambda3 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(cf.lambda4) == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
  CHECK(std::arg(cf.lambda4) == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
  CHECK(coeff_norm2(cf) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("basis maximum of an asymmetric three-term state") {
  const double a = 0.8, b = std::sqrt(0.27), c = 0.3;
  std::array<cplx, 8> raw{};
  raw[flat_index(1, 0, 0)] = a;
  raw[flat_index(0, 1, 0)] = b;
  raw[flat_index(0, 0, 1)] = c;
  const PureState3Q state = make_state(raw);

  const CanonicalForm cf = build_canonical_form(state, basis_triple(ket1, ket0, ket0));
  CHECK(cf.lambda0 == doctest::Approx(a).epsilon(1e-12));
  CHECK(cf.lambda1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cf.lambda2 == doctest::Approx(c).epsilon(1e-12));
  CHECK(cf.lambda3 == doctest::Approx(b).epsilon(1e-12));
  CHECK(std::abs(cf.lambda4) <= 1e-12);
}

TEST_CASE("non-stationary triples are rejected by name") {
  const PureState3Q state = named_state("w");
  try {
    build_canonical_form(state, basis_triple(ket0, ket0, ket0));
    FAIL("expected CanonicalFormError");
  } catch (const CanonicalFormError& e) {
    CHECK(std::string(e.what()).find("<v1 u2 u3|psi>") != std::string::npos);
  }
}

TEST_CASE("product states degenerate to a single term") {
  const std::array<cplx, 8> raw{cplx{1.0, 0.0}};
  const PureState3Q state = make_state(raw);
  const CanonicalForm cf = build_canonical_form(state, basis_triple(ket0, ket0, ket0));
  CHECK(cf.lambda0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cf.lambda1 == 0.0);
  CHECK(cf.lambda2 == 0.0);
  CHECK(cf.lambda3 == 0.0);
  CHECK(cf.lambda4 == cplx{0.0, 0.0});
  CHECK(reconstruction_infidelity(state, cf) <= 1e-14);
}

TEST_CASE("reconstruction reproduces the state") {
  const SolverConfig config;
  for (const char* name : {"ghz", "w", "psi_contr"}) {
    const PureState3Q state = named_state(name);
    const MaxOverlap best = maximal_product_overlap(state, config);
    const CanonicalForm cf = build_canonical_form(state, best.triple);
    CHECK(reconstruction_infidelity(state, cf) <= 1e-10);
    double norm2 = 0.0;
    for (const cplx& amp : reconstruct_state(cf).amp) norm2 += std::norm(amp);
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("inequality residual closed form") {
  CHECK(schmidt_inequality_residual(1.0, 0.0, 0.0, 0.0) == doctest::Approx(1.0));
  CHECK(schmidt_inequality_residual(1.0 / std::sqrt(2.0), 0.0, 0.0, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(schmidt_inequality_residual(2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(schmidt_inequality_residual(0.5, 0.5, 0.3, 0.1) ==
        doctest::Approx(-0.16).epsilon(1e-12));
  CHECK_THROWS_AS(schmidt_inequality_residual(0.0, 0.1, 0.1, 0.1), std::domain_error);
  CHECK_THROWS_AS(schmidt_inequality_residual(-0.5, 0.1, 0.1, 0.1), std::domain_error);
}

TEST_CASE("second variation matrix layout and spectra") {
  const CanonicalForm cf = make_form(0.9, 0.1, 0.2, 0.3);
  const SecondVariationMatrix a = second_variation_matrix(cf);
  CHECK(a(0, 0) == 0.9);
  CHECK(a(1, 1) == 0.9);
  CHECK(a(2, 2) == 0.9);
  CHECK(a(0, 1) == -0.3);
  CHECK(a(1, 0) == -0.3);
  CHECK(a(0, 2) == -0.2);
  CHECK(a(2, 0) == -0.2);
  CHECK(a(1, 2) == -0.1);
  CHECK(a(2, 1) == -0.1);

  const auto w_spec = second_variation_eigenvalues(
      make_form(2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, cplx(0, std::sqrt(2.0) / 3.0)));
  CHECK(w_spec[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w_spec[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w_spec[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("determinant factors through the inequality residual") {
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int round = 0; round < 200; ++round) {
    const double l0 = unit(eng);
    const double l1 = unit(eng) * l0;
    const double l2 = unit(eng) * l0;
    const double l3 = unit(eng) * l0;
    const CanonicalForm cf = make_form(l0, l1, l2, l3);
    const double residual = schmidt_inequality_residual(l0, l1, l2, l3);
    CHECK(second_variation_matrix(cf).determinant() ==
          doctest::Approx(l0 * residual).epsilon(1e-10));
    if (std::abs(residual) > 1e-9)
      CHECK(positivity_verdict(second_variation_matrix(cf)) == (residual > 0.0));
  }
}

TEST_CASE("positivity verdict on fixed matrices") {
  CHECK(positivity_verdict(SecondVariationMatrix::Identity()));
  CHECK(positivity_verdict(SecondVariationMatrix::Zero()));
  SecondVariationMatrix indefinite = SecondVariationMatrix::Identity();
  indefinite(2, 2) = -1.0;
  CHECK(!positivity_verdict(indefinite));
}

TEST_CASE("tangent second variation at the anchors") {
  const PureState3Q ghz = named_state("ghz");
  const CanonicalForm ghz_cf = build_canonical_form(ghz, basis_triple(ket0, ket0, ket0));
  CHECK(tangent_hessian(ghz, ghz_cf, cplx(1, 0), cplx(0, 0), cplx(0, 0)) ==
        doctest::Approx(-0.5).epsilon(1e-12));

  const PureState3Q w = named_state("w");
  const CanonicalForm w_cf = build_canonical_form(w, w_equal_special_triple());
  CHECK(tangent_hessian(w, w_cf, cplx(1, 0), cplx(1, 0), cplx(1, 0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tangent_hessian(w, w_cf, cplx(1, 0), cplx(-1, 0), cplx(0, 0)) ==
        doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("tangent second variation matches a finite difference probe") {
  const SolverConfig config;
  std::mt19937_64 eng(23);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const double h = 1e-4;
  int compared = 0;
  for (std::uint64_t seed : {51ULL, 52ULL, 53ULL}) {
    const PureState3Q state = haar_random_state(seed);
    const CanonicalForm cf =
        build_canonical_form(state, maximal_product_overlap(state, config).triple);
    for (int probe = 0; probe < 20; ++probe) {
      const cplx d1 = std::polar(1.0, angle(eng));
      const cplx d2 = std::polar(1.0, angle(eng));
      const cplx d3 = std::polar(1.0, angle(eng));
      const double th = tangent_hessian(state, cf, d1, d2, d3);
      if (std::abs(th) <= 1e-6) continue;
      const double fd2 = (overlap_sq_along(state, cf, d1, d2, d3, h) -
                          2.0 * overlap_sq_along(state, cf, d1, d2, d3, 0.0) +
                          overlap_sq_along(state, cf, d1, d2, d3, -h)) /
                         (h * h);
      CHECK(th * fd2 > 0.0);
      ++compared;
    }
  }
  CHECK(compared > 30);
}

TEST_CASE("verdicts against a known maximum") {
  const CanonicalForm w_cf =
      make_form(2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, cplx(0, std::sqrt(2.0) / 3.0));
  const GsdVerdicts good = judge_gsd(w_cf, 2.0 / 3.0);
  CHECK(good.inequality_ok);
  CHECK(good.lambda4_bound_ok);
  CHECK(good.global_max_ok);
  CHECK(good.overall);

  const GsdVerdicts stale = judge_gsd(w_cf, 0.8);
  CHECK(stale.inequality_ok);
  CHECK(stale.lambda4_bound_ok);
  CHECK(!stale.global_max_ok);
  CHECK(!stale.overall);

  const GsdVerdicts broken = judge_gsd(make_form(0.5, 0.5, 0.3, 0.1), 0.5);
  CHECK(!broken.inequality_ok);
  CHECK(!broken.overall);

  const GsdVerdicts oversized = judge_gsd(make_form(0.5, 0.0, 0.0, 0.0, cplx(0.9, 0.0)), 0.5);
  CHECK(!oversized.lambda4_bound_ok);
  CHECK(!oversized.overall);
}

TEST_CASE("full judgement distinguishes the maximum from lesser stationary points") {
  const SolverConfig config;
  const double a = 0.8, b = std::sqrt(0.27), c = 0.3;
  std::array<cplx, 8> raw{};
  raw[flat_index(1, 0, 0)] = a;
  raw[flat_index(0, 1, 0)] = b;
  raw[flat_index(0, 0, 1)] = c;
  const PureState3Q state = make_state(raw);

  const CanonicalForm best = build_canonical_form(state, basis_triple(ket1, ket0, ket0));
  CHECK(is_gsd(state, best, config).overall);

  const CanonicalForm lesser = build_canonical_form(state, basis_triple(ket0, ket1, ket0));
  const GsdVerdicts verdicts = is_gsd(state, lesser, config);
  CHECK(!verdicts.global_max_ok);
  CHECK(!verdicts.overall);
}

TEST_CASE("random maxima satisfy the canonical invariants") {
  const SolverConfig config;
  for (std::uint64_t seed = 21; seed <= 30; ++seed) {
    const PureState3Q state = haar_random_state(seed);
    const MaxOverlap best = maximal_product_overlap(state, config);
    const CanonicalForm cf = build_canonical_form(state, best.triple);

    CHECK(cf.lambda0 > 0.0);
    CHECK(cf.lambda1 >= 0.0);
    CHECK(cf.lambda2 >= 0.0);
    CHECK(cf.lambda3 >= 0.0);
    CHECK(cf.lambda0 >= cf.lambda1 - 1e-9);
    CHECK(cf.lambda0 >= cf.lambda2 - 1e-9);
    CHECK(cf.lambda0 >= cf.lambda3 - 1e-9);
    CHECK(cf.lambda0 >= std::abs(cf.lambda4) - 1e-12);
    CHECK(cf.lambda4.real() >= -1e-12);
    if (std::abs(cf.lambda4.real()) <= 1e-12) CHECK(cf.lambda4.imag() >= -1e-12);

    CHECK(coeff_norm2(cf) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cf.cross_residual <= 1e-8);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(cf.basis_u.q[k].inner(cf.basis_v.q[k])) <= 1e-12);

    CHECK(schmidt_inequality_residual(cf.lambda0, cf.lambda1, cf.lambda2, cf.lambda3) >= -1e-9);
    CHECK(second_variation_eigenvalues(cf)[0] >= -1e-9);
    CHECK(reconstruction_infidelity(state, cf) <= 1e-9);
    CHECK(judge_gsd(cf, best.lambda).overall);
  }
}
