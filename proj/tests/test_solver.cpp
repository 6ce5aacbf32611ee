#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "gsd3/oracle.hpp"
#include "gsd3/solver.hpp"
#include "test_util.hpp"

using namespace gsd3;
using namespace gsd3::testutil;

namespace {

PureState3Q ghz() { return named_state("ghz"); }
PureState3Q w_equal() { return named_state("w"); }

bool close_to_basis(const QubitVector& q, const QubitVector& basis, double tol) {
  return q.fidelity(basis) > 1.0 - tol;
}

}  // namespace

TEST_CASE("config validation") {
  SolverConfig good;
  CHECK_NOTHROW(good.validate());

  SolverConfig bad = good;
  bad.tol_convergence = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = good;
  bad.tol_match = -1e-8;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = good;
  bad.max_sweeps = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = good;
  bad.n_restarts = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK(std::string(to_string(StationaryKind::candidate_max)) == "candidate_max");
  CHECK(std::string(to_string(StationaryKind::not_max)) == "not_max");
  CHECK(std::string(to_string(StationaryKind::undetermined)) == "undetermined");
}

TEST_CASE("power sweep is monotone") {
  std::mt19937_64 eng(11);
  for (int round = 0; round < 5; ++round) {
    const PureState3Q state = haar_random_state(100 + round);
    ProductTriple triple = random_triple(eng);
    double prev = 0.0;
    for (int sweep = 0; sweep < 200; ++sweep) {
      const double lam = power_sweep(state, triple);
      CHECK(lam >= prev - 1e-12);
      CHECK(lam == doctest::Approx(std::abs(overlap(state, triple))).epsilon(1e-12));
      prev = lam;
    }
  }
}

TEST_CASE("power sweep converges in one pass on a product state") {
  const std::array<cplx, 8> raw{cplx{1.0, 0.0}};
  const PureState3Q state = make_state(raw);
  const double inv = 1.0 / std::sqrt(2.0);
  const QubitVector plus{{inv, 0.0}, {inv, 0.0}};
  ProductTriple triple = basis_triple(plus, plus, plus);
  const double lam = power_sweep(state, triple);
  CHECK(lam == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 0; k < 3; ++k) CHECK(close_to_basis(triple.q[k], ket0, 1e-14));
}

TEST_CASE("power sweep fixed points") {
  ProductTriple ghz_triple = basis_triple(ket0, ket0, ket0);
  const double lam_ghz = power_sweep(ghz(), ghz_triple);
  CHECK(lam_ghz == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  for (int k = 0; k < 3; ++k) CHECK(close_to_basis(ghz_triple.q[k], ket0, 1e-14));

  ProductTriple w_triple = w_equal_special_triple();
  const double lam_w = power_sweep(w_equal(), w_triple);
  CHECK(lam_w == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  const ProductTriple reference = w_equal_special_triple();
  for (int k = 0; k < 3; ++k) CHECK(w_triple.q[k].fidelity(reference.q[k]) > 1.0 - 1e-12);
}

TEST_CASE("power sweep reports the starved qubit") {
  const std::array<cplx, 8> raw{cplx{1.0, 0.0}};
  const PureState3Q state = make_state(raw);
  ProductTriple triple = basis_triple(ket0, ket1, ket1);
  try {
    power_sweep(state, triple);
    FAIL("expected ZeroContractionError");
  } catch (const ZeroContractionError& e) {
    CHECK(e.qubit == 1);
  }
}

TEST_CASE("product state yields a single maximal point") {
  const std::array<cplx, 8> raw{cplx{1.0, 0.0}};
  const PureState3Q state = make_state(raw);
  const SolveResult result = find_stationary_points(state, SolverConfig{});
  REQUIRE(result.points.size() == 1);
  const StationaryPoint& p = result.points[0];
  CHECK(p.lambda == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.residual <= 1e-12);
  CHECK(p.kind == StationaryKind::candidate_max);
  for (double ev : p.a_eigenvalues) CHECK(ev == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(result.discarded_restarts == 0);
}

TEST_CASE("equal-amplitude three-term state has exactly four stationary points") {
  const SolveResult result = find_stationary_points(w_equal(), SolverConfig{});
  REQUIRE(result.points.size() == 4);

  const StationaryPoint& top = result.points[0];
  CHECK(top.lambda == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(top.kind == StationaryKind::candidate_max);
  CHECK(top.a_eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(top.a_eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(top.a_eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-9));

  const double inv3 = 1.0 / std::sqrt(3.0);
  const double lo = (1.0 - std::sqrt(2.0)) * inv3;
  const double hi = (1.0 + std::sqrt(2.0)) * inv3;
  for (int i = 1; i < 4; ++i) {
    const StationaryPoint& p = result.points[i];
    CHECK(p.lambda == doctest::Approx(inv3).epsilon(1e-10));
    CHECK(p.kind == StationaryKind::not_max);
    CHECK(p.a_eigenvalues[0] == doctest::Approx(lo).epsilon(1e-8));
    CHECK(p.a_eigenvalues[1] == doctest::Approx(inv3).epsilon(1e-8));
    CHECK(p.a_eigenvalues[2] == doctest::Approx(hi).epsilon(1e-8));
  }

  for (const StationaryPoint& p : result.points) {
    CHECK(p.residual <= 1e-8);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(p.triple.q[k].norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("asymmetric three-term state recovers the closed-form overlaps") {
  const double a = 0.8, b = std::sqrt(0.27), c = 0.3;
  std::array<cplx, 8> raw{};
  raw[flat_index(1, 0, 0)] = a;
  raw[flat_index(0, 1, 0)] = b;
  raw[flat_index(0, 0, 1)] = c;
  const SolveResult result = find_stationary_points(make_state(raw), SolverConfig{});
  REQUIRE(result.points.size() == 3);
  CHECK(result.points[0].lambda == doctest::Approx(a).epsilon(1e-10));
  CHECK(result.points[1].lambda == doctest::Approx(b).epsilon(1e-10));
  CHECK(result.points[2].lambda == doctest::Approx(c).epsilon(1e-10));
  CHECK(result.points[0].kind == StationaryKind::candidate_max);
  CHECK(result.points[1].kind == StationaryKind::not_max);
  CHECK(result.points[2].kind == StationaryKind::not_max);
}

TEST_CASE("ghz-type state has two equal maxima and a flat saddle shelf") {
  const SolveResult result = find_stationary_points(ghz(), SolverConfig{});
  REQUIRE(result.points.size() >= 2);

  const double inv2 = 1.0 / std::sqrt(2.0);
  CHECK(result.points[0].lambda == doctest::Approx(inv2).epsilon(1e-10));
  CHECK(result.points[1].lambda == doctest::Approx(inv2).epsilon(1e-10));
  CHECK(result.points[0].kind == StationaryKind::candidate_max);
  CHECK(result.points[1].kind == StationaryKind::candidate_max);

  // The two maxima are the computational-basis triples, in either order.
  const bool first_is_ones = close_to_basis(result.points[0].triple.q[0], ket1, 1e-9);
  const ProductTriple& lo = first_is_ones ? result.points[1].triple : result.points[0].triple;
  const ProductTriple& hi = first_is_ones ? result.points[0].triple : result.points[1].triple;
  for (int k = 0; k < 3; ++k) {
    CHECK(close_to_basis(lo.q[k], ket0, 1e-9));
    CHECK(close_to_basis(hi.q[k], ket1, 1e-9));
  }

  // Everything else sits on the degenerate lambda = 1/2 ring.
  for (std::size_t i = 2; i < result.points.size(); ++i) {
    CHECK(result.points[i].lambda == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(result.points[i].kind == StationaryKind::not_max);
  }
}

TEST_CASE("points arrive sorted by overlap") {
  for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
    const SolveResult result = find_stationary_points(haar_random_state(seed), SolverConfig{});
    REQUIRE(!result.points.empty());
    for (std::size_t i = 1; i < result.points.size(); ++i)
      CHECK(result.points[i - 1].lambda >= result.points[i].lambda);
    for (const StationaryPoint& p : result.points) {
      CHECK(p.residual <= 1e-8);
      CHECK(p.lambda > 1e-9);
    }
  }
}

TEST_CASE("results are deterministic and thread-count independent") {
  const PureState3Q state = haar_random_state(42);
  SolverConfig config;
  config.rng_seed = 5;

  const SolveResult first = find_stationary_points(state, config);
  const SolveResult second = find_stationary_points(state, config);
  REQUIRE(first.points.size() == second.points.size());
  CHECK(first.discarded_restarts == second.discarded_restarts);

  setenv("GSD3_THREADS", "1", 1);
  const SolveResult serial = find_stationary_points(state, config);
  setenv("GSD3_THREADS", "4", 1);
  const SolveResult wide = find_stationary_points(state, config);
  unsetenv("GSD3_THREADS");

  REQUIRE(serial.points.size() == first.points.size());
  REQUIRE(wide.points.size() == first.points.size());
  for (std::size_t i = 0; i < first.points.size(); ++i) {
    CHECK(first.points[i].lambda == second.points[i].lambda);
    CHECK(first.points[i].lambda == serial.points[i].lambda);
    CHECK(first.points[i].lambda == wide.points[i].lambda);
    for (int k = 0; k < 3; ++k) {
      CHECK(first.points[i].triple.q[k].a0 == serial.points[i].triple.q[k].a0);
      CHECK(first.points[i].triple.q[k].a1 == wide.points[i].triple.q[k].a1);
    }
  }
}

TEST_CASE("returned triples are phase normalized") {
  const SolveResult result = find_stationary_points(haar_random_state(3), SolverConfig{});
  for (const StationaryPoint& p : result.points)
    for (int k = 0; k < 3; ++k) {
      const QubitVector& q = p.triple.q[k];
      const cplx lead = std::abs(q.a0) >= std::abs(q.a1) ? q.a0 : q.a1;
      CHECK(std::abs(lead.imag()) <= 1e-9);
      CHECK(lead.real() >= -1e-9);
    }
}

TEST_CASE("maximal overlap values") {
  SolverConfig config;
  const MaxOverlap w = maximal_product_overlap(w_equal(), config);
  CHECK(w.lambda == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(std::abs(overlap(w_equal(), w.triple)) == doctest::Approx(w.lambda).epsilon(1e-12));

  const MaxOverlap g = maximal_product_overlap(ghz(), config);
  CHECK(g.lambda == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

  config.n_restarts = 8;
  const MaxOverlap small = maximal_product_overlap(w_equal(), config);
  CHECK(small.lambda == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}
