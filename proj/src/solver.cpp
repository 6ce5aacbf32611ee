#include "gsd3/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include "gsd3/canonical.hpp"
#include "gsd3/parallel.hpp"

namespace gsd3 {

namespace {

constexpr int kNewtonMaxIters = 80;
constexpr double kNewtonFdStep = 1e-7;
constexpr double kNewtonTol = 1e-13;
constexpr int kMaxReseeds = 64;
constexpr std::uint64_t kRestartSeedSalt = 0xD1B54A32D192ED03ULL;

std::uint64_t restart_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ (kRestartSeedSalt * (index + 1)));
}

QubitVector random_qubit(std::mt19937_64& eng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const QubitVector v{{gauss(eng), gauss(eng)}, {gauss(eng), gauss(eng)}};
    if (v.norm() > 1e-6) return v.normalized();
  }
}

ProductTriple random_triple(std::mt19937_64& eng) {
  ProductTriple t;
  for (auto& u : t.q) u = random_qubit(eng);
  return t;
}

ProductTriple basis_triple(int index) {
  const QubitVector zero{{1.0, 0.0}, {0.0, 0.0}};
  const QubitVector one{{0.0, 0.0}, {1.0, 0.0}};
  ProductTriple t;
  t.q[0] = (index & 4) ? one : zero;
  t.q[1] = (index & 2) ? one : zero;
  t.q[2] = (index & 1) ? one : zero;
  return t;
}

std::array<cplx, 3> residual_components(const PureState3Q& state, const ProductTriple& triple) {
  static constexpr int others[3][2] = {{2, 3}, {1, 3}, {1, 2}};
  std::array<cplx, 3> f{};
  for (int k = 0; k < 3; ++k) {
    const QubitVector c = contract_double(state, others[k][0], others[k][1],
                                          triple.q[others[k][0] - 1], triple.q[others[k][1] - 1]);
    f[k] = orthogonal_complement(triple.q[k]).inner(c);
  }
  return f;
}

ProductTriple moved_triple(const ProductTriple& base, const std::array<QubitVector, 3>& tangent,
                           const double* t) {
  ProductTriple m;
  for (int k = 0; k < 3; ++k) {
    const cplx step(t[2 * k], t[2 * k + 1]);
    m.q[k] = QubitVector{base.q[k].a0 + step * tangent[k].a0,
                         base.q[k].a1 + step * tangent[k].a1}
                 .normalized();
  }
  return m;
}

// Root-finds the tangent stationarity residual in the local chart
// u_k(t) = normalize(u_k + t_k v_k). Unlike the monotone sweeps this also
// converges to saddle-type stationary points. Returns the final residual.
double newton_refine(const PureState3Q& state, ProductTriple& triple) {
  using Vec6 = Eigen::Matrix<double, 6, 1>;
  using Mat6 = Eigen::Matrix<double, 6, 6>;
  for (int iter = 0; iter < kNewtonMaxIters; ++iter) {
    std::array<QubitVector, 3> tangent;
    for (int k = 0; k < 3; ++k) tangent[k] = orthogonal_complement(triple.q[k]);
    const auto eval = [&](const double* t) {
      const std::array<cplx, 3> f = residual_components(state, moved_triple(triple, tangent, t));
      Vec6 out;
      for (int k = 0; k < 3; ++k) {
        out[2 * k] = f[k].real();
        out[2 * k + 1] = f[k].imag();
      }
      return out;
    };

    const double zero[6] = {0, 0, 0, 0, 0, 0};
    const Vec6 f0 = eval(zero);
    if (f0.lpNorm<Eigen::Infinity>() < kNewtonTol) break;

    Mat6 jac;
    for (int m = 0; m < 6; ++m) {
      double t[6] = {0, 0, 0, 0, 0, 0};
      t[m] = kNewtonFdStep;
      jac.col(m) = (eval(t) - f0) / kNewtonFdStep;
    }
    Vec6 delta = jac.fullPivLu().solve(-f0);
    if (!delta.allFinite()) break;
    const double step_norm = delta.norm();
    if (step_norm > 1.0) delta /= step_norm;
    double t[6];
    for (int m = 0; m < 6; ++m) t[m] = delta[m];
    triple = moved_triple(triple, tangent, t);
  }
  return stationarity_residual(state, triple);
}

struct Candidate {
  ProductTriple triple;
  double lambda = 0.0;
  double residual = 0.0;
};

std::optional<Candidate> accept_candidate(const PureState3Q& state, const ProductTriple& triple,
                                          double residual, double tol_match) {
  const double lambda = std::abs(overlap(state, triple));
  if (residual > tol_match || lambda <= kLambdaFloor) return std::nullopt;
  return Candidate{triple.phase_normalized(), lambda, residual};
}

struct RestartOutcome {
  std::vector<Candidate> found;
  bool discarded = false;
};

RestartOutcome run_restart(const PureState3Q& state, const SolverConfig& config,
                           std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  const ProductTriple raw = random_triple(eng);
  RestartOutcome out;

  // Monotone sweeps to convergence: both the overlap increment and the
  // stationarity residual must fall below tolerance.
  ProductTriple triple = raw;
  double prev = -1.0;
  int reseeds = 0;
  bool degenerate = false;
  for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
    double lam = 0.0;
    try {
      lam = power_sweep(state, triple);
    } catch (const ZeroContractionError& e) {
      if (++reseeds > kMaxReseeds) {
        degenerate = true;
        break;
      }
      triple.q[e.qubit - 1] = random_qubit(eng);
      prev = -1.0;
      continue;
    }
    if (std::abs(lam - prev) <= config.tol_convergence &&
        stationarity_residual(state, triple) < config.tol_match)
      break;
    prev = lam;
  }

  bool produced = false;
  if (!degenerate) {
    // Newton polish tightens the residual well past the sweep tolerance;
    // keep the polished triple only when it actually improved.
    const double swept_residual = stationarity_residual(state, triple);
    ProductTriple polished = triple;
    const double polished_residual = newton_refine(state, polished);
    if (polished_residual < swept_residual) {
      triple = polished;
    }
    if (auto cand = accept_candidate(state, triple, stationarity_residual(state, triple),
                                     config.tol_match)) {
      out.found.push_back(*cand);
      produced = true;
    }
  }
  out.discarded = !produced;

  // Saddle-type points repel the sweeps, so also root-find from the raw seed.
  ProductTriple direct = raw;
  const double direct_residual = newton_refine(state, direct);
  if (auto cand = accept_candidate(state, direct, direct_residual, config.tol_match))
    out.found.push_back(*cand);

  return out;
}

RestartOutcome run_basis_seed(const PureState3Q& state, const SolverConfig& config, int index) {
  RestartOutcome out;
  ProductTriple triple = basis_triple(index);
  const double residual = newton_refine(state, triple);
  if (auto cand = accept_candidate(state, triple, residual, config.tol_match))
    out.found.push_back(*cand);
  return out;
}

using LexKey = std::array<long long, 12>;

LexKey lex_key(const ProductTriple& triple) {
  LexKey key{};
  int pos = 0;
  for (int k = 0; k < 3; ++k)
    for (const cplx* a : {&triple.q[k].a0, &triple.q[k].a1}) {
      key[pos++] = std::llround(a->real() * 1e9);
      key[pos++] = std::llround(a->imag() * 1e9);
    }
  return key;
}

double min_pair_fidelity(const ProductTriple& a, const ProductTriple& b) {
  double worst = 1.0;
  for (int k = 0; k < 3; ++k) worst = std::min(worst, a.q[k].fidelity(b.q[k]));
  return worst;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<Candidate> deduplicate(const std::vector<Candidate>& all, double tol_match) {
  UnionFind uf(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double fid = min_pair_fidelity(all[i].triple, all[j].triple);
      const bool same_point = fid > 1.0 - tol_match;
      const bool same_orbit = std::abs(all[i].lambda - all[j].lambda) <= kOrbitLambdaTol &&
                              fid >= kOrbitFidelityFloor;
      if (same_point || same_orbit) uf.merge(i, j);
    }

  // Representative: smallest residual, then the lexicographic tie-break, so
  // the choice is independent of discovery order.
  std::vector<std::size_t> rep(all.size(), SIZE_MAX);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t root = uf.find(i);
    if (rep[root] == SIZE_MAX) {
      rep[root] = i;
      continue;
    }
    const Candidate& cur = all[rep[root]];
    const Candidate& cand = all[i];
    if (cand.residual < cur.residual ||
        (cand.residual == cur.residual && lex_key(cand.triple) < lex_key(cur.triple)))
      rep[root] = i;
  }

  std::vector<Candidate> unique;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (rep[uf.find(i)] == i) unique.push_back(all[i]);
  return unique;
}

void classify_point(const PureState3Q& state, StationaryPoint& point) {
  try {
    const CanonicalForm cf = build_canonical_form(state, point.triple);
    point.a_eigenvalues = second_variation_eigenvalues(cf);
    point.kind = point.a_eigenvalues[0] >= -kPositivityTol ? StationaryKind::candidate_max
                                                           : StationaryKind::not_max;
  } catch (const std::exception&) {
    point.a_eigenvalues = {0.0, 0.0, 0.0};
    point.kind = StationaryKind::undetermined;
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol_convergence > 0.0)) throw std::invalid_argument("tol_convergence must be positive");
  if (!(tol_match > 0.0)) throw std::invalid_argument("tol_match must be positive");
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
  if (n_restarts < 1) throw std::invalid_argument("n_restarts must be at least 1");
}

const char* to_string(StationaryKind kind) noexcept {
  switch (kind) {
    case StationaryKind::candidate_max:
      return "candidate_max";
    case StationaryKind::not_max:
      return "not_max";
    default:
      return "undetermined";
  }
}

double power_sweep(const PureState3Q& state, ProductTriple& triple) {
  static constexpr int others[3][2] = {{2, 3}, {1, 3}, {1, 2}};
  double last_norm = 0.0;
  for (int k = 0; k < 3; ++k) {
    const QubitVector c = contract_double(state, others[k][0], others[k][1],
                                          triple.q[others[k][0] - 1], triple.q[others[k][1] - 1]);
    const double n = c.norm();
    if (n < kZeroContractionTol) throw ZeroContractionError(k + 1);
    triple.q[k] = c.scaled(1.0 / n);
    last_norm = n;
  }
  // After the final update |<u1 u2 u3|psi>| equals the last contraction norm.
  return last_norm;
}

SolveResult find_stationary_points(const PureState3Q& state, const SolverConfig& config) {
  config.validate();
  const std::size_t restarts = static_cast<std::size_t>(config.n_restarts);
  const std::size_t total = restarts + 8;
  std::vector<RestartOutcome> slots(total);
  parallel_for(total, [&](std::size_t i) {
    slots[i] = i < restarts
                   ? run_restart(state, config, restart_seed(config.rng_seed, i))
                   : run_basis_seed(state, config, static_cast<int>(i - restarts));
  });

  std::vector<Candidate> all;
  int discarded = 0;
  for (std::size_t i = 0; i < total; ++i) {
    for (const Candidate& c : slots[i].found) all.push_back(c);
    if (i < restarts && slots[i].discarded) ++discarded;
  }

  std::vector<Candidate> unique = deduplicate(all, config.tol_match);
  std::sort(unique.begin(), unique.end(), [](const Candidate& a, const Candidate& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return lex_key(a.triple) < lex_key(b.triple);
  });

  SolveResult result;
  result.discarded_restarts = discarded;
  result.points.reserve(unique.size());
  for (const Candidate& c : unique) {
    StationaryPoint p;
    p.triple = c.triple;
    p.lambda = c.lambda;
    p.residual = c.residual;
    classify_point(state, p);
    result.points.push_back(std::move(p));
  }
  return result;
}

MaxOverlap maximal_product_overlap(const PureState3Q& state, const SolverConfig& config) {
  const SolveResult result = find_stationary_points(state, config);
  if (result.points.empty())
    throw SolverError("no restart converged to a stationary point");
  return {result.points.front().lambda, result.points.front().triple};
}

}  // namespace gsd3
