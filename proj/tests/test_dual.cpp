#include <doctest.h>

#include <random>

#include "hardy/dual.hpp"
#include "hardy/random.hpp"

using namespace hardy;

namespace {

// Value of a polynomial built from the generator values E_{r(e), s(e)} conj(w_e)
// and the vertex units, multiplied out as plain matrices.
VertexMatrix matrix_unit_oracle(const HardyPoly& x, const DualPoint& eta) {
  const Graph& g = *x.graph();
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  VertexMatrix out = VertexMatrix::Zero(n, n);
  for (const auto& [p, c] : x.terms()) {
    VertexMatrix term = VertexMatrix::Zero(n, n);
    if (p.is_vertex()) {
      term(static_cast<Eigen::Index>(p.vertex), static_cast<Eigen::Index>(p.vertex)) = 1.0;
    } else {
      term = VertexMatrix::Identity(n, n);
      for (auto e : p.edges) {
        VertexMatrix s = VertexMatrix::Zero(n, n);
        s(static_cast<Eigen::Index>(g.dst(e)), static_cast<Eigen::Index>(g.src(e))) = std::conj(eta.weight(e));
        term = term * s;
      }
    }
    out += c * term;
  }
  return out;
}

}  // namespace

TEST_CASE("norm is the operator norm of the point matrix") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    auto g = random_graph(1 + t % 4, 7, rng);
    std::vector<cplx> w(g->edge_count());
    for (auto& x : w) x = random_complex(rng);
    auto p = make_dual_point(g, w, true);
    CHECK(p.norm() == doctest::Approx(spectral_norm(p.matrix())).epsilon(1e-12));
    CHECK(p.adjoint_matrix().isApprox(p.matrix().adjoint()));
    CHECK(p.scaled(0.5).norm() == doctest::Approx(0.5 * p.norm()));
  }
}

TEST_CASE("points outside the ball are rejected") {
  auto g = two_vertex_example();
  CHECK_THROWS_AS(make_dual_point(g, {1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(make_dual_point(g, {0.0, 0.0}), ValidationError);
  CHECK_NOTHROW(make_dual_point(g, {1.0, 0.0, 0.0}, true));
  // e and g both end at w, so their weights add in quadrature.
  CHECK(make_dual_point(g, {0.6, 0.0, 0.8}, true).norm() == doctest::Approx(1.0));
  CHECK(make_dual_point(g, {0.6, 0.8, 0.0}).norm() == doctest::Approx(0.8));
}

TEST_CASE("adjoint round trip and leakage") {
  std::mt19937_64 rng(2);
  auto g = two_vertex_example();
  auto p = random_point(g, rng, 0.9);
  auto q = dual_point_from_adjoint(g, p.adjoint_matrix(), false, 1e-12);
  for (std::size_t e = 0; e < 3; ++e) CHECK(q.weight(e) == p.weight(e));
  CMatrix bad = p.adjoint_matrix();
  bad(0, 0) += 0.1;  // entry (v, e) while r(e) = w
  CHECK_THROWS_AS(dual_point_from_adjoint(g, bad, false, 1e-12), StructuralError);
}

TEST_CASE("evaluation agrees with generator matrix products") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    auto g = random_graph(1 + t % 4, 7, rng);
    auto x = random_poly(g, 3, rng);
    auto y = random_poly(g, 2, rng);
    auto eta = random_point(g, rng, 0.99);
    const VertexMatrix vx = evaluate_poly(x, eta);
    CHECK((vx - matrix_unit_oracle(x, eta)).norm() < 1e-12);
    // Evaluation is multiplicative.
    CHECK((evaluate_poly(x * y, eta) - vx * evaluate_poly(y, eta)).norm() < 1e-12);
  }
}

TEST_CASE("one loop reduces to polynomial evaluation at the conjugate weight") {
  auto g = single_vertex_loops(1);
  const cplx z(0.3, -0.4);
  auto eta = make_dual_point(g, {std::conj(z)});
  auto s = HardyPoly::shift(g, 0);
  auto x = HardyPoly::one(g) * cplx(2.0) + s * cplx(0.0, 1.0) + s * s * s * cplx(-1.5);
  const cplx expected = 2.0 + cplx(0.0, 1.0) * z - 1.5 * z * z * z;
  CHECK(std::abs(evaluate_poly(x, eta)(0, 0) - expected) < 1e-15);
}

TEST_CASE("theta resolvent matches the Neumann series") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    auto g = random_graph(2 + t % 3, 7, rng);
    auto a = random_point(g, rng, 0.9), b = random_point(g, rng, 0.9);
    AlgebraElement x{g, CVector::Random(static_cast<Eigen::Index>(g->vertex_count()))};
    const CMatrix th = theta_matrix(a, b);
    CHECK((th * x.values - theta_map(a, b, x).values).norm() < 1e-14);
    CVector sum = CVector::Zero(x.values.size()), term = x.values;
    for (int k = 0; k < 400; ++k) {
      sum += term;
      term = th * term;
    }
    CHECK((theta_resolvent(a, b, x).values - sum).norm() < 1e-10);
  }
}

TEST_CASE("points over different graphs do not mix") {
  auto x = HardyPoly::one(two_vertex_example());
  auto p = zero_point(cycle_graph(2));
  CHECK_THROWS_AS(evaluate_poly(x, p), GraphMismatch);
}
