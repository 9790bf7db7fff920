#include <doctest.h>

#include <random>

#include "hardy/mobius.hpp"
#include "hardy/random.hpp"

using namespace hardy;

namespace {

double weight_distance(const DualPoint& a, const DualPoint& b) {
  double d = 0.0;
  for (std::size_t e = 0; e < a.weights().size(); ++e) d = std::max(d, std::abs(a.weight(e) - b.weight(e)));
  return d;
}

}  // namespace

TEST_CASE("hermitian square root") {
  for (int t = 0; t < 5; ++t) {
    const CMatrix a = CMatrix::Random(4, 4);
    const CMatrix h = a * a.adjoint();
    const CMatrix s = hermitian_sqrt(h);
    CHECK((s * s - h).norm() < 1e-12);
    CHECK((s - s.adjoint()).norm() < 1e-14);
    CHECK(Eigen::SelfAdjointEigenSolver<CMatrix>(s).eigenvalues().minCoeff() > -1e-12);
  }
}

TEST_CASE("central points live on loops inside the ball") {
  auto g = two_vertex_example();
  CHECK_THROWS_AS(make_central_point(g, {{g->edge_index("e"), 0.1}}), ValidationError);
  CHECK_THROWS_AS(make_central_point(g, {{g->edge_index("g"), 1.0}}), DomainError);
  CHECK(make_central_point(g, {{g->edge_index("g"), 0.5}}).center_dimension() == 1);
  CHECK(zero_central_point(cycle_graph(3)).center_dimension() == 0);
}

TEST_CASE("one loop: classical disc automorphism") {
  auto g = single_vertex_loops(1);
  const cplx c(0.3, -0.2), w(-0.1, 0.6);
  auto gamma = make_central_point(g, {{0, c}});
  auto z = make_dual_point(g, {w});
  // a = conj(c), zeta = conj(w): (a - zeta) / (1 - conj(a) zeta)
  const cplx a = std::conj(c), zeta = std::conj(w);
  const cplx expected = (a - zeta) / (1.0 - std::conj(a) * zeta);
  CHECK(std::abs(mobius_matrix(gamma, z)(0, 0) - expected) < 1e-15);
}

TEST_CASE("zero gamma is the reflection z -> -z") {
  std::mt19937_64 rng(31);
  auto g = cycle_graph(3);
  auto z = random_point(g, rng, 0.9);
  auto image = mobius_apply(zero_central_point(g), z);
  for (std::size_t e = 0; e < 3; ++e) CHECK(std::abs(image.weight(e) + z.weight(e)) < 1e-15);
}

TEST_CASE("involution, fixed values and unitary colligation on random graphs") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 30; ++t) {
    auto g = random_graph(1 + t % 4, 8, rng, true);
    auto gamma = random_central_point(g, rng, 0.95);
    auto z = random_point(g, rng, 0.95);
    CHECK(weight_distance(mobius_apply(gamma, mobius_apply(gamma, z)), z) < 1e-10);
    CHECK(weight_distance(mobius_apply(gamma, zero_point(g)), gamma.point()) < 1e-12);
    CHECK(mobius_apply(gamma, gamma.point()).norm() < 1e-12);
    CHECK(mobius_apply(gamma, z).norm() < 1.0);
    const auto col = mobius_colligation(gamma);
    const auto n = col.v.rows();
    REQUIRE(col.v.cols() == n);
    CHECK(spectral_norm(col.v * col.v.adjoint() - CMatrix::Identity(n, n)) < 1e-11);
    CHECK(spectral_norm(col.v.adjoint() * col.v - CMatrix::Identity(n, n)) < 1e-11);
    CHECK(col.coisometry_residual < 1e-11);
  }
}

TEST_CASE("congruence maps are completely positive") {
  std::mt19937_64 rng(33);
  auto g = two_vertex_example();
  for (int t = 0; t < 5; ++t) {
    auto gamma = random_central_point(g, rng, 0.95);
    std::vector<DualPoint> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(random_point(g, rng, 0.95));
    const auto m = mobius_congruence_maps(gamma, pts);
    CHECK(m.size() == 4);
    CHECK(is_completely_positive(m).completely_positive);
  }
}
