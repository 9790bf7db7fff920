#include <doctest.h>

#include <random>

#include "hardy/automorphism.hpp"
#include "hardy/random.hpp"

using namespace hardy;

namespace {

CMatrix random_unitary(Eigen::Index n) { return CMatrix::Random(n, n).householderQr().householderQ(); }

}  // namespace

TEST_CASE("bimodule unitaries must respect sources and ranges") {
  // Two parallel edges a, b: x -> y, and a loop c at y.
  auto g = build_graph({"x", "y"}, {{"a", "x", "y"}, {"b", "x", "y"}, {"c", "y", "y"}});
  CHECK_NOTHROW(make_bimodule_unitary(g, {{0, 1, {0, 1}, random_unitary(2)}}));
  CHECK_THROWS_AS(make_bimodule_unitary(g, {{0, 1, {0, 2}, random_unitary(2)}}), ValidationError);
  CHECK_THROWS_AS(make_bimodule_unitary(g, {{0, 1, {0, 1}, CMatrix::Ones(2, 2)}}), ValidationError);
  CHECK_THROWS_AS(make_bimodule_unitary(g, {{0, 1, {0}, CMatrix::Identity(1, 1)},
                                            {0, 1, {0}, CMatrix::Identity(1, 1)}}),
                  ValidationError);
  const auto u = make_bimodule_unitary(g, {{0, 1, {0, 1}, random_unitary(2)}});
  CHECK(u.edge_matrix()(2, 2) == cplx(1.0));
  CHECK(identity_unitary(g).edge_matrix().isIdentity());
}

TEST_CASE("gauge action on polynomials matches the gauged point") {
  std::mt19937_64 rng(41);
  auto g = build_graph({"x", "y"}, {{"a", "x", "y"}, {"b", "x", "y"}, {"c", "y", "y"}, {"d", "y", "x"}});
  const auto u = make_bimodule_unitary(g, {{0, 1, {0, 1}, random_unitary(2)}, {1, 1, {2}, random_unitary(1)}});
  for (int t = 0; t < 5; ++t) {
    auto x = random_poly(g, 3, rng);
    auto eta = random_point(g, rng, 0.9);
    CHECK((evaluate_poly(apply_alpha_u(u, x), eta) - evaluate_poly(x, gauge_point(u, eta))).norm() < 1e-12);
  }
  std::vector<cplx> phases{std::polar(1.0, 0.1), std::polar(1.0, 0.2), std::polar(1.0, 0.3), 1.0};
  const auto d = diagonal_unitary(g, phases);
  const auto sa = HardyPoly::shift(g, 0);
  CHECK(apply_alpha_u(d, sa) == sa * phases[0]);
}

TEST_CASE("roles are recognised from the shape, not the names") {
  auto g = build_graph({"p", "q"}, {{"loop", "q", "q"}, {"back", "q", "p"}, {"fwd", "p", "q"}});
  const auto r = two_vertex_roles(*g);
  CHECK(r.g == 0);
  CHECK(r.f == 1);
  CHECK(r.e == 2);
  CHECK(r.v == 0);
  CHECK(r.w == 1);
  CHECK_THROWS_AS(two_vertex_roles(*cycle_graph(2)), GraphMismatch);
}

TEST_CASE("closed form of tau agrees with the Mobius map of lambda on the loop") {
  std::mt19937_64 rng(42);
  auto g = two_vertex_example();
  const auto loop = g->edge_index("g");
  for (cplx lambda : {cplx(0.0), cplx(0.3), cplx(0.5, 0.2), cplx(-0.7, 0.1)}) {
    auto gamma = make_central_point(g, {{loop, lambda}});
    for (int t = 0; t < 5; ++t) {
      auto eta = random_point(g, rng, 0.95);
      CHECK((tau_lambda_matrix(eta, lambda) - mobius_matrix(gamma, eta)).norm() < 1e-13);
    }
  }
}

TEST_CASE("truncated alpha_lambda images converge to tau") {
  std::mt19937_64 rng(43);
  auto g = two_vertex_example();
  const auto r = two_vertex_roles(*g);
  for (cplx lambda : {cplx(0.0), cplx(0.3), cplx(0.5, 0.2)}) {
    const auto a = two_vertex_alpha_lambda(g, lambda, 25);
    CHECK(a.tf == HardyPoly::shift(g, r.f) * cplx(-1.0));
    for (int t = 0; t < 5; ++t) {
      auto eta = random_point(g, rng, 0.95);
      const CMatrix tau = tau_lambda_matrix(eta, lambda);
      const double bound = alpha_lambda_tail_bound(lambda, eta, 25);
      const auto ix = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
      CHECK(std::abs(evaluate_poly(a.te, eta)(ix(r.w), ix(r.v)) - tau(ix(r.w), ix(r.e))) <= bound + 1e-15);
      CHECK(std::abs(evaluate_poly(a.tf, eta)(ix(r.v), ix(r.w)) - tau(ix(r.v), ix(r.f))) <= 1e-15);
      CHECK(std::abs(evaluate_poly(a.tg, eta)(ix(r.w), ix(r.w)) - tau(ix(r.w), ix(r.g))) <= bound + 1e-15);
    }
  }
  // At lambda = 0 every generator is negated.
  const auto z = two_vertex_alpha_lambda(g, 0.0, 10);
  CHECK(z.te == HardyPoly::shift(g, r.e) * cplx(-1.0));
  CHECK(z.tg == HardyPoly::shift(g, r.g) * cplx(-1.0));
  CHECK_THROWS_AS(two_vertex_alpha_lambda(g, 1.0, 5), DomainError);
}

TEST_CASE("alpha_lambda images evaluate like the pulled-back point") {
  std::mt19937_64 rng(44);
  auto g = two_vertex_example();
  const auto r = two_vertex_roles(*g);
  const cplx lambda(0.4, -0.3);
  auto gamma = make_central_point(g, {{r.g, lambda}});
  const auto a = two_vertex_alpha_lambda(g, lambda, 60);
  const auto id = identity_unitary(g);
  for (int t = 0; t < 5; ++t) {
    auto eta = random_point(g, rng, 0.9);
    CHECK((evaluate_poly(a.te, eta) - pullback_evaluate(gamma, id, HardyPoly::shift(g, r.e), eta)).norm() < 1e-12);
    CHECK((evaluate_poly(a.tg, eta) - pullback_evaluate(gamma, id, HardyPoly::shift(g, r.g), eta)).norm() < 1e-12);
  }
}

TEST_CASE("the commutator is a nonzero element that vanishes on every point") {
  std::mt19937_64 rng(45);
  auto g = two_vertex_example();
  const auto c = two_vertex_commutator(g);
  CHECK_FALSE(c.is_zero());
  CHECK(fock_norm_bound(c, 4) > 0.5);
  std::vector<DualPoint> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(random_point(g, rng, 0.99));
  const auto rep = kernel_ideal_check(pts, 5, 7);
  CHECK(rep.commutator_max < 1e-15);
  CHECK(rep.multiples_max < 1e-13);
}
