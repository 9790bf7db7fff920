#include <doctest.h>

#include <random>

#include "hardy/fock.hpp"
#include "hardy/random.hpp"

using namespace hardy;

namespace {

double dense_norm(const FockMatrix& m) { return spectral_norm(CMatrix(m.entries)); }

}  // namespace

TEST_CASE("products agree with creation matrices on the truncated space") {
  std::mt19937_64 rng(7);
  auto g = two_vertex_example();
  for (int t = 0; t < 10; ++t) {
    auto x = random_poly(g, 2, rng);
    auto y = random_poly(g, 2, rng);
    const std::size_t n = 5;
    auto basis = std::make_shared<const FockBasis>(FockBasis::build(*g, n));
    const CMatrix lhs = CMatrix(creation_matrix(x * y, basis).entries);
    const CMatrix rhs = CMatrix(creation_matrix(x, basis).entries) * CMatrix(creation_matrix(y, basis).entries);
    CHECK((lhs - rhs).norm() < 1e-12);
    CHECK(hardy_mul(x, y) == x * y);
  }
}

TEST_CASE("generators multiply as path concatenation") {
  auto g = two_vertex_example();
  const auto e = g->edge_index("e"), f = g->edge_index("f"), gl = g->edge_index("g");
  const auto w = g->vertex_index("w");
  auto se = HardyPoly::shift(g, e), sf = HardyPoly::shift(g, f), sg = HardyPoly::shift(g, gl);
  CHECK(se * sf == HardyPoly::monomial(g, Path::of_edges({e, f})));
  CHECK((se * sg).is_zero());
  CHECK(HardyPoly::projection(g, w) * sg == sg);
  CHECK(HardyPoly::one(g) * se == se);
  CHECK((sg * sg * se).degree() == 3);
  auto x = se + sg * sg * cplx(2.0) + HardyPoly::projection(g, w);
  CHECK(fourier_coeff(x, 2) == sg * sg * cplx(2.0));
  CHECK(fourier_coeff(x, 0) == HardyPoly::projection(g, w));
  CHECK((x - x).is_zero());
}

TEST_CASE("creation matrix rejects a short truncation") {
  auto g = two_vertex_example();
  auto sg = HardyPoly::shift(g, g->edge_index("g"));
  CHECK_THROWS_AS(creation_matrix(sg * sg * sg, 2), ValidationError);
}

TEST_CASE("Cuntz-Toeplitz relations on random graphs") {
  std::mt19937_64 rng(3);
  CHECK(cuntz_toeplitz_check(two_vertex_example(), 4, 1e-12).passed);
  for (int t = 0; t < 10; ++t) {
    auto g = random_graph(1 + t % 5, 8, rng);
    const auto rep = cuntz_toeplitz_check(g, 4, 1e-12);
    CHECK(rep.relations.size() == 4);
    CHECK(rep.passed);
    CHECK(rep.worst() < 1e-12);
  }
}

TEST_CASE("norm bound matches a dense SVD and grows with N") {
  std::mt19937_64 rng(5);
  auto g = two_vertex_example();
  for (int t = 0; t < 5; ++t) {
    auto x = random_poly(g, 2, rng);
    double prev = 0.0;
    for (std::size_t n = 2; n <= 6; ++n) {
      const double b = fock_norm_bound(x, n);
      CHECK(b == doctest::Approx(dense_norm(creation_matrix(x, n))).epsilon(1e-10));
      CHECK(b >= prev - 1e-12);
      prev = b;
    }
    auto r = rescale_to_contraction(x, 6, 1e-6);
    CHECK(fock_norm_bound(r, 6) == doctest::Approx(1.0 / (1.0 + 1e-6)).epsilon(1e-10));
  }
  // Isometries and projections have norm one at every truncation.
  CHECK(fock_norm_bound(HardyPoly::shift(g, g->edge_index("e")), 4) == doctest::Approx(1.0));
  CHECK(fock_norm_bound(HardyPoly::one(g), 4) == doctest::Approx(1.0));
  CHECK(rescale_to_contraction(HardyPoly::zero(g), 3, 0.0).is_zero());
}
