#include <doctest.h>

#include <random>

#include "hardy/kernels.hpp"
#include "hardy/random.hpp"

using namespace hardy;

TEST_CASE("hermitian extremes: serial and parallel agree with a direct solve") {
  std::mt19937_64 rng(1);
  std::vector<CMatrix> blocks;
  for (int i = 0; i < 12; ++i) {
    CMatrix m = CMatrix::Random(6 + i, 6 + i);
    blocks.push_back(m + m.adjoint());
  }
  const auto s = kernels::hermitian_extremes(blocks, kernels::Exec::serial);
  const auto p = kernels::hermitian_extremes(blocks, kernels::Exec::parallel);
  REQUIRE(s.size() == blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    CHECK(s[i].min_eig == p[i].min_eig);
    CHECK(s[i].max_abs_eig == p[i].max_abs_eig);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(blocks[i]);
    CHECK(s[i].min_eig == doctest::Approx(es.eigenvalues().minCoeff()));
    CHECK(s[i].max_abs_eig == doctest::Approx(es.eigenvalues().cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("spectral norms: both paths and the power iteration") {
  std::mt19937_64 rng(2);
  auto g = two_vertex_example();
  std::vector<SparseCMatrix> blocks;
  std::vector<double> dense;
  for (int i = 0; i < 6; ++i) {
    auto m = creation_matrix(random_poly(g, 2, rng), 5).entries;
    dense.push_back(spectral_norm(CMatrix(m)));
    blocks.push_back(std::move(m));
  }
  const auto s = kernels::spectral_norms(blocks, kernels::Exec::serial);
  const auto p = kernels::spectral_norms(blocks, kernels::Exec::parallel);
  const auto it = kernels::spectral_norms(blocks, kernels::Exec::serial, 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    CHECK(s[i] == p[i]);
    CHECK(s[i] == doctest::Approx(dense[i]).epsilon(1e-10));
    CHECK(it[i] == doctest::Approx(dense[i]).epsilon(1e-6));
  }
}

TEST_CASE("batched evaluation matches pointwise evaluation") {
  std::mt19937_64 rng(3);
  auto g = two_vertex_example();
  auto x = random_poly(g, 4, rng);
  std::vector<DualPoint> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(random_point(g, rng, 0.95));
  const auto s = kernels::evaluate_batch(x, pts, kernels::Exec::serial);
  const auto p = kernels::evaluate_batch(x, pts, kernels::Exec::parallel);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(s[i] == p[i]);
    CHECK(s[i] == evaluate_poly(x, pts[i]));
  }
  pts.push_back(zero_point(cycle_graph(2)));
  CHECK_THROWS_AS(kernels::evaluate_batch(x, pts, kernels::Exec::parallel), GraphMismatch);
}
