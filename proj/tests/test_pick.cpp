#include <doctest.h>

#include <random>

#include "hardy/pick.hpp"
#include "hardy/random.hpp"

using namespace hardy;

namespace {

// [(1 - c_i conj(c_j)) / (1 - z_i conj(z_j))]
CMatrix classical_pick(const std::vector<cplx>& z, const std::vector<cplx>& c) {
  const auto k = static_cast<Eigen::Index>(z.size());
  CMatrix p(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      p(i, j) = (1.0 - c[i] * std::conj(c[j])) / (1.0 - z[i] * std::conj(z[j]));
  return p;
}

VertexMatrix scalar(cplx c) {
  VertexMatrix m(1, 1);
  m(0, 0) = c;
  return m;
}

}  // namespace

TEST_CASE("one loop: Choi block is the classical Pick matrix") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto g = single_vertex_loops(1);
  int feasible = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t k = 1 + t % 4;
    std::vector<cplx> z, c;
    std::vector<DualPoint> pts;
    std::vector<VertexMatrix> b, cv;
    for (std::size_t i = 0; i < k; ++i) {
      z.emplace_back(0.6 * u(rng), 0.6 * u(rng));
      c.emplace_back(0.8 * u(rng), 0.8 * u(rng));
      pts.push_back(make_dual_point(g, {std::conj(z.back())}));
      b.push_back(scalar(1.0));
      cv.push_back(scalar(c.back()));
    }
    const CMatrix oracle = classical_pick(z, c);
    const auto m = pick_map_matrix(pts, b, cv);
    CHECK((choi_block(m, 0) - oracle).norm() < 1e-13);
    const auto verdict = pick_feasibility(pts, b, cv);
    const double min_eig = Eigen::SelfAdjointEigenSolver<CMatrix>(oracle).eigenvalues().minCoeff();
    CHECK(verdict.worst_min_eig == doctest::Approx(min_eig).epsilon(1e-10));
    CHECK(verdict.completely_positive == (min_eig >= -1e-9 * (1.0 + spectral_norm(oracle))));
    feasible += verdict.completely_positive;
  }
  // The draw should exercise both outcomes.
  CHECK(feasible > 0);
  CHECK(feasible < 40);
}

TEST_CASE("Schur kernel of a contraction is CP, of an inflated one is not") {
  std::mt19937_64 rng(6);
  auto g = two_vertex_example();
  auto x = rescale_to_contraction(random_poly(g, 2, rng), 8, 1e-6);
  std::vector<DualPoint> pts;
  std::vector<VertexMatrix> vals, big;
  for (int i = 0; i < 4; ++i) {
    pts.push_back(random_point(g, rng, 0.9));
    vals.push_back(evaluate_poly(x, pts.back()));
    big.push_back(3.0 * vals.back());
  }
  const auto ok = is_completely_positive(schur_kernel_matrix(pts, vals));
  CHECK(ok.completely_positive);
  CHECK(ok.blocks.size() == 2);
  CHECK(ok.summary().find("consistent with Schur class") != std::string::npos);
  // A scalar multiple of 3 exceeds norm one at the sample with the largest value.
  const auto bad = is_completely_positive(schur_kernel_matrix(pts, big));
  CHECK_FALSE(bad.completely_positive);
  CHECK(bad.summary().find("not completely positive") != std::string::npos);
}

TEST_CASE("schur kernel equals the Pick kernel with B = I") {
  std::mt19937_64 rng(8);
  auto g = two_vertex_example();
  std::vector<DualPoint> pts;
  std::vector<VertexMatrix> vals, ones;
  for (int i = 0; i < 3; ++i) {
    pts.push_back(random_point(g, rng, 0.8));
    vals.push_back(VertexMatrix::Random(2, 2) * 0.3);
    ones.push_back(VertexMatrix::Identity(2, 2));
  }
  const auto a = schur_kernel_matrix(pts, vals);
  const auto b = pick_map_matrix(pts, ones, vals);
  for (std::size_t v = 0; v < 2; ++v) CHECK((choi_block(a, v) - choi_block(b, v)).norm() < 1e-14);
}

TEST_CASE("serial and parallel verdicts coincide") {
  std::mt19937_64 rng(10);
  auto g = two_vertex_example();
  std::vector<DualPoint> pts;
  std::vector<VertexMatrix> vals;
  for (int i = 0; i < 5; ++i) {
    pts.push_back(random_point(g, rng, 0.9));
    vals.push_back(VertexMatrix::Random(2, 2) * 0.5);
  }
  const auto m = schur_kernel_matrix(pts, vals);
  const auto s = is_completely_positive(m, 1e-9, kernels::Exec::serial);
  const auto p = is_completely_positive(m, 1e-9, kernels::Exec::parallel);
  CHECK(s.completely_positive == p.completely_positive);
  CHECK(s.worst_min_eig == p.worst_min_eig);
}

TEST_CASE("non-Hermitian Choi blocks are a structural error") {
  auto g = single_vertex_loops(1);
  CpMapMatrix m(g, 2);
  m.on_delta(0, 0, 0)(0, 0) = 1.0;
  m.on_delta(1, 1, 0)(0, 0) = 1.0;
  m.on_delta(0, 1, 0)(0, 0) = 0.5;
  m.on_delta(1, 0, 0)(0, 0) = -0.5;
  CHECK_THROWS_AS(is_completely_positive(m), StructuralError);
  m.on_delta(1, 0, 0)(0, 0) = 0.5;
  CHECK(is_completely_positive(m).completely_positive);
  CHECK(m.apply(0, 1, AlgebraElement::unit(g))(0, 0) == cplx(0.5));
}
