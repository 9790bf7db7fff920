// Serial reference vs OpenMP path for the shared kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "hardy/kernels.hpp"
#include "hardy/random.hpp"

using namespace hardy;

namespace {

kernels::Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? kernels::Exec::serial : kernels::Exec::parallel;
}

std::vector<CMatrix> hermitian_blocks(std::size_t count, Eigen::Index n) {
  std::srand(1);
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < count; ++i) {
    CMatrix m = CMatrix::Random(n, n);
    out.push_back(m + m.adjoint());
  }
  return out;
}

void BM_HermitianExtremes(benchmark::State& state) {
  const auto blocks = hermitian_blocks(32, state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::hermitian_extremes(blocks, exec_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_HermitianExtremes)->ArgsProduct({{0, 1}, {16, 64}})->Unit(benchmark::kMillisecond);

void BM_SpectralNorms(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto g = two_vertex_example();
  std::vector<SparseCMatrix> blocks;
  for (int i = 0; i < 8; ++i)
    blocks.push_back(creation_matrix(random_poly(g, 2, rng), static_cast<std::size_t>(state.range(1))).entries);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::spectral_norms(blocks, exec_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_SpectralNorms)->ArgsProduct({{0, 1}, {6, 8}})->Unit(benchmark::kMillisecond);

void BM_EvaluateBatch(benchmark::State& state) {
  std::mt19937_64 rng(3);
  auto g = two_vertex_example();
  const auto x = random_poly(g, 6, rng);
  std::vector<DualPoint> pts;
  for (int i = 0; i < state.range(1); ++i) pts.push_back(random_point(g, rng, 0.95));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate_batch(x, pts, exec_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_EvaluateBatch)->ArgsProduct({{0, 1}, {64, 512}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
