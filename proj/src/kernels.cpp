#include "hardy/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace hardy::kernels {

namespace {

HermitianExtremes extremes_of(const CMatrix& block) {
  if (block.size() == 0) return {};
  const CMatrix h = 0.5 * (block + block.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)))};
}

double norm_of(const SparseCMatrix& block, Eigen::Index dense_limit) {
  if (block.nonZeros() == 0) return 0.0;
  if (block.rows() <= dense_limit) {
    const CMatrix dense = CMatrix(block);
    const CMatrix gram = dense.adjoint() * dense;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
  }
  // Power iteration on M^* M from a fixed start vector.
  CVector x = CVector::Ones(block.cols()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    CVector y = block.adjoint() * (block * x);
    const double next = y.norm();
    if (next == 0.0) return 0.0;
    x = y / next;
    if (std::abs(next - lambda) <= 1e-15 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

template <class Out, class Fn>
void run_indexed(std::vector<Out>& out, Exec exec, Fn&& fn) {
  const auto n = static_cast<long>(out.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  }
}

}  // namespace

std::vector<HermitianExtremes> hermitian_extremes(std::span<const CMatrix> blocks, Exec exec) {
  std::vector<HermitianExtremes> out(blocks.size());
  run_indexed(out, exec, [&](std::size_t i) { return extremes_of(blocks[i]); });
  return out;
}

std::vector<double> spectral_norms(std::span<const SparseCMatrix> blocks, Exec exec,
                                   Eigen::Index dense_limit) {
  std::vector<double> out(blocks.size());
  run_indexed(out, exec, [&](std::size_t i) { return norm_of(blocks[i], dense_limit); });
  return out;
}

std::vector<VertexMatrix> evaluate_batch(const HardyPoly& x, std::span<const DualPoint> points,
                                         Exec exec) {
  // Exceptions must not escape an OpenMP region.
  for (const auto& p : points) require_same_graph(x.graph(), p.graph());
  std::vector<VertexMatrix> out(points.size());
  run_indexed(out, exec, [&](std::size_t i) { return evaluate_poly(x, points[i]); });
  return out;
}

}  // namespace hardy::kernels
