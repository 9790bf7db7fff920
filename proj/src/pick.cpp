#include "hardy/pick.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hardy {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_points(const std::vector<DualPoint>& points, std::size_t n_values, const char* what) {
  if (points.empty()) throw ValidationError("at least one point is required");
  if (n_values != points.size())
    throw ValidationError(std::string(what) + " list length differs from the point count");
  for (const auto& p : points) {
    require_same_graph(points.front().graph(), p.graph());
    if (!p.in_open_ball()) throw DomainError("sample point outside the open unit ball");
  }
}

void check_square(const std::vector<VertexMatrix>& ms, std::size_t nv, const char* what) {
  for (const auto& m : ms)
    if (m.rows() != idx(nv) || m.cols() != idx(nv))
      throw ValidationError(std::string(what) + " matrices must be |V| x |V|");
}

// Columns are (id - theta_{eta_i, eta_j})^{-1}(delta_u).
CMatrix resolvent_columns(const DualPoint& a, const DualPoint& b) {
  const CMatrix t = theta_matrix(a, b);
  const CMatrix lhs = CMatrix::Identity(t.rows(), t.cols()) - t;
  Eigen::FullPivLU<CMatrix> lu(lhs);
  if (!lu.isInvertible()) throw ConditioningError("id - theta is singular", lu.rcond());
  return lu.inverse();
}

template <class Fn>
CpMapMatrix build_kernel(const std::vector<DualPoint>& points, Fn&& entry) {
  const auto g = points.front().graph();
  const std::size_t k = points.size();
  const std::size_t nv = g->vertex_count();
  CpMapMatrix m(g, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const CMatrix r = resolvent_columns(points[i], points[j]);
      for (std::size_t u = 0; u < nv; ++u) {
        const CMatrix ra = r.col(idx(u)).asDiagonal();
        m.on_delta(i, j, u) = entry(i, j, ra);
      }
    }
  }
  return m;
}

}  // namespace

CpMapMatrix::CpMapMatrix(GraphPtr g, std::size_t k)
    : graph_(std::move(g)), k_(k), nv_(graph_->vertex_count()) {
  maps_.assign(k_ * k_ * nv_, VertexMatrix::Zero(idx(nv_), idx(nv_)));
}

std::size_t CpMapMatrix::slot(std::size_t i, std::size_t j, std::size_t u) const {
  if (i >= k_ || j >= k_ || u >= nv_) throw ValidationError("CpMapMatrix index out of range");
  return (i * k_ + j) * nv_ + u;
}

const VertexMatrix& CpMapMatrix::on_delta(std::size_t i, std::size_t j, std::size_t u) const {
  return maps_[slot(i, j, u)];
}

VertexMatrix& CpMapMatrix::on_delta(std::size_t i, std::size_t j, std::size_t u) {
  return maps_[slot(i, j, u)];
}

VertexMatrix CpMapMatrix::apply(std::size_t i, std::size_t j, const AlgebraElement& a) const {
  require_same_graph(graph_, a.graph);
  VertexMatrix out = VertexMatrix::Zero(idx(nv_), idx(nv_));
  for (std::size_t u = 0; u < nv_; ++u) out += a.values(idx(u)) * on_delta(i, j, u);
  return out;
}

std::string CpVerdict::summary() const {
  std::ostringstream os;
  os << (completely_positive ? "consistent with Schur class" : "not completely positive")
     << " (worst min eigenvalue " << worst_min_eig << ", tol " << tol << ")";
  return os.str();
}

CpMapMatrix pick_map_matrix(const std::vector<DualPoint>& points, const std::vector<VertexMatrix>& b,
                            const std::vector<VertexMatrix>& c) {
  check_points(points, b.size(), "B");
  check_points(points, c.size(), "C");
  const auto nv = points.front().graph()->vertex_count();
  check_square(b, nv, "B");
  check_square(c, nv, "C");
  return build_kernel(points, [&](std::size_t i, std::size_t j, const CMatrix& ra) -> VertexMatrix {
    return b[i] * ra * b[j].adjoint() - c[i] * ra * c[j].adjoint();
  });
}

CpMapMatrix schur_kernel_matrix(const std::vector<DualPoint>& points,
                                const std::vector<VertexMatrix>& values) {
  check_points(points, values.size(), "value");
  check_square(values, points.front().graph()->vertex_count(), "value");
  return build_kernel(points, [&](std::size_t i, std::size_t j, const CMatrix& ra) -> VertexMatrix {
    return ra - values[i] * ra * values[j].adjoint();
  });
}

CMatrix choi_block(const CpMapMatrix& m, std::size_t v) {
  const auto k = m.size();
  const auto nv = m.vertex_count();
  const auto n = idx(k * nv);
  CMatrix ch(n, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      ch.block(idx(i * nv), idx(j * nv), idx(nv), idx(nv)) = m.on_delta(i, j, v);
  return ch;
}

CpVerdict is_completely_positive(const CpMapMatrix& m, double tol, kernels::Exec exec) {
  const auto nv = m.vertex_count();
  std::vector<CMatrix> blocks(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    blocks[v] = choi_block(m, v);
    const double scale = blocks[v].size() ? blocks[v].cwiseAbs().maxCoeff() : 0.0;
    const double skew = blocks[v].size() ? (blocks[v] - blocks[v].adjoint()).cwiseAbs().maxCoeff() : 0.0;
    if (skew > 1e-12 * (1.0 + scale))
      throw StructuralError("Choi block at vertex " + m.graph()->vertex_name(v) +
                            " is not Hermitian (skew " + std::to_string(skew) + ")");
  }
  const auto ext = kernels::hermitian_extremes(blocks, exec);

  CpVerdict out;
  out.tol = tol;
  out.completely_positive = true;
  out.worst_min_eig = nv ? ext.front().min_eig : 0.0;
  for (std::size_t v = 0; v < nv; ++v) {
    ChoiBlock cb{v, std::move(blocks[v]), ext[v].min_eig, ext[v].max_abs_eig};
    if (cb.min_eig < -tol * (1.0 + cb.norm)) out.completely_positive = false;
    out.worst_min_eig = std::min(out.worst_min_eig, cb.min_eig);
    out.blocks.push_back(std::move(cb));
  }
  return out;
}

CpVerdict pick_feasibility(const std::vector<DualPoint>& points, const std::vector<VertexMatrix>& b,
                           const std::vector<VertexMatrix>& c, double tol) {
  return is_completely_positive(pick_map_matrix(points, b, c), tol);
}

}  // namespace hardy
