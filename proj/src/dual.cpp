#include "hardy/dual.hpp"

#include <cmath>

namespace hardy {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double point_norm(const Graph& g, const std::vector<cplx>& w) {
  double best = 0.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    double col = 0.0;
    for (auto e : g.edges_into(v)) col += std::norm(w[e]);
    best = std::max(best, col);
  }
  return std::sqrt(best);
}

}  // namespace

DualPoint make_dual_point(GraphPtr g, std::vector<cplx> weights, bool allow_boundary) {
  if (!g) throw ValidationError("dual point needs a graph");
  if (weights.size() != g->edge_count())
    throw ValidationError("dual point needs exactly one weight per edge");
  DualPoint p;
  p.norm_ = point_norm(*g, weights);
  if (!allow_boundary && !(p.norm_ < 1.0))
    throw DomainError("dual point norm " + std::to_string(p.norm_) + " is not below 1");
  p.graph_ = std::move(g);
  p.weights_ = std::move(weights);
  return p;
}

DualPoint zero_point(GraphPtr g) {
  const auto n = g->edge_count();
  return make_dual_point(std::move(g), std::vector<cplx>(n));
}

CMatrix DualPoint::matrix() const {
  const Graph& g = *graph_;
  CMatrix m = CMatrix::Zero(idx(g.edge_count()), idx(g.vertex_count()));
  for (std::size_t e = 0; e < g.edge_count(); ++e) m(idx(e), idx(g.dst(e))) = weights_[e];
  return m;
}

CMatrix DualPoint::adjoint_matrix() const { return matrix().adjoint(); }

DualPoint DualPoint::scaled(double t) const {
  auto w = weights_;
  for (auto& x : w) x *= t;
  return make_dual_point(graph_, std::move(w), true);
}

DualPoint dual_point_from_adjoint(GraphPtr g, const CMatrix& adjoint, bool allow_boundary,
                                  double leak_tol) {
  if (adjoint.rows() != idx(g->vertex_count()) || adjoint.cols() != idx(g->edge_count()))
    throw ValidationError("adjoint matrix must be |V| x |Q|");
  CMatrix rest = adjoint;
  std::vector<cplx> w(g->edge_count());
  for (std::size_t e = 0; e < g->edge_count(); ++e) {
    w[e] = std::conj(adjoint(idx(g->dst(e)), idx(e)));
    rest(idx(g->dst(e)), idx(e)) = 0.0;
  }
  const double leak = rest.size() ? rest.cwiseAbs().maxCoeff() : 0.0;
  if (leak > leak_tol)
    throw StructuralError("adjoint matrix has mass " + std::to_string(leak) +
                          " outside the admissible (r(e), e) positions");
  return make_dual_point(std::move(g), std::move(w), allow_boundary);
}

CMatrix theta_matrix(const DualPoint& eta1, const DualPoint& eta2) {
  require_same_graph(eta1.graph(), eta2.graph());
  const Graph& g = *eta1.graph();
  CMatrix t = CMatrix::Zero(idx(g.vertex_count()), idx(g.vertex_count()));
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    t(idx(g.dst(e)), idx(g.src(e))) += std::conj(eta1.weight(e)) * eta2.weight(e);
  return t;
}

AlgebraElement theta_map(const DualPoint& eta1, const DualPoint& eta2, const AlgebraElement& a) {
  require_same_graph(eta1.graph(), a.graph);
  return {a.graph, theta_matrix(eta1, eta2) * a.values};
}

AlgebraElement theta_resolvent(const DualPoint& eta1, const DualPoint& eta2,
                               const AlgebraElement& a) {
  if (!eta1.in_open_ball() || !eta2.in_open_ball())
    throw DomainError("resolvent of theta needs points in the open unit ball");
  require_same_graph(eta1.graph(), a.graph);
  const CMatrix t = theta_matrix(eta1, eta2);
  const CMatrix lhs = CMatrix::Identity(t.rows(), t.cols()) - t;
  Eigen::FullPivLU<CMatrix> lu(lhs);
  if (!lu.isInvertible())
    throw ConditioningError("id - theta is singular", lu.rcond());
  return {a.graph, lu.solve(a.values)};
}

VertexMatrix evaluate_poly(const HardyPoly& x, const DualPoint& eta) {
  require_same_graph(x.graph(), eta.graph());
  const Graph& g = *x.graph();
  VertexMatrix out = VertexMatrix::Zero(idx(g.vertex_count()), idx(g.vertex_count()));
  for (const auto& [p, c] : x.terms()) {
    if (p.is_vertex()) {
      out(idx(p.vertex), idx(p.vertex)) += c;
      continue;
    }
    cplx w = c;
    for (auto e : p.edges) w *= std::conj(eta.weight(e));
    out(idx(p.range(g)), idx(p.source(g))) += w;
  }
  return out;
}

}  // namespace hardy
