#include "hardy/mobius.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace hardy {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

CMatrix hermitian_inv_sqrt(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  if (d.size() && d.minCoeff() <= 0.0) throw ConditioningError("singular defect operator", d.minCoeff());
  return es.eigenvectors() * d.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::size_t CentralPoint::center_dimension() const { return center_basis(*graph()).size(); }

CentralPoint make_central_point(GraphPtr g, const std::vector<std::pair<std::size_t, cplx>>& loops) {
  std::vector<cplx> w(g->edge_count());
  for (const auto& [e, c] : loops) {
    if (e >= g->edge_count()) throw ValidationError("central point refers to an unknown edge");
    if (!g->edge(e).is_loop())
      throw ValidationError("edge " + g->edge(e).name + " is not a loop and is not central");
    w[e] = c;
  }
  CentralPoint p;
  p.point_ = make_dual_point(std::move(g), std::move(w));
  return p;
}

CentralPoint zero_central_point(GraphPtr g) { return make_central_point(std::move(g), {}); }

CMatrix hermitian_sqrt(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix mobius_matrix(const CentralPoint& gamma, const DualPoint& z) {
  require_same_graph(gamma.graph(), z.graph());
  if (!z.in_open_ball()) throw DomainError("Mobius map needs a point in the open unit ball");
  const CMatrix gm = gamma.point().matrix();  // |Q| x |V|
  const CMatrix zs = z.adjoint_matrix();      // |V| x |Q|
  const auto nv = gm.cols(), nq = gm.rows();
  const CMatrix delta = hermitian_sqrt(CMatrix::Identity(nv, nv) - gm.adjoint() * gm);
  const CMatrix delta_star_inv = hermitian_inv_sqrt(CMatrix::Identity(nq, nq) - gm * gm.adjoint());
  const CMatrix lhs = CMatrix::Identity(nv, nv) - zs * gm;
  Eigen::FullPivLU<CMatrix> lu(lhs);
  if (!lu.isInvertible()) throw ConditioningError("I - z^* gamma is singular", lu.rcond());
  return delta * lu.solve(CMatrix(gm.adjoint() - zs)) * delta_star_inv;
}

DualPoint mobius_apply(const CentralPoint& gamma, const DualPoint& z) {
  return dual_point_from_adjoint(z.graph(), mobius_matrix(gamma, z), false, 1e-12);
}

MobiusColligation mobius_colligation(const CentralPoint& gamma) {
  const CMatrix gm = gamma.point().matrix();
  const auto nv = gm.cols(), nq = gm.rows();
  const CMatrix delta = hermitian_sqrt(CMatrix::Identity(nv, nv) - gm.adjoint() * gm);
  const CMatrix delta_star = hermitian_sqrt(CMatrix::Identity(nq, nq) - gm * gm.adjoint());
  const CMatrix delta_star_inv = hermitian_inv_sqrt(CMatrix::Identity(nq, nq) - gm * gm.adjoint());

  MobiusColligation out;
  out.v.resize(nv + nq, nq + nv);
  out.v.topLeftCorner(nv, nq) = delta * gm.adjoint() * delta_star_inv;
  out.v.topRightCorner(nv, nv) = -delta;
  out.v.bottomLeftCorner(nq, nq) = delta_star;
  out.v.bottomRightCorner(nq, nv) = gm;
  const auto n = out.v.rows();
  out.coisometry_residual = spectral_norm(out.v * out.v.adjoint() - CMatrix::Identity(n, n));
  out.isometry_residual = spectral_norm(out.v.adjoint() * out.v - CMatrix::Identity(n, n));
  return out;
}

CpMapMatrix mobius_congruence_maps(const CentralPoint& gamma, const std::vector<DualPoint>& points) {
  if (points.empty()) throw ValidationError("at least one point is required");
  std::vector<DualPoint> images;
  images.reserve(points.size());
  for (const auto& z : points) images.push_back(mobius_apply(gamma, z));

  const auto g = gamma.graph();
  const auto nv = g->vertex_count();
  CpMapMatrix m(g, points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      const CMatrix t = theta_matrix(points[i], points[j]);
      const CMatrix id = CMatrix::Identity(t.rows(), t.cols());
      Eigen::FullPivLU<CMatrix> lu(id - t);
      if (!lu.isInvertible()) throw ConditioningError("id - theta is singular", lu.rcond());
      const CMatrix comp = (id - theta_matrix(images[i], images[j])) * lu.inverse();
      for (std::size_t u = 0; u < nv; ++u) m.on_delta(i, j, u) = comp.col(idx(u)).asDiagonal();
    }
  }
  return m;
}

}  // namespace hardy
