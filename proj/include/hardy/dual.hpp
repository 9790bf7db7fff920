#pragma once

#include <vector>

#include "hardy/fock.hpp"
#include "hardy/graph.hpp"
#include "hardy/types.hpp"

namespace hardy {

// A point eta of the dual correspondence E(Q^{-1}), stored as the weight
// eta(e^{-1}) for every edge e. As an operator C^V -> E (x) C^V it is the
// |Q| x |V| matrix with entry eta(e^{-1}) at (e, r(e)). Columns have disjoint
// supports, so ||eta||^2 = max_v sum_{r(e)=v} |eta(e^{-1})|^2.
class DualPoint {
 public:
  DualPoint() = default;

  const GraphPtr& graph() const noexcept { return graph_; }
  const std::vector<cplx>& weights() const noexcept { return weights_; }
  cplx weight(std::size_t e) const { return weights_.at(e); }
  double norm() const noexcept { return norm_; }
  bool in_open_ball() const noexcept { return norm_ < 1.0; }

  CMatrix matrix() const;          // |Q| x |V|
  CMatrix adjoint_matrix() const;  // |V| x |Q|, the operator eta^*

  DualPoint scaled(double t) const;

  friend DualPoint make_dual_point(GraphPtr g, std::vector<cplx> weights, bool allow_boundary);

 private:
  GraphPtr graph_;
  std::vector<cplx> weights_;
  double norm_ = 0.0;
};

// Throws DomainError when the norm is >= 1 and allow_boundary is false.
DualPoint make_dual_point(GraphPtr g, std::vector<cplx> weights, bool allow_boundary = false);
DualPoint zero_point(GraphPtr g);

// Point whose adjoint is the given |V| x |Q| matrix. Entries off the admissible
// positions (r(e), e) larger than leak_tol raise StructuralError.
DualPoint dual_point_from_adjoint(GraphPtr g, const CMatrix& adjoint, bool allow_boundary,
                                  double leak_tol);

// theta(a) = <eta1, a eta2>: theta(a)(v) = sum_{r(e)=v} conj(eta1(e^-1)) a(s(e)) eta2(e^-1).
AlgebraElement theta_map(const DualPoint& eta1, const DualPoint& eta2, const AlgebraElement& a);

// |V| x |V| matrix of theta acting on the coordinates of a.
CMatrix theta_matrix(const DualPoint& eta1, const DualPoint& eta2);

// (id - theta)^{-1}(a) by a direct linear solve. Both points must lie in the
// open ball; a singular system raises ConditioningError.
AlgebraElement theta_resolvent(const DualPoint& eta1, const DualPoint& eta2,
                               const AlgebraElement& a);

// Value of x at eta^*: P_v -> theta_{v,v}, S_e -> conj(eta(e^-1)) theta_{r(e),s(e)},
// extended multiplicatively. Boundary points are accepted; the point must
// only belong to the same graph.
VertexMatrix evaluate_poly(const HardyPoly& x, const DualPoint& eta);

}  // namespace hardy
