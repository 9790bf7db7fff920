#pragma once

#include <utility>
#include <vector>

#include "hardy/dual.hpp"
#include "hardy/pick.hpp"
#include "hardy/types.hpp"

namespace hardy {

// A point gamma of the open unit ball of the center of E^sigma: weights on
// loop edges only.
class CentralPoint {
 public:
  const GraphPtr& graph() const noexcept { return point_.graph(); }
  const DualPoint& point() const noexcept { return point_; }
  double norm() const noexcept { return point_.norm(); }
  // Number of loops in the graph; zero means the center is trivial and
  // g_gamma is just z -> -z.
  std::size_t center_dimension() const;

  friend CentralPoint make_central_point(GraphPtr g, const std::vector<std::pair<std::size_t, cplx>>& loops);

 private:
  DualPoint point_;
};

// Throws ValidationError for a non-loop edge, DomainError when ||gamma|| >= 1.
CentralPoint make_central_point(GraphPtr g, const std::vector<std::pair<std::size_t, cplx>>& loops);
CentralPoint zero_central_point(GraphPtr g);

// Positive square root of a Hermitian positive semidefinite matrix.
CMatrix hermitian_sqrt(const CMatrix& h);

// g_gamma(z^*) = Delta (I - z^* gamma)^{-1} (gamma^* - z^*) Delta_*^{-1} as a
// |V| x |Q| matrix, with Delta = (I - gamma^* gamma)^{1/2} and
// Delta_* = (I - gamma gamma^*)^{1/2}.
CMatrix mobius_matrix(const CentralPoint& gamma, const DualPoint& z);

// The point whose adjoint is g_gamma(z^*). Throws StructuralError if the
// matrix leaks off the admissible entries by more than 1e-12.
DualPoint mobius_apply(const CentralPoint& gamma, const DualPoint& z);

struct MobiusColligation {
  CMatrix v;  // (|V| + |Q|) x (|Q| + |V|)
  double coisometry_residual = 0.0;
  double isometry_residual = 0.0;
};

// V = [[Delta gamma^* Delta_*^{-1}, -Delta], [Delta_*, gamma]] from
// (E (x) C^V) + C^V to C^V + (E^sigma (x) C^V), both edge spaces in edge order.
MobiusColligation mobius_colligation(const CentralPoint& gamma);

// Entry (i, j): (id - theta_{g(z_i^*)^*, g(z_j^*)^*}) o (id - theta_{z_i, z_j})^{-1}.
CpMapMatrix mobius_congruence_maps(const CentralPoint& gamma, const std::vector<DualPoint>& points);

}  // namespace hardy
