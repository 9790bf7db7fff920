#pragma once

#include <string>
#include <vector>

#include "hardy/dual.hpp"
#include "hardy/kernels.hpp"
#include "hardy/types.hpp"

namespace hardy {

// A k x k matrix of linear maps N = C(V) -> B(C^V). Map (i, j) is stored by its
// values on the minimal projections delta_u, i.e. as a V x V x V tensor.
class CpMapMatrix {
 public:
  CpMapMatrix(GraphPtr g, std::size_t k);

  const GraphPtr& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return k_; }
  std::size_t vertex_count() const noexcept { return nv_; }

  // Value of map (i, j) on delta_u.
  const VertexMatrix& on_delta(std::size_t i, std::size_t j, std::size_t u) const;
  VertexMatrix& on_delta(std::size_t i, std::size_t j, std::size_t u);

  // Map (i, j) applied to a diagonal element a.
  VertexMatrix apply(std::size_t i, std::size_t j, const AlgebraElement& a) const;

 private:
  std::size_t slot(std::size_t i, std::size_t j, std::size_t u) const;

  GraphPtr graph_;
  std::size_t k_ = 0;
  std::size_t nv_ = 0;
  std::vector<VertexMatrix> maps_;
};

struct ChoiBlock {
  std::size_t vertex = 0;
  CMatrix matrix;  // (k |V|) x (k |V|), rows indexed by (i, p) with p fastest
  double min_eig = 0.0;
  double norm = 0.0;
};

struct CpVerdict {
  bool completely_positive = false;
  double tol = 0.0;
  double worst_min_eig = 0.0;
  std::vector<ChoiBlock> blocks;
  // A finite sample can only be consistent with the Schur class.
  std::string summary() const;
};

// Entry (i, j) is a -> B_i R_ij(a) B_j^* - C_i R_ij(a) C_j^* with
// R_ij = (id - theta_{eta_i, eta_j})^{-1}.
CpMapMatrix pick_map_matrix(const std::vector<DualPoint>& points, const std::vector<VertexMatrix>& b,
                            const std::vector<VertexMatrix>& c);

// Entry (i, j) is a -> R_ij(a) - Z_i R_ij(a) Z_j^*.
CpMapMatrix schur_kernel_matrix(const std::vector<DualPoint>& points,
                                const std::vector<VertexMatrix>& values);

// Per-vertex Choi block Ch_v[(i,p),(j,q)] = <e_p, m(i,j)(delta_v) e_q>.
CMatrix choi_block(const CpMapMatrix& m, std::size_t v);

// M_k(N) splits as a direct sum over vertices of M_k(C); the matrix of maps is
// CP iff every Choi block is PSD. A block passes when its least eigenvalue is
// >= -tol (1 + ||Ch_v||). Throws StructuralError when a block is not Hermitian
// to 1e-12 relative.
CpVerdict is_completely_positive(const CpMapMatrix& m, double tol = 1e-9,
                                 kernels::Exec exec = kernels::Exec::parallel);

CpVerdict pick_feasibility(const std::vector<DualPoint>& points, const std::vector<VertexMatrix>& b,
                           const std::vector<VertexMatrix>& c, double tol = 1e-9);

}  // namespace hardy
