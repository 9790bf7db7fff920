#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hardy/dual.hpp"
#include "hardy/fock.hpp"
#include "hardy/mobius.hpp"
#include "hardy/types.hpp"

namespace hardy {

// A unitary u on E(Q) commuting with both vertex actions. It is stored as
// blocks over the edges sharing a (source, range) pair; matrix(i, j) is the
// coefficient u_{f,e} of delta_f in u(delta_e) with f = edges[i], e = edges[j].
class BimoduleUnitary {
 public:
  struct Block {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<std::size_t> edges;
    CMatrix matrix;
  };

  const GraphPtr& graph() const noexcept { return graph_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  // |Q| x |Q| matrix with entry (f, e) = u_{f,e}; edges not covered by any block are fixed.
  const CMatrix& edge_matrix() const noexcept { return full_; }

  friend BimoduleUnitary make_bimodule_unitary(GraphPtr g, std::vector<Block> blocks, double tol);

 private:
  GraphPtr graph_;
  std::vector<Block> blocks_;
  CMatrix full_;
};

// Throws ValidationError when an edge is repeated, a block mixes (source,
// range) pairs or a block is not unitary within tol.
BimoduleUnitary make_bimodule_unitary(GraphPtr g, std::vector<BimoduleUnitary::Block> blocks,
                                      double tol = 1e-12);
BimoduleUnitary identity_unitary(GraphPtr g);
// u(delta_e) = phases[e] delta_e.
BimoduleUnitary diagonal_unitary(GraphPtr g, const std::vector<cplx>& phases);

// alpha_u: fixes P_v and replaces each letter e of a path by sum_f u_{f,e} f.
HardyPoly apply_alpha_u(const BimoduleUnitary& u, const HardyPoly& x);

// Point whose adjoint is eta^* (u (x) I).
DualPoint gauge_point(const BimoduleUnitary& u, const DualPoint& eta);
// Point whose adjoint is g_gamma(eta^*) (u (x) I).
DualPoint pullback_point(const CentralPoint& gamma, const BimoduleUnitary& u, const DualPoint& eta);
// Value of alpha(x) at eta^* for alpha = alpha_gamma o alpha_u, computed as x
// evaluated at pullback_point(gamma, u, eta).
VertexMatrix pullback_evaluate(const CentralPoint& gamma, const BimoduleUnitary& u, const HardyPoly& x,
                               const DualPoint& eta);

// Roles in the two-vertex graph: e: v -> w, f: w -> v, g a loop at w.
struct TwoVertexRoles {
  std::size_t v = 0, w = 0;
  std::size_t e = 0, f = 0, g = 0;
};

// Identifies the roles from the graph shape; throws GraphMismatch otherwise.
TwoVertexRoles two_vertex_roles(const Graph& g);

struct AlphaLambda {
  TwoVertexRoles roles;
  HardyPoly te;
  HardyPoly tf;
  HardyPoly tg;
};

// Truncations at degree N of
//   T(e) = -(1 - |lambda|^2)^{1/2} sum_k (lambda S_g)^k S_e
//   T(f) = -S_f
//   T(g) = (conj(lambda) P_w - S_g) sum_k (lambda S_g)^k
// whose values at eta^* are the entries of tau_lambda(eta^*).
AlphaLambda two_vertex_alpha_lambda(GraphPtr g, cplx lambda, std::size_t n);

// Closed form of g_gamma(eta^*) for gamma = lambda delta_{g^-1}, as a |V| x |Q| matrix.
CMatrix tau_lambda_matrix(const DualPoint& eta, cplx lambda);

// Bound on |T_N(x)(eta^*) - tau entry| for the three generators.
double alpha_lambda_tail_bound(cplx lambda, const DualPoint& eta, std::size_t n);

struct IdealReport {
  std::size_t samples = 0;
  std::size_t multiples = 0;
  double commutator_max = 0.0;
  double multiples_max = 0.0;
  double worst() const { return std::max(commutator_max, multiples_max); }
};

// [S_g, S_e S_f] as a polynomial.
HardyPoly two_vertex_commutator(GraphPtr g);

// Evaluates the commutator and `multiples` random products a [S_g, S_e S_f] b
// at every sample and records the largest entry modulus.
IdealReport kernel_ideal_check(const std::vector<DualPoint>& samples, std::size_t multiples,
                               std::uint64_t seed);

}  // namespace hardy
