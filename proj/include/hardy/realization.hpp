#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "hardy/dual.hpp"
#include "hardy/fock.hpp"
#include "hardy/pick.hpp"
#include "hardy/types.hpp"

namespace hardy {

// Colligation V = [[A, B], [C, D]] : E1 (+) H -> E2 (+) (E^sigma (x) H) over the
// diagonal representation with multiplicity m_v at vertex v.
//
// Intertwining with the vertex projections and shifts forces a sparse block
// pattern:
//   A  one scalar per vertex of q1 n q2 (E1 = q1 C^V, E2 = q2 C^V)
//   B  per vertex v in q2, a row of length m_v
//   C  per edge e with s(e) in q1, a column of height m_{r(e)}
//   D  per edge e, an m_{r(e)} x m_{s(e)} block
// The e-component of E^sigma (x) H is a copy of H_{r(e)}, and L_eta^* sends it
// to H_{r(e)} with the factor conj(eta(e^-1)). V is then block diagonal over
// vertices: V_v : [v in q1] + m_v  ->  [v in q2] + sum_{s(e)=v} m_{r(e)}.
struct SystemMatrix {
  GraphPtr graph;
  std::vector<std::size_t> multiplicity;
  std::vector<bool> q1;
  std::vector<bool> q2;
  std::vector<cplx> a;                 // per vertex, zero off q1 n q2
  std::vector<Eigen::RowVectorXcd> b;  // per vertex, empty off q2
  std::vector<CVector> c;              // per edge, empty unless s(e) in q1
  std::vector<CMatrix> d;              // per edge

  // Zero blocks of the right shapes.
  static SystemMatrix zero(GraphPtr g, std::vector<std::size_t> m, std::vector<bool> q1,
                           std::vector<bool> q2);

  std::size_t state_dim() const;
  std::size_t domain_dim(std::size_t v) const;    // [v in q1] + m_v
  std::size_t codomain_dim(std::size_t v) const;  // [v in q2] + sum_{s(e)=v} m_{r(e)}
};

// Throws StructuralError when a block has the wrong shape or A leaks off q1 n q2.
void check_supports(const SystemMatrix& s);

// Per-vertex block V_v with rows ordered (E2_v, then edges from v in edge
// order) and columns (E1_v, then H_v).
CMatrix vertex_block(const SystemMatrix& s, std::size_t v);
// Inverse of vertex_block; the shapes must match exactly.
void set_vertex_block(SystemMatrix& s, std::size_t v, const CMatrix& block);

// Dense V in the global order: columns E1 then H, rows E2 then the edge
// components in edge order.
CMatrix assemble_dense(const SystemMatrix& s);

struct SystemReport {
  double tol = 0.0;
  double norm = 0.0;
  double coisometry_residual = 0.0;  // ||V V^* - I||
  double isometry_residual = 0.0;    // ||V^* V - I||
  double cond11 = 0.0;               // ||I - A A^* - B B^*||
  double cond22 = 0.0;               // ||I - C C^* - D D^*||
  double cond12 = 0.0;               // ||A C^* + B D^*||
  bool graph_full = false;
  bool contractive = false;
  bool coisometric = false;
  bool unitary = false;
  std::string classification;  // unitary, coisometry, isometry, contraction, not contractive
  double worst() const;
};

// A finite coisometric colligation exists only when every vertex block is
// wide, which the graph often rules out, so contractive systems are accepted
// as valid: each admits an infinite-multiplicity coisometric dilation with the
// same transfer function.
SystemReport validate_system(const SystemMatrix& s, double tol = 1e-10);

// A + B (I - L_eta^* D)^{-1} L_eta^* C as a |V| x |V| matrix supported on q2 x q1.
VertexMatrix transfer_eval(const SystemMatrix& s, const DualPoint& eta);

struct TaylorData {
  GraphPtr graph;
  AlgebraElement xi0;                        // A on q1 n q2
  std::vector<std::map<Path, cplx>> terms;   // terms[n] for n = 1..N, terms[0] unused

  HardyPoly polynomial() const;
};

// xi_n(e1...en) = B_{r(e1)} D^(e1) ... D^(e_{n-1}) C^(en). Throws ValidationError
// when more than max_paths paths would have to be visited.
TaylorData taylor_extract(const SystemMatrix& s, std::size_t n, std::size_t max_paths = 2'000'000);

// Distance between the transfer function and the degree-N Taylor polynomial at eta.
double series_residual(const SystemMatrix& s, const DualPoint& eta, std::size_t n);

// V0 + (completion) for an r x c partial isometry with r <= c: the orthogonal
// complement of its range is mapped isometrically from part of the complement
// of its initial space. Throws ValidationError when r > c.
CMatrix extend_to_coisometry(const CMatrix& partial);

// Random system whose vertex blocks are coisometries where the block is wide
// and isometries otherwise.
SystemMatrix random_contractive_system(GraphPtr g, std::vector<std::size_t> m, std::vector<bool> q1,
                                       std::vector<bool> q2, std::mt19937_64& rng);

struct RealizationReport {
  CpVerdict kernel;
  std::vector<std::size_t> gram_rank;
  double gram_min_eig = 0.0;
  double isometry_defect = 0.0;        // max over vertices of ||X1^* X1 - Y^* Y||
  double interpolation_residual = 0.0; // max_i ||transfer(eta_i) - Z_i||
  bool padded = false;
  std::string note;
};

struct Realization {
  SystemMatrix system;
  RealizationReport report;
};

// Finite Kolmogorov construction. The Schur kernel of the samples is
// factored vertex by vertex, the lurking isometry is solved by a
// pseudo-inverse and each vertex block is completed to a coisometry when it
// is wide enough (multiplicities are padded when that makes every block wide).
// Throws FeasibilityError when the kernel is not CP at tol, ConditioningError
// when the sample residual exceeds 10 tol.
Realization realize_from_samples(const std::vector<DualPoint>& points,
                                 const std::vector<VertexMatrix>& values, std::vector<bool> q1,
                                 std::vector<bool> q2, double tol = 1e-9, double rank_tol = 1e-9);

}  // namespace hardy
