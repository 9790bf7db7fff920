#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/SparseCore>

#include "hardy/graph.hpp"
#include "hardy/types.hpp"

namespace hardy {

// A polynomial element of H^inf(Q): finitely many paths with complex
// coefficients. Vertex paths stand for the projections P_v, edge paths
// for the creation operators S_alpha. Exact zeros are never stored.
class HardyPoly {
 public:
  using Terms = std::map<Path, cplx>;

  explicit HardyPoly(GraphPtr g) : graph_(std::move(g)) {}
  HardyPoly(GraphPtr g, Terms terms);

  static HardyPoly zero(GraphPtr g) { return HardyPoly(std::move(g)); }
  static HardyPoly one(GraphPtr g);                               // sum of all P_v
  static HardyPoly projection(GraphPtr g, std::size_t v);         // P_v
  static HardyPoly shift(GraphPtr g, std::size_t e);              // S_e
  static HardyPoly monomial(GraphPtr g, const Path& p, cplx c = 1.0);

  const GraphPtr& graph() const noexcept { return graph_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t degree() const noexcept;  // 0 for the zero polynomial
  cplx coeff(const Path& p) const;

  // Adds c to the coefficient of p; drops the entry if it becomes exactly zero.
  void add_term(const Path& p, cplx c);

  HardyPoly& operator+=(const HardyPoly& o);
  HardyPoly& operator-=(const HardyPoly& o);
  HardyPoly& operator*=(cplx s);

  friend HardyPoly operator+(HardyPoly a, const HardyPoly& b) { return a += b; }
  friend HardyPoly operator-(HardyPoly a, const HardyPoly& b) { return a -= b; }
  friend HardyPoly operator*(HardyPoly a, cplx s) { return a *= s; }
  friend HardyPoly operator*(cplx s, HardyPoly a) { return a *= s; }
  friend HardyPoly operator*(const HardyPoly& a, const HardyPoly& b);

  // Coefficient equality over the same graph.
  friend bool operator==(const HardyPoly& a, const HardyPoly& b);

 private:
  GraphPtr graph_;
  Terms terms_;
};

// Coefficient of gamma is the sum over factorizations gamma = alpha beta.
HardyPoly hardy_mul(const HardyPoly& x, const HardyPoly& y);

// Restriction to paths of length exactly k.
HardyPoly fourier_coeff(const HardyPoly& x, std::size_t k);

// Paths of length <= N in graded lexicographic order.
struct FockBasis {
  std::size_t truncation = 0;
  std::vector<Path> paths;
  std::map<Path, Eigen::Index> index;

  static FockBasis build(const Graph& g, std::size_t n);
  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(paths.size()); }
};

using SparseCMatrix = Eigen::SparseMatrix<cplx>;

// An operator on l2(paths of length <= N).
struct FockMatrix {
  GraphPtr graph;
  std::size_t truncation = 0;
  std::shared_ptr<const FockBasis> basis;
  SparseCMatrix entries;
};

// Matrix of x on the truncated Fock space. S_alpha maps xi_beta to
// xi_{alpha beta} when composable and |alpha beta| <= N; otherwise to 0.
// Throws ValidationError when N < degree(x).
FockMatrix creation_matrix(const HardyPoly& x, std::size_t n);
FockMatrix creation_matrix(const HardyPoly& x, std::shared_ptr<const FockBasis> basis);

struct RelationDeviation {
  std::string relation;
  double max_deviation = 0.0;
  bool passed = false;
};

struct CuntzToeplitzReport {
  std::size_t truncation = 0;
  double tol = 0.0;
  std::vector<RelationDeviation> relations;  // (i) through (iv)
  bool passed = false;
  double worst() const;
};

// Checks P_v P_u = 0, S_e^* S_f = 0, S_e^* S_e = P_{s(e)} and
// sum_{r(e)=v} S_e S_e^* <= P_v on paths of length <= N - 1.
// Relation (iv) is scored by the most negative Gershgorin lower bound of
// the compressed difference.
CuntzToeplitzReport cuntz_toeplitz_check(const GraphPtr& g, std::size_t n, double tol);

// Largest singular value of creation_matrix(x, N). This is a lower bound for
// the norm of x in H^inf(Q) and is nondecreasing in N.
double fock_norm_bound(const HardyPoly& x, std::size_t n);

// x / (fock_norm_bound(x, N) (1 + slack)); the zero polynomial is returned unchanged.
HardyPoly rescale_to_contraction(const HardyPoly& x, std::size_t n, double slack);

}  // namespace hardy
