#include "hardy/realization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace hardy {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::vector<std::size_t> state_offsets(const SystemMatrix& s) {
  std::vector<std::size_t> off(s.multiplicity.size() + 1, 0);
  for (std::size_t v = 0; v < s.multiplicity.size(); ++v) off[v + 1] = off[v] + s.multiplicity[v];
  return off;
}

void require_shape(bool ok, const std::string& what) {
  if (!ok) throw StructuralError("system matrix: " + what);
}

CMatrix random_gaussian(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) g(i, j) = cplx(n(rng), n(rng));
  return g;
}

// Orthonormal columns spanning the column space of a tall Gaussian matrix.
CMatrix orthonormal_columns(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  const CMatrix g = random_gaussian(r, c, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(r, c);
}

}  // namespace

SystemMatrix SystemMatrix::zero(GraphPtr g, std::vector<std::size_t> m, std::vector<bool> q1,
                                std::vector<bool> q2) {
  const auto nv = g->vertex_count();
  if (m.size() != nv || q1.size() != nv || q2.size() != nv)
    throw ValidationError("multiplicities and q1, q2 need one entry per vertex");
  SystemMatrix s;
  s.graph = g;
  s.multiplicity = std::move(m);
  s.q1 = std::move(q1);
  s.q2 = std::move(q2);
  s.a.assign(nv, cplx{});
  s.b.resize(nv);
  for (std::size_t v = 0; v < nv; ++v)
    s.b[v] = Eigen::RowVectorXcd::Zero(s.q2[v] ? idx(s.multiplicity[v]) : 0);
  s.c.resize(g->edge_count());
  s.d.resize(g->edge_count());
  for (std::size_t e = 0; e < g->edge_count(); ++e) {
    const auto r = idx(s.multiplicity[g->dst(e)]);
    s.c[e] = CVector::Zero(s.q1[g->src(e)] ? r : 0);
    s.d[e] = CMatrix::Zero(r, idx(s.multiplicity[g->src(e)]));
  }
  return s;
}

std::size_t SystemMatrix::state_dim() const {
  std::size_t n = 0;
  for (auto m : multiplicity) n += m;
  return n;
}

std::size_t SystemMatrix::domain_dim(std::size_t v) const {
  return (q1[v] ? 1 : 0) + multiplicity[v];
}

std::size_t SystemMatrix::codomain_dim(std::size_t v) const {
  std::size_t n = q2[v] ? 1 : 0;
  for (auto e : graph->edges_from(v)) n += multiplicity[graph->dst(e)];
  return n;
}

void check_supports(const SystemMatrix& s) {
  require_shape(static_cast<bool>(s.graph), "missing graph");
  const Graph& g = *s.graph;
  const auto nv = g.vertex_count();
  require_shape(s.multiplicity.size() == nv && s.q1.size() == nv && s.q2.size() == nv,
                "multiplicities and q1, q2 need one entry per vertex");
  require_shape(s.a.size() == nv && s.b.size() == nv, "A and B need one entry per vertex");
  require_shape(s.c.size() == g.edge_count() && s.d.size() == g.edge_count(),
                "C and D need one entry per edge");
  for (std::size_t v = 0; v < nv; ++v) {
    if (!(s.q1[v] && s.q2[v]) && s.a[v] != cplx{})
      throw StructuralError("A has an entry at vertex " + g.vertex_name(v) + " outside q1 n q2");
    const auto want = s.q2[v] ? idx(s.multiplicity[v]) : 0;
    require_shape(s.b[v].size() == want, "B block at vertex " + g.vertex_name(v) + " has the wrong length");
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto r = idx(s.multiplicity[g.dst(e)]);
    require_shape(s.c[e].size() == (s.q1[g.src(e)] ? r : 0),
                  "C block at edge " + g.edge(e).name + " has the wrong height");
    require_shape(s.d[e].rows() == r && s.d[e].cols() == idx(s.multiplicity[g.src(e)]),
                  "D block at edge " + g.edge(e).name + " has the wrong shape");
  }
}

CMatrix vertex_block(const SystemMatrix& s, std::size_t v) {
  const Graph& g = *s.graph;
  const auto m = idx(s.multiplicity[v]);
  const Eigen::Index c0 = s.q1[v] ? 1 : 0;
  CMatrix blk = CMatrix::Zero(idx(s.codomain_dim(v)), idx(s.domain_dim(v)));
  Eigen::Index row = 0;
  if (s.q2[v]) {
    if (s.q1[v]) blk(0, 0) = s.a[v];
    blk.block(0, c0, 1, m) = s.b[v];
    row = 1;
  }
  for (auto e : g.edges_from(v)) {
    const auto h = idx(s.multiplicity[g.dst(e)]);
    if (s.q1[v]) blk.block(row, 0, h, 1) = s.c[e];
    blk.block(row, c0, h, m) = s.d[e];
    row += h;
  }
  return blk;
}

void set_vertex_block(SystemMatrix& s, std::size_t v, const CMatrix& blk) {
  const Graph& g = *s.graph;
  if (blk.rows() != idx(s.codomain_dim(v)) || blk.cols() != idx(s.domain_dim(v)))
    throw ValidationError("vertex block has the wrong shape");
  const auto m = idx(s.multiplicity[v]);
  const Eigen::Index c0 = s.q1[v] ? 1 : 0;
  Eigen::Index row = 0;
  if (s.q2[v]) {
    s.a[v] = s.q1[v] ? blk(0, 0) : cplx{};
    s.b[v] = blk.block(0, c0, 1, m);
    row = 1;
  }
  for (auto e : g.edges_from(v)) {
    const auto h = idx(s.multiplicity[g.dst(e)]);
    if (s.q1[v]) s.c[e] = blk.block(row, 0, h, 1);
    s.d[e] = blk.block(row, c0, h, m);
    row += h;
  }
}

CMatrix assemble_dense(const SystemMatrix& s) {
  check_supports(s);
  const Graph& g = *s.graph;
  const auto nv = g.vertex_count();
  std::vector<Eigen::Index> e1(nv, -1), e2(nv, -1);
  Eigen::Index n1 = 0, n2 = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    if (s.q1[v]) e1[v] = n1++;
    if (s.q2[v]) e2[v] = n2++;
  }
  const auto hoff = state_offsets(s);
  std::vector<Eigen::Index> eoff(g.edge_count() + 1, 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    eoff[e + 1] = eoff[e] + idx(s.multiplicity[g.dst(e)]);

  const auto nh = idx(hoff.back());
  CMatrix dense = CMatrix::Zero(n2 + eoff.back(), n1 + nh);
  for (std::size_t v = 0; v < nv; ++v) {
    const auto m = idx(s.multiplicity[v]);
    if (s.q2[v]) {
      if (s.q1[v]) dense(e2[v], e1[v]) = s.a[v];
      dense.block(e2[v], n1 + idx(hoff[v]), 1, m) = s.b[v];
    }
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto src = g.src(e);
    const auto h = idx(s.multiplicity[g.dst(e)]);
    if (s.q1[src]) dense.block(n2 + eoff[e], e1[src], h, 1) = s.c[e];
    dense.block(n2 + eoff[e], n1 + idx(hoff[src]), h, idx(s.multiplicity[src])) = s.d[e];
  }
  return dense;
}

double SystemReport::worst() const {
  if (coisometric) return coisometry_residual;
  return std::max(0.0, norm - 1.0);
}

SystemReport validate_system(const SystemMatrix& s, double tol) {
  const CMatrix v = assemble_dense(s);
  Eigen::Index n2 = 0;
  for (bool b : s.q2) n2 += b ? 1 : 0;

  SystemReport rep;
  rep.tol = tol;
  rep.graph_full = fullness_flags(*s.graph).is_full;
  rep.norm = spectral_norm(v);
  const CMatrix vv = v * v.adjoint() - CMatrix::Identity(v.rows(), v.rows());
  const CMatrix vtv = v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols());
  rep.coisometry_residual = spectral_norm(vv);
  rep.isometry_residual = spectral_norm(vtv);
  const auto ne = v.rows() - n2;
  rep.cond11 = spectral_norm(vv.topLeftCorner(n2, n2));
  rep.cond22 = spectral_norm(vv.bottomRightCorner(ne, ne));
  rep.cond12 = spectral_norm(vv.topRightCorner(n2, ne));

  rep.contractive = rep.norm <= 1.0 + tol;
  rep.coisometric = rep.coisometry_residual <= tol;
  const bool isometric = rep.isometry_residual <= tol;
  rep.unitary = rep.coisometric && isometric;
  if (rep.unitary)
    rep.classification = "unitary";
  else if (rep.coisometric)
    rep.classification = "coisometry";
  else if (isometric)
    rep.classification = "isometry";
  else if (rep.contractive)
    rep.classification = "contraction";
  else
    rep.classification = "not contractive";
  return rep;
}

VertexMatrix transfer_eval(const SystemMatrix& s, const DualPoint& eta) {
  check_supports(s);
  require_same_graph(s.graph, eta.graph());
  if (!eta.in_open_ball()) throw DomainError("transfer function needs a point in the open unit ball");
  const Graph& g = *s.graph;
  const auto nv = g.vertex_count();
  const auto off = state_offsets(s);
  const auto nh = idx(off.back());

  CMatrix ld = CMatrix::Zero(nh, nh);
  CMatrix lc = CMatrix::Zero(nh, idx(nv));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto r = g.dst(e), src = g.src(e);
    const cplx w = std::conj(eta.weight(e));
    const auto h = idx(s.multiplicity[r]);
    ld.block(idx(off[r]), idx(off[src]), h, idx(s.multiplicity[src])) += w * s.d[e];
    if (s.q1[src]) lc.block(idx(off[r]), idx(src), h, 1) += w * s.c[e];
  }
  CMatrix bfull = CMatrix::Zero(idx(nv), nh);
  VertexMatrix z = VertexMatrix::Zero(idx(nv), idx(nv));
  for (std::size_t v = 0; v < nv; ++v) {
    if (s.q2[v]) bfull.block(idx(v), idx(off[v]), 1, idx(s.multiplicity[v])) = s.b[v];
    z(idx(v), idx(v)) = s.a[v];
  }
  if (nh == 0) return z;
  const CMatrix x = Eigen::PartialPivLU<CMatrix>(CMatrix::Identity(nh, nh) - ld).solve(lc);
  z += bfull * x;
  return z;
}

HardyPoly TaylorData::polynomial() const {
  HardyPoly x(graph);
  for (Eigen::Index v = 0; v < xi0.values.size(); ++v)
    x.add_term(Path::at_vertex(static_cast<std::size_t>(v)), xi0.values(v));
  for (const auto& level : terms)
    for (const auto& [p, c] : level) x.add_term(p, c);
  return x;
}

TaylorData taylor_extract(const SystemMatrix& s, std::size_t n, std::size_t max_paths) {
  check_supports(s);
  const Graph& g = *s.graph;
  TaylorData t;
  t.graph = s.graph;
  t.xi0 = AlgebraElement::zero(s.graph);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) t.xi0.values(idx(v)) = s.a[v];
  t.terms.resize(n + 1);

  std::size_t visited = 0;
  std::vector<std::size_t> stack;
  // row = B_{r(e1)} D^(e1) ... D^(e_{j-1}), a row over H_{r(e_j)}.
  std::function<void(const Eigen::RowVectorXcd&, std::size_t)> walk =
      [&](const Eigen::RowVectorXcd& row, std::size_t e) {
        if (++visited > max_paths)
          throw ValidationError("taylor_extract: more than " + std::to_string(max_paths) +
                                " paths; lower N");
        stack.push_back(e);
        const auto src = g.src(e);
        if (s.q1[src]) {
          const cplx coef = (row * s.c[e])(0);
          if (coef != cplx{}) t.terms[stack.size()].emplace(Path::of_edges(stack), coef);
        }
        if (stack.size() < n && s.multiplicity[src] > 0) {
          const Eigen::RowVectorXcd next = row * s.d[e];
          for (auto f : g.edges_into(src)) walk(next, f);
        }
        stack.pop_back();
      };
  if (n > 0) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto r = g.dst(e);
      if (!s.q2[r] || s.multiplicity[r] == 0) continue;
      walk(s.b[r], e);
    }
  }
  return t;
}

double series_residual(const SystemMatrix& s, const DualPoint& eta, std::size_t n) {
  const VertexMatrix z = transfer_eval(s, eta);
  return spectral_norm(z - evaluate_poly(taylor_extract(s, n).polynomial(), eta));
}

CMatrix extend_to_coisometry(const CMatrix& partial) {
  const auto r = partial.rows(), c = partial.cols();
  if (r > c) throw ValidationError("coisometric completion needs at least as many columns as rows");
  if (r == 0) return partial;
  Eigen::JacobiSVD<CMatrix> svd(partial, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > 0.5) ++rank;
  const auto extra = r - rank;
  CMatrix out = partial;
  if (extra > 0)
    out += svd.matrixU().rightCols(extra) * svd.matrixV().middleCols(rank, extra).adjoint();
  return out;
}

SystemMatrix random_contractive_system(GraphPtr g, std::vector<std::size_t> m, std::vector<bool> q1,
                                       std::vector<bool> q2, std::mt19937_64& rng) {
  SystemMatrix s = SystemMatrix::zero(std::move(g), std::move(m), std::move(q1), std::move(q2));
  for (std::size_t v = 0; v < s.graph->vertex_count(); ++v) {
    const auto r = idx(s.codomain_dim(v)), c = idx(s.domain_dim(v));
    if (r == 0 || c == 0) continue;
    const CMatrix blk = r <= c ? CMatrix(orthonormal_columns(c, r, rng).adjoint())
                               : orthonormal_columns(r, c, rng);
    set_vertex_block(s, v, blk);
  }
  return s;
}

Realization realize_from_samples(const std::vector<DualPoint>& points,
                                 const std::vector<VertexMatrix>& values, std::vector<bool> q1,
                                 std::vector<bool> q2, double tol, double rank_tol) {
  if (points.empty()) throw ValidationError("realization needs at least one sample");
  const GraphPtr gp = points.front().graph();
  const Graph& g = *gp;
  const auto nv = g.vertex_count();
  const auto k = points.size();
  if (q1.size() != nv || q2.size() != nv)
    throw ValidationError("q1 and q2 need one flag per vertex");
  for (const auto& z : values) {
    if (z.rows() != idx(nv) || z.cols() != idx(nv))
      throw ValidationError("sample values must be |V| x |V|");
    for (std::size_t w = 0; w < nv; ++w)
      for (std::size_t u = 0; u < nv; ++u)
        if (!(q2[w] && q1[u]) && std::abs(z(idx(w), idx(u))) > tol)
          throw ValidationError("sample value has an entry outside q2 x q1");
  }

  Realization out;
  auto& rep = out.report;
  rep.kernel = is_completely_positive(schur_kernel_matrix(points, values), tol);
  if (!rep.kernel.completely_positive)
    throw FeasibilityError("Schur kernel of the samples is not completely positive (min eigenvalue " +
                           std::to_string(rep.kernel.worst_min_eig) + ")");

  // Columns of the Gram factors are the symbols (i, w) with w in q2.
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t w = 0; w < nv; ++w)
      if (q2[w]) cols.push_back(i * nv + w);
  const auto n = idx(cols.size());

  std::vector<CMatrix> gram(nv);
  std::vector<Eigen::SelfAdjointEigenSolver<CMatrix>> eig(nv);
  double lmax = 0.0;
  rep.gram_min_eig = 0.0;
  for (std::size_t v = 0; v < nv; ++v) {
    const CMatrix& ch = rep.kernel.blocks[v].matrix;
    gram[v].resize(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) gram[v](a, b) = ch(idx(cols[a]), idx(cols[b]));
    if (n == 0) continue;
    eig[v].compute(0.5 * (gram[v] + gram[v].adjoint()));
    const auto& ev = eig[v].eigenvalues();
    lmax = std::max(lmax, ev(n - 1));
    rep.gram_min_eig = v == 0 ? ev(0) : std::min(rep.gram_min_eig, ev(0));
  }
  if (rep.gram_min_eig < -tol * (1.0 + lmax))
    throw ConditioningError("Gram matrix is indefinite beyond tolerance", rep.gram_min_eig);

  std::vector<CMatrix> xfac(nv);
  rep.gram_rank.assign(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (n == 0) {
      xfac[v].resize(0, 0);
      continue;
    }
    const auto& ev = eig[v].eigenvalues();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = n - 1; j >= 0; --j)
      if (ev(j) > rank_tol * lmax && ev(j) > 0.0) keep.push_back(j);
    xfac[v].resize(idx(keep.size()), n);
    for (std::size_t r = 0; r < keep.size(); ++r)
      xfac[v].row(idx(r)) = std::sqrt(ev(keep[r])) * eig[v].eigenvectors().col(keep[r]).adjoint();
    rep.gram_rank[v] = keep.size();
  }

  // Greedy padding: widen every vertex block so that it can be completed to a
  // coisometry. Padding one vertex lengthens the blocks of its predecessors,
  // so this may not terminate; in that case the ranks are kept.
  std::vector<std::size_t> m = rep.gram_rank;
  {
    std::vector<std::size_t> trial = m;
    bool ok = false;
    std::size_t total_cap = 64 + 8 * nv;
    for (int round = 0; round < 64 && !ok; ++round) {
      ok = true;
      std::size_t total = 0;
      for (std::size_t v = 0; v < nv; ++v) {
        std::size_t r = q2[v] ? 1 : 0;
        for (auto e : g.edges_from(v)) r += trial[g.dst(e)];
        const std::size_t c = (q1[v] ? 1 : 0) + trial[v];
        if (r > c) {
          trial[v] += r - c;
          ok = false;
        }
        total += trial[v];
      }
      if (total > total_cap) break;
    }
    if (ok && trial != m) {
      m = trial;
      rep.padded = true;
    }
  }

  SystemMatrix sys = SystemMatrix::zero(gp, m, q1, q2);
  auto padded = [&](std::size_t v) {
    CMatrix x = CMatrix::Zero(idx(m[v]), n);
    x.topRows(xfac[v].rows()) = xfac[v];
    return x;
  };

  bool all_wide = true;
  rep.isometry_defect = 0.0;
  for (std::size_t v = 0; v < nv; ++v) {
    const auto rv = idx(sys.codomain_dim(v)), cv = idx(sys.domain_dim(v));
    CMatrix x1 = CMatrix::Zero(cv, n);
    CMatrix y = CMatrix::Zero(rv, n);
    for (Eigen::Index col = 0; col < n; ++col) {
      const auto i = cols[col] / nv, w = cols[col] % nv;
      if (q1[v]) x1(0, col) = std::conj(values[i](idx(w), idx(v)));
      if (q2[v]) y(0, col) = v == w ? 1.0 : 0.0;
    }
    x1.bottomRows(idx(m[v])) = padded(v);
    Eigen::Index row = q2[v] ? 1 : 0;
    for (auto e : g.edges_from(v)) {
      const auto h = idx(m[g.dst(e)]);
      const CMatrix xr = padded(g.dst(e));
      for (Eigen::Index col = 0; col < n; ++col)
        y.block(row, col, h, 1) = points[cols[col] / nv].weight(e) * xr.col(col);
      row += h;
    }

    const double defect = n ? spectral_norm(x1.adjoint() * x1 - y.adjoint() * y) : 0.0;
    rep.isometry_defect = std::max(rep.isometry_defect, defect);

    // V0 = Y X1^+ with a cutoff below which X1 and Y cannot be told apart.
    CMatrix v0 = CMatrix::Zero(rv, cv);
    if (rv > 0 && cv > 0 && n > 0) {
      Eigen::JacobiSVD<CMatrix> svd(x1, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      const double cut = std::max(1e-12 * sv(0), 10.0 * std::sqrt(defect));
      for (Eigen::Index j = 0; j < sv.size(); ++j) {
        if (sv(j) <= cut) break;
        v0 += (y * svd.matrixV().col(j)) * (svd.matrixU().col(j).adjoint() / sv(j));
      }
    }
    if (rv <= cv)
      v0 = extend_to_coisometry(v0);
    else
      all_wide = false;
    set_vertex_block(sys, v, v0);
  }
  rep.note = all_wide ? "vertex blocks completed to coisometries"
                      : "some vertex blocks are taller than wide; returned a contractive partial isometry";

  rep.interpolation_residual = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    rep.interpolation_residual =
        std::max(rep.interpolation_residual, spectral_norm(transfer_eval(sys, points[i]) - values[i]));
  if (rep.interpolation_residual > 10.0 * tol)
    throw ConditioningError("realized system misses the samples by " +
                                std::to_string(rep.interpolation_residual),
                            rep.interpolation_residual);
  out.system = std::move(sys);
  return out;
}

}  // namespace hardy
