#include "hardy/fock.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/kernels.hpp"

namespace hardy {

HardyPoly::HardyPoly(GraphPtr g, Terms terms) : graph_(std::move(g)) {
  for (const auto& [p, c] : terms) add_term(p, c);
}

HardyPoly HardyPoly::one(GraphPtr g) {
  HardyPoly x(g);
  for (std::size_t v = 0; v < g->vertex_count(); ++v) x.add_term(Path::at_vertex(v), 1.0);
  return x;
}

HardyPoly HardyPoly::projection(GraphPtr g, std::size_t v) {
  return monomial(std::move(g), Path::at_vertex(v));
}

HardyPoly HardyPoly::shift(GraphPtr g, std::size_t e) {
  return monomial(std::move(g), Path::of_edges({e}));
}

HardyPoly HardyPoly::monomial(GraphPtr g, const Path& p, cplx c) {
  if (!is_composable(*g, p)) throw ValidationError("path is not composable in this graph");
  HardyPoly x(std::move(g));
  x.add_term(p, c);
  return x;
}

std::size_t HardyPoly::degree() const noexcept {
  return terms_.empty() ? 0 : terms_.rbegin()->first.length();
}

cplx HardyPoly::coeff(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? cplx{} : it->second;
}

void HardyPoly::add_term(const Path& p, cplx c) {
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (inserted) return;
  it->second += c;
  if (it->second == cplx{}) terms_.erase(it);
}

HardyPoly& HardyPoly::operator+=(const HardyPoly& o) {
  require_same_graph(graph_, o.graph_);
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

HardyPoly& HardyPoly::operator-=(const HardyPoly& o) {
  require_same_graph(graph_, o.graph_);
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

HardyPoly& HardyPoly::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

HardyPoly operator*(const HardyPoly& a, const HardyPoly& b) { return hardy_mul(a, b); }

bool operator==(const HardyPoly& a, const HardyPoly& b) {
  return same_graph(a.graph_, b.graph_) && a.terms_ == b.terms_;
}

HardyPoly hardy_mul(const HardyPoly& x, const HardyPoly& y) {
  require_same_graph(x.graph(), y.graph());
  const Graph& g = *x.graph();
  HardyPoly out(x.graph());
  for (const auto& [alpha, a] : x.terms()) {
    for (const auto& [beta, b] : y.terms()) {
      if (auto gamma = concatenate(g, alpha, beta)) out.add_term(*gamma, a * b);
    }
  }
  return out;
}

HardyPoly fourier_coeff(const HardyPoly& x, std::size_t k) {
  HardyPoly out(x.graph());
  for (const auto& [p, c] : x.terms())
    if (p.length() == k) out.add_term(p, c);
  return out;
}

FockBasis FockBasis::build(const Graph& g, std::size_t n) {
  FockBasis b;
  b.truncation = n;
  for (std::size_t k = 0; k <= n; ++k) {
    auto level = path_basis(g, k);
    b.paths.insert(b.paths.end(), std::make_move_iterator(level.begin()),
                   std::make_move_iterator(level.end()));
  }
  for (std::size_t i = 0; i < b.paths.size(); ++i)
    b.index.emplace(b.paths[i], static_cast<Eigen::Index>(i));
  return b;
}

FockMatrix creation_matrix(const HardyPoly& x, std::size_t n) {
  return creation_matrix(x, std::make_shared<const FockBasis>(FockBasis::build(*x.graph(), n)));
}

FockMatrix creation_matrix(const HardyPoly& x, std::shared_ptr<const FockBasis> basis) {
  const std::size_t n = basis->truncation;
  if (n < x.degree()) throw ValidationError("truncation degree is below the polynomial degree");
  const Graph& g = *x.graph();
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index col = 0; col < basis->size(); ++col) {
    const Path& beta = basis->paths[static_cast<std::size_t>(col)];
    for (const auto& [alpha, c] : x.terms()) {
      if (alpha.length() + beta.length() > n) continue;
      auto prod = concatenate(g, alpha, beta);
      if (!prod) continue;
      trips.emplace_back(basis->index.at(*prod), col, c);
    }
  }
  FockMatrix m{x.graph(), n, basis, SparseCMatrix(basis->size(), basis->size())};
  m.entries.setFromTriplets(trips.begin(), trips.end());
  return m;
}

double CuntzToeplitzReport::worst() const {
  double w = 0.0;
  for (const auto& r : relations) w = std::max(w, r.max_deviation);
  return w;
}

namespace {

double max_abs(const SparseCMatrix& m) {
  double out = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseCMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  return out;
}

}  // namespace

CuntzToeplitzReport cuntz_toeplitz_check(const GraphPtr& gp, std::size_t n, double tol) {
  if (n < 2) throw ValidationError("Cuntz-Toeplitz check needs truncation N >= 2");
  const Graph& g = *gp;
  auto basis = std::make_shared<const FockBasis>(FockBasis::build(g, n));
  const Eigen::Index dim = basis->size();

  std::vector<SparseCMatrix> proj, shift;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    proj.push_back(creation_matrix(HardyPoly::projection(gp, v), basis).entries);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    shift.push_back(creation_matrix(HardyPoly::shift(gp, e), basis).entries);

  // Compression onto paths of length <= N - 1.
  SparseCMatrix restrict_(dim, dim);
  {
    std::vector<Eigen::Triplet<cplx>> trips;
    for (Eigen::Index i = 0; i < dim; ++i)
      if (basis->paths[static_cast<std::size_t>(i)].length() + 1 <= n) trips.emplace_back(i, i, 1.0);
    restrict_.setFromTriplets(trips.begin(), trips.end());
  }

  double dev_i = 0.0, dev_ii = 0.0, dev_iii = 0.0, dev_iv = 0.0;
  for (std::size_t v = 0; v < proj.size(); ++v)
    for (std::size_t u = 0; u < proj.size(); ++u)
      if (u != v) dev_i = std::max(dev_i, max_abs(SparseCMatrix(proj[v] * proj[u])));

  for (std::size_t e = 0; e < shift.size(); ++e) {
    SparseCMatrix adj = shift[e].adjoint();
    for (std::size_t f = 0; f < shift.size(); ++f) {
      SparseCMatrix prod = adj * shift[f] * restrict_;
      if (e == f) prod -= proj[g.src(e)] * restrict_;
      auto& slot = e == f ? dev_iii : dev_ii;
      slot = std::max(slot, max_abs(prod));
    }
  }

  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    SparseCMatrix diff = proj[v];
    for (auto e : g.edges_into(v)) diff -= SparseCMatrix(shift[e] * shift[e].adjoint());
    SparseCMatrix comp = restrict_ * diff * restrict_;
    comp.makeCompressed();
    // Gershgorin: every eigenvalue is >= min_i (re D_ii - sum_{j != i} |D_ij|).
    Eigen::VectorXd lower = Eigen::VectorXd::Zero(dim);
    for (int k = 0; k < comp.outerSize(); ++k)
      for (SparseCMatrix::InnerIterator it(comp, k); it; ++it) {
        if (it.row() == it.col())
          lower(it.row()) += it.value().real();
        else
          lower(it.row()) -= std::abs(it.value());
      }
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (basis->paths[static_cast<std::size_t>(i)].length() + 1 > n) continue;
      dev_iv = std::max(dev_iv, -lower(i));
    }
  }

  CuntzToeplitzReport rep;
  rep.truncation = n;
  rep.tol = tol;
  auto add = [&](const char* name, double d) {
    rep.relations.push_back({name, d, d <= tol});
  };
  add("(i) P_v P_u = 0", dev_i);
  add("(ii) S_e^* S_f = 0", dev_ii);
  add("(iii) S_e^* S_e = P_s(e)", dev_iii);
  add("(iv) sum S_e S_e^* <= P_v", dev_iv);
  rep.passed = std::all_of(rep.relations.begin(), rep.relations.end(),
                           [](const RelationDeviation& r) { return r.passed; });
  return rep;
}

double fock_norm_bound(const HardyPoly& x, std::size_t n) {
  const Graph& g = *x.graph();
  const auto m = creation_matrix(x, n);
  // Creation operators preserve the source of a path, so the matrix is
  // block diagonal over source vertices.
  std::vector<std::vector<Eigen::Index>> members(g.vertex_count());
  std::vector<Eigen::Index> local(static_cast<std::size_t>(m.basis->size()));
  for (Eigen::Index i = 0; i < m.basis->size(); ++i) {
    const auto s = m.basis->paths[static_cast<std::size_t>(i)].source(g);
    local[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(members[s].size());
    members[s].push_back(i);
  }
  std::vector<std::vector<Eigen::Triplet<cplx>>> trips(g.vertex_count());
  for (int k = 0; k < m.entries.outerSize(); ++k)
    for (SparseCMatrix::InnerIterator it(m.entries, k); it; ++it) {
      const auto s = m.basis->paths[static_cast<std::size_t>(it.col())].source(g);
      trips[s].emplace_back(local[static_cast<std::size_t>(it.row())],
                            local[static_cast<std::size_t>(it.col())], it.value());
    }
  std::vector<SparseCMatrix> blocks;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    const auto d = static_cast<Eigen::Index>(members[s].size());
    SparseCMatrix b(d, d);
    b.setFromTriplets(trips[s].begin(), trips[s].end());
    blocks.push_back(std::move(b));
  }
  const auto norms = kernels::spectral_norms(blocks, kernels::Exec::parallel);
  return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
}

HardyPoly rescale_to_contraction(const HardyPoly& x, std::size_t n, double slack) {
  const double b = fock_norm_bound(x, n);
  if (b == 0.0) return x;
  return x * cplx(1.0 / (b * (1.0 + slack)));
}

}  // namespace hardy
