#include "hardy/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "hardy/random.hpp"

namespace hardy {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

HardyPoly truncate(const HardyPoly& x, std::size_t n) {
  HardyPoly out(x.graph());
  for (const auto& [p, c] : x.terms())
    if (p.length() <= n) out.add_term(p, c);
  return out;
}

}  // namespace

BimoduleUnitary make_bimodule_unitary(GraphPtr g, std::vector<BimoduleUnitary::Block> blocks, double tol) {
  const auto nq = g->edge_count();
  BimoduleUnitary u;
  u.full_ = CMatrix::Identity(idx(nq), idx(nq));
  std::set<std::size_t> seen;
  for (auto& b : blocks) {
    const auto n = idx(b.edges.size());
    if (b.matrix.rows() != n || b.matrix.cols() != n)
      throw ValidationError("unitary block matrix must be square over its edges");
    for (auto e : b.edges) {
      if (e >= nq) throw ValidationError("unitary block refers to an unknown edge");
      if (!seen.insert(e).second)
        throw ValidationError("edge " + g->edge(e).name + " appears in two unitary blocks");
      if (g->src(e) != b.src || g->dst(e) != b.dst)
        throw ValidationError("edge " + g->edge(e).name +
                              " does not match the (source, range) pair of its block");
    }
    const double defect = n ? spectral_norm(b.matrix.adjoint() * b.matrix - CMatrix::Identity(n, n)) : 0.0;
    if (defect > tol)
      throw ValidationError("unitary block is not unitary (defect " + std::to_string(defect) + ")");
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        u.full_(idx(b.edges[static_cast<std::size_t>(i)]), idx(b.edges[static_cast<std::size_t>(j)])) =
            b.matrix(i, j);
  }
  u.graph_ = std::move(g);
  u.blocks_ = std::move(blocks);
  return u;
}

BimoduleUnitary identity_unitary(GraphPtr g) { return make_bimodule_unitary(std::move(g), {}); }

BimoduleUnitary diagonal_unitary(GraphPtr g, const std::vector<cplx>& phases) {
  if (phases.size() != g->edge_count()) throw ValidationError("one phase per edge is required");
  std::vector<BimoduleUnitary::Block> blocks;
  for (std::size_t e = 0; e < phases.size(); ++e) {
    CMatrix m(1, 1);
    m(0, 0) = phases[e];
    blocks.push_back({g->src(e), g->dst(e), {e}, m});
  }
  return make_bimodule_unitary(std::move(g), std::move(blocks), 1e-12);
}

HardyPoly apply_alpha_u(const BimoduleUnitary& u, const HardyPoly& x) {
  require_same_graph(u.graph(), x.graph());
  const Graph& g = *x.graph();
  const CMatrix& m = u.edge_matrix();
  HardyPoly out(x.graph());
  std::vector<std::size_t> word;
  for (const auto& [p, c] : x.terms()) {
    if (p.is_vertex()) {
      out.add_term(p, c);
      continue;
    }
    word.assign(p.length(), 0);
    // Letters only move inside their (source, range) block, so every image word is composable.
    auto expand = [&](auto&& self, std::size_t pos, cplx acc) -> void {
      if (pos == p.length()) {
        out.add_term(Path::of_edges(word), acc);
        return;
      }
      const auto e = p.edges[pos];
      for (std::size_t f = 0; f < g.edge_count(); ++f) {
        const cplx ufe = m(idx(f), idx(e));
        if (ufe == cplx{}) continue;
        word[pos] = f;
        self(self, pos + 1, acc * ufe);
      }
    };
    expand(expand, 0, c);
  }
  return out;
}

DualPoint gauge_point(const BimoduleUnitary& u, const DualPoint& eta) {
  require_same_graph(u.graph(), eta.graph());
  return dual_point_from_adjoint(eta.graph(), eta.adjoint_matrix() * u.edge_matrix(), true, 1e-12);
}

DualPoint pullback_point(const CentralPoint& gamma, const BimoduleUnitary& u, const DualPoint& eta) {
  require_same_graph(u.graph(), eta.graph());
  const CMatrix adj = mobius_matrix(gamma, eta) * u.edge_matrix();
  return dual_point_from_adjoint(eta.graph(), adj, false, 1e-12);
}

VertexMatrix pullback_evaluate(const CentralPoint& gamma, const BimoduleUnitary& u, const HardyPoly& x,
                               const DualPoint& eta) {
  return evaluate_poly(x, pullback_point(gamma, u, eta));
}

TwoVertexRoles two_vertex_roles(const Graph& g) {
  if (g.vertex_count() != 2 || g.edge_count() != 3)
    throw GraphMismatch("expected the two-vertex graph with three edges");
  TwoVertexRoles r;
  int loops = 0;
  for (std::size_t e = 0; e < 3; ++e)
    if (g.edge(e).is_loop()) {
      r.g = e;
      ++loops;
    }
  if (loops != 1) throw GraphMismatch("expected exactly one loop");
  r.w = g.src(r.g);
  r.v = 1 - r.w;
  bool have_e = false, have_f = false;
  for (std::size_t e = 0; e < 3; ++e) {
    if (e == r.g) continue;
    if (g.src(e) == r.v && g.dst(e) == r.w && !have_e) {
      r.e = e;
      have_e = true;
    } else if (g.src(e) == r.w && g.dst(e) == r.v && !have_f) {
      r.f = e;
      have_f = true;
    }
  }
  if (!have_e || !have_f) throw GraphMismatch("expected edges v -> w and w -> v beside the loop at w");
  return r;
}

AlphaLambda two_vertex_alpha_lambda(GraphPtr g, cplx lambda, std::size_t n) {
  if (!(std::abs(lambda) < 1.0)) throw DomainError("lambda must lie in the open unit disc");
  AlphaLambda out{two_vertex_roles(*g), HardyPoly(g), HardyPoly(g), HardyPoly(g)};
  const auto& r = out.roles;
  const auto sg = HardyPoly::shift(g, r.g);

  // sum_{k <= n} (lambda S_g)^k
  HardyPoly series = HardyPoly::projection(g, r.w);
  HardyPoly power = series;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * sg * lambda;
    series += power;
  }
  const double scale = std::sqrt(1.0 - std::norm(lambda));
  out.te = truncate(series * HardyPoly::shift(g, r.e), n) * cplx(-scale);
  out.tf = HardyPoly::shift(g, r.f) * cplx(-1.0);
  out.tg = truncate((std::conj(lambda) * HardyPoly::projection(g, r.w) - sg) * series, n);
  return out;
}

CMatrix tau_lambda_matrix(const DualPoint& eta, cplx lambda) {
  const Graph& g = *eta.graph();
  const auto r = two_vertex_roles(g);
  const cplx ce = std::conj(eta.weight(r.e)), cf = std::conj(eta.weight(r.f));
  const cplx cg = std::conj(eta.weight(r.g));
  const cplx den = 1.0 - lambda * cg;
  CMatrix t = CMatrix::Zero(2, 3);
  t(idx(r.v), idx(r.f)) = -cf;
  t(idx(r.w), idx(r.e)) = -ce * std::sqrt(1.0 - std::norm(lambda)) / den;
  t(idx(r.w), idx(r.g)) = (std::conj(lambda) - cg) / den;
  return t;
}

double alpha_lambda_tail_bound(cplx lambda, const DualPoint& eta, std::size_t n) {
  const double l = std::abs(lambda), z = eta.norm();
  return 2.0 * std::pow(l, static_cast<double>(n)) * std::pow(z, static_cast<double>(n + 1)) /
         (1.0 - l * z);
}

HardyPoly two_vertex_commutator(GraphPtr g) {
  const auto r = two_vertex_roles(*g);
  return HardyPoly::monomial(g, Path::of_edges({r.g, r.e, r.f})) -
         HardyPoly::monomial(g, Path::of_edges({r.e, r.f, r.g}));
}

IdealReport kernel_ideal_check(const std::vector<DualPoint>& samples, std::size_t multiples,
                               std::uint64_t seed) {
  IdealReport rep;
  rep.samples = samples.size();
  rep.multiples = multiples;
  if (samples.empty()) return rep;
  const GraphPtr g = samples.front().graph();
  const HardyPoly c = two_vertex_commutator(g);
  std::mt19937_64 rng(seed);
  std::vector<HardyPoly> polys;
  for (std::size_t i = 0; i < multiples; ++i) {
    const HardyPoly a = random_poly(g, 2, rng);
    const HardyPoly b = random_poly(g, 2, rng);
    polys.push_back(a * c * b);
  }
  for (const auto& eta : samples) {
    require_same_graph(g, eta.graph());
    rep.commutator_max = std::max(rep.commutator_max, evaluate_poly(c, eta).cwiseAbs().maxCoeff());
    for (const auto& p : polys)
      rep.multiples_max = std::max(rep.multiples_max, evaluate_poly(p, eta).cwiseAbs().maxCoeff());
  }
  return rep;
}

}  // namespace hardy
