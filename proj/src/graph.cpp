#include "hardy/graph.hpp"

#include <algorithm>

namespace hardy {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

Graph Graph::build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges) {
  Graph g;
  g.vertices_ = std::move(vertices);
  for (std::size_t v = 0; v < g.vertices_.size(); ++v) {
    const auto& name = g.vertices_[v];
    if (name.empty()) throw ValidationError("vertex name must be non-empty");
    if (!g.vertex_lookup_.emplace(name, v).second)
      throw ValidationError("duplicate vertex name '" + name + "'");
  }
  g.into_.resize(g.vertices_.size());
  g.from_.resize(g.vertices_.size());
  for (const auto& spec : edges) {
    if (spec.name.empty()) throw ValidationError("edge name must be non-empty");
    if (g.vertex_lookup_.contains(spec.name))
      throw ValidationError("edge name '" + spec.name + "' collides with a vertex name");
    auto s = g.find_vertex(spec.src);
    auto r = g.find_vertex(spec.dst);
    if (!s) throw ValidationError("edge '" + spec.name + "' has unknown source '" + spec.src + "'");
    if (!r) throw ValidationError("edge '" + spec.name + "' has unknown range '" + spec.dst + "'");
    const std::size_t idx = g.edges_.size();
    if (!g.edge_lookup_.emplace(spec.name, idx).second)
      throw ValidationError("duplicate edge name '" + spec.name + "'");
    g.edges_.push_back(Edge{spec.name, *s, *r});
    g.from_[*s].push_back(idx);
    g.into_[*r].push_back(idx);
  }
  for (std::size_t v = 0; v < g.vertices_.size(); ++v) {
    if (g.into_[v].empty()) {
      g.range_surjective_ = false;
      g.warnings_.push_back("vertex '" + g.vertices_[v] + "' is not the range of any edge");
    }
    if (g.from_[v].empty()) g.source_surjective_ = false;
  }
  if (!g.range_surjective_) g.warnings_.push_back("r not surjective");
  return g;
}

std::optional<std::size_t> Graph::find_vertex(const std::string& name) const {
  auto it = vertex_lookup_.find(name);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Graph::find_edge(const std::string& name) const {
  auto it = edge_lookup_.find(name);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::vertex_index(const std::string& name) const {
  if (auto v = find_vertex(name)) return *v;
  throw ValidationError("unknown vertex '" + name + "'");
}

std::size_t Graph::edge_index(const std::string& name) const {
  if (auto e = find_edge(name)) return *e;
  throw ValidationError("unknown edge '" + name + "'");
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t e = 0; e < a.edges_.size(); ++e) {
    const auto& x = a.edges_[e];
    const auto& y = b.edges_[e];
    if (x.name != y.name || x.src != y.src || x.dst != y.dst) return false;
  }
  return true;
}

GraphPtr build_graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges) {
  return std::make_shared<const Graph>(Graph::build(std::move(vertices), edges));
}

bool same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

void require_same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (!same_graph(a, b)) throw GraphMismatch("operands belong to different graphs");
}

GraphPtr two_vertex_example() {
  return build_graph({"v", "w"}, {{"e", "v", "w"}, {"f", "w", "v"}, {"g", "w", "w"}});
}

GraphPtr single_vertex_loops(std::size_t loops) {
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 1; i <= loops; ++i) edges.push_back({"x" + std::to_string(i), "o", "o"});
  return build_graph({"o"}, edges);
}

GraphPtr cycle_graph(std::size_t n) {
  std::vector<std::string> vs;
  std::vector<EdgeSpec> es;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i)
    es.push_back({"e" + std::to_string(i), vs[i - 1], vs[i % n]});
  return build_graph(vs, es);
}

AlgebraElement AlgebraElement::zero(GraphPtr g) {
  const auto n = static_cast<Eigen::Index>(g->vertex_count());
  return {std::move(g), CVector::Zero(n)};
}

AlgebraElement AlgebraElement::unit(GraphPtr g) {
  const auto n = static_cast<Eigen::Index>(g->vertex_count());
  return {std::move(g), CVector::Ones(n)};
}

AlgebraElement AlgebraElement::delta(GraphPtr g, std::size_t v) {
  auto a = zero(std::move(g));
  a.values(static_cast<Eigen::Index>(v)) = 1.0;
  return a;
}

CorrElement CorrElement::zero(GraphPtr g) {
  const auto n = static_cast<Eigen::Index>(g->edge_count());
  return {std::move(g), CVector::Zero(n)};
}

CorrElement CorrElement::delta(GraphPtr g, std::size_t e) {
  auto f = zero(std::move(g));
  f.values(static_cast<Eigen::Index>(e)) = 1.0;
  return f;
}

namespace {

void check_corr(const CorrElement& f) {
  if (!f.graph) throw ValidationError("element has no graph");
  if (static_cast<std::size_t>(f.values.size()) != f.graph->edge_count())
    throw ValidationError("correspondence element length differs from edge count");
}

void check_alg(const AlgebraElement& a) {
  if (!a.graph) throw ValidationError("element has no graph");
  if (static_cast<std::size_t>(a.values.size()) != a.graph->vertex_count())
    throw ValidationError("algebra element length differs from vertex count");
}

}  // namespace

AlgebraElement inner_product(const CorrElement& f, const CorrElement& g) {
  check_corr(f);
  check_corr(g);
  require_same_graph(f.graph, g.graph);
  auto out = AlgebraElement::zero(f.graph);
  const auto& gr = *f.graph;
  for (std::size_t e = 0; e < gr.edge_count(); ++e) {
    const auto i = static_cast<Eigen::Index>(e);
    out.values(static_cast<Eigen::Index>(gr.src(e))) += std::conj(f.values(i)) * g.values(i);
  }
  return out;
}

CorrElement act(const AlgebraElement& a, const CorrElement& f, const AlgebraElement& b) {
  check_alg(a);
  check_alg(b);
  check_corr(f);
  require_same_graph(a.graph, f.graph);
  require_same_graph(b.graph, f.graph);
  CorrElement out = f;
  const auto& gr = *f.graph;
  for (std::size_t e = 0; e < gr.edge_count(); ++e) {
    const auto i = static_cast<Eigen::Index>(e);
    out.values(i) = a.values(static_cast<Eigen::Index>(gr.dst(e))) * f.values(i) *
                    b.values(static_cast<Eigen::Index>(gr.src(e)));
  }
  return out;
}

std::size_t Path::source(const Graph& g) const { return is_vertex() ? vertex : g.src(edges.back()); }

std::size_t Path::range(const Graph& g) const { return is_vertex() ? vertex : g.dst(edges.front()); }

bool operator==(const Path& a, const Path& b) noexcept {
  if (a.edges.size() != b.edges.size()) return false;
  if (a.edges.empty()) return a.vertex == b.vertex;
  return a.edges == b.edges;
}

std::strong_ordering operator<=>(const Path& a, const Path& b) noexcept {
  if (auto c = a.edges.size() <=> b.edges.size(); c != 0) return c;
  if (a.edges.empty()) return a.vertex <=> b.vertex;
  return std::lexicographical_compare_three_way(a.edges.begin(), a.edges.end(), b.edges.begin(),
                                                b.edges.end());
}

bool is_composable(const Graph& g, const Path& p) {
  if (p.is_vertex()) return p.vertex < g.vertex_count();
  for (auto e : p.edges)
    if (e >= g.edge_count()) return false;
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i)
    if (g.src(p.edges[i]) != g.dst(p.edges[i + 1])) return false;
  return true;
}

std::optional<Path> concatenate(const Graph& g, const Path& alpha, const Path& beta) {
  if (alpha.source(g) != beta.range(g)) return std::nullopt;
  if (alpha.is_vertex()) return beta;
  if (beta.is_vertex()) return alpha;
  Path out = alpha;
  out.edges.insert(out.edges.end(), beta.edges.begin(), beta.edges.end());
  return out;
}

std::string path_name(const Graph& g, const Path& p) {
  if (p.is_vertex()) return g.vertex_name(p.vertex);
  std::string s;
  for (auto e : p.edges) s += g.edge(e).name;
  return s;
}

std::vector<Path> path_basis(const Graph& g, std::size_t k) {
  std::vector<Path> out;
  if (k == 0) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) out.push_back(Path::at_vertex(v));
    return out;
  }
  // Depth-first extension keeps lexicographic order: the next letter must
  // have range equal to the source of the current last letter.
  std::vector<std::size_t> stack;
  auto extend = [&](auto&& self) -> void {
    if (stack.size() == k) {
      out.push_back(Path::of_edges(stack));
      return;
    }
    auto push = [&](std::size_t e) {
      stack.push_back(e);
      self(self);
      stack.pop_back();
    };
    if (stack.empty()) {
      for (std::size_t e = 0; e < g.edge_count(); ++e) push(e);
    } else {
      for (auto e : g.edges_into(g.src(stack.back()))) push(e);
    }
  };
  extend(extend);
  return out;
}

std::vector<std::size_t> center_basis(const Graph& g) {
  std::vector<std::size_t> loops;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).is_loop()) loops.push_back(e);
  return loops;
}

FullnessFlags fullness_flags(const Graph& g) {
  return {g.source_surjective(), g.range_surjective()};
}

}  // namespace hardy
