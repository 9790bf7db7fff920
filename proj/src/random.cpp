#include "hardy/random.hpp"

#include <algorithm>

namespace hardy {

cplx random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

DualPoint random_point(const GraphPtr& g, std::mt19937_64& rng, double max_norm) {
  std::vector<cplx> w(g->edge_count());
  for (auto& x : w) x = random_complex(rng);
  std::uniform_real_distribution<double> u(0.0, max_norm);
  const double target = u(rng);
  const DualPoint raw = make_dual_point(g, w, true);
  if (raw.norm() == 0.0) return make_dual_point(g, std::vector<cplx>(g->edge_count()));
  return raw.scaled(target / raw.norm());
}

HardyPoly random_poly(const GraphPtr& g, std::size_t degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HardyPoly x(g);
  for (std::size_t k = 0; k <= degree; ++k)
    for (const auto& p : path_basis(*g, k)) {
      const double re = u(rng);
      x.add_term(p, cplx(re, u(rng)));
    }
  return x;
}

CentralPoint random_central_point(const GraphPtr& g, std::mt19937_64& rng, double max_norm) {
  const auto loops = center_basis(*g);
  std::vector<std::pair<std::size_t, cplx>> w;
  for (auto e : loops) w.emplace_back(e, random_complex(rng));
  std::vector<cplx> full(g->edge_count());
  for (const auto& [e, c] : w) full[e] = c;
  const double n = make_dual_point(g, full, true).norm();
  std::uniform_real_distribution<double> u(0.0, max_norm);
  const double scale = n == 0.0 ? 0.0 : u(rng) / n;
  for (auto& [e, c] : w) c *= scale;
  return make_central_point(g, w);
}

GraphPtr random_graph(std::size_t n, std::size_t max_edges, std::mt19937_64& rng, bool want_loop) {
  if (n == 0) throw ValidationError("random graph needs a vertex");
  max_edges = std::max(max_edges, n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> extra(0, max_edges - n);
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < n; ++v) vertices.push_back("v" + std::to_string(v + 1));
  std::vector<EdgeSpec> edges;
  // One incoming edge per vertex keeps the range map surjective.
  for (std::size_t v = 0; v < n; ++v) {
    const auto src = (want_loop && v == 0) ? 0 : pick(rng);
    edges.push_back({"e" + std::to_string(edges.size() + 1), vertices[src], vertices[v]});
  }
  const auto more = extra(rng);
  for (std::size_t i = 0; i < more; ++i)
    edges.push_back({"e" + std::to_string(edges.size() + 1), vertices[pick(rng)], vertices[pick(rng)]});
  return build_graph(std::move(vertices), edges);
}

}  // namespace hardy
