#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hardy/types.hpp"

namespace hardy {

struct EdgeSpec {
  std::string name;
  std::string src;
  std::string dst;
};

struct Edge {
  std::string name;
  std::size_t src;
  std::size_t dst;

  bool is_loop() const noexcept { return src == dst; }
};

// A finite directed graph Q with vertex set V. Edges point from src to dst;
// the range map r is dst and the source map s is src. Vertex and edge order
// is the construction order and fixes every basis used by the library.
class Graph {
 public:
  // Throws ValidationError on duplicate names or dangling endpoints. Vertices
  // that are not the range of any edge are accepted and reported in warnings().
  static Graph build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
  const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::size_t src(std::size_t e) const { return edges_[e].src; }
  std::size_t dst(std::size_t e) const { return edges_[e].dst; }

  std::optional<std::size_t> find_vertex(const std::string& name) const;
  std::optional<std::size_t> find_edge(const std::string& name) const;
  std::size_t vertex_index(const std::string& name) const;  // throws ValidationError
  std::size_t edge_index(const std::string& name) const;    // throws ValidationError

  // Edges with the given range, in edge order.
  const std::vector<std::size_t>& edges_into(std::size_t v) const { return into_[v]; }
  // Edges with the given source, in edge order.
  const std::vector<std::size_t>& edges_from(std::size_t v) const { return from_[v]; }

  // "Without sources": every vertex is the range of some edge.
  bool range_surjective() const noexcept { return range_surjective_; }
  bool source_surjective() const noexcept { return source_surjective_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> vertex_lookup_;
  std::map<std::string, std::size_t> edge_lookup_;
  std::vector<std::vector<std::size_t>> into_;
  std::vector<std::vector<std::size_t>> from_;
  bool range_surjective_ = true;
  bool source_surjective_ = true;
  std::vector<std::string> warnings_;
};

using GraphPtr = std::shared_ptr<const Graph>;

GraphPtr build_graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

// Pointer identity or structural equality.
bool same_graph(const GraphPtr& a, const GraphPtr& b);
void require_same_graph(const GraphPtr& a, const GraphPtr& b);

// V = {v, w}; e: v -> w, f: w -> v, g: loop at w.
GraphPtr two_vertex_example();
// One vertex carrying the given number of loops, named x1, x2, ...
GraphPtr single_vertex_loops(std::size_t loops);
// n-cycle with edge e_i from v_i to v_{i+1}, e_n closing the cycle.
GraphPtr cycle_graph(std::size_t n);

/// Element of M = C(V): one complex number per vertex.
struct AlgebraElement {
  GraphPtr graph;
  CVector values;

  static AlgebraElement zero(GraphPtr g);
  static AlgebraElement unit(GraphPtr g);
  static AlgebraElement delta(GraphPtr g, std::size_t v);
};

/// Element of E = C(Q): one complex number per edge.
struct CorrElement {
  GraphPtr graph;
  CVector values;

  static CorrElement zero(GraphPtr g);
  static CorrElement delta(GraphPtr g, std::size_t e);
};

// <f, g>(v) = sum over s(e) = v of conj(f(e)) g(e).
AlgebraElement inner_product(const CorrElement& f, const CorrElement& g);

// (a . f . b)(e) = a(r(e)) f(e) b(s(e)).
CorrElement act(const AlgebraElement& a, const CorrElement& f, const AlgebraElement& b);

// A finite path e1 e2 ... ek with s(e_i) = r(e_{i+1}). Length-zero paths
// are vertices. Paths are ordered by length, then lexicographically by
// edge index (vertex index for length zero).
struct Path {
  std::vector<std::size_t> edges;
  std::size_t vertex = 0;  // meaningful only when edges is empty

  static Path at_vertex(std::size_t v) { return Path{{}, v}; }
  static Path of_edges(std::vector<std::size_t> es) { return Path{std::move(es), 0}; }

  std::size_t length() const noexcept { return edges.size(); }
  bool is_vertex() const noexcept { return edges.empty(); }

  std::size_t source(const Graph& g) const;  // s(e_k)
  std::size_t range(const Graph& g) const;   // r(e_1)

  friend bool operator==(const Path& a, const Path& b) noexcept;
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) noexcept;
};

bool is_composable(const Graph& g, const Path& p);
// alpha beta, defined when s(alpha) = r(beta).
std::optional<Path> concatenate(const Graph& g, const Path& alpha, const Path& beta);
std::string path_name(const Graph& g, const Path& p);

// All composable paths of length k in lexicographic order; k = 0 gives vertices.
std::vector<Path> path_basis(const Graph& g, std::size_t k);

// Loop edges; they span the center of E(Q) and, through e <-> e^{-1}, of E(Q^{-1}).
std::vector<std::size_t> center_basis(const Graph& g);

struct FullnessFlags {
  bool is_full = false;        // every vertex is a source
  bool left_faithful = false;  // every vertex is a range
};

FullnessFlags fullness_flags(const Graph& g);

}  // namespace hardy
