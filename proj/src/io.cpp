#include "hardy/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace hardy::io {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<VertexMatrix> matrices_from_json(const json& j, std::size_t nv) {
  std::vector<VertexMatrix> out;
  if (!j.is_array()) throw ValidationError("expected a list of matrices");
  for (const auto& m : j) out.push_back(matrix_from_json(m, idx(nv), idx(nv)));
  return out;
}

}  // namespace

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("complex scalar must be a number or [re, im]");
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw ValidationError("matrix must have " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ValidationError("matrix row must have " + std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

GraphPtr graph_from_json(const json& j) {
  std::vector<std::string> vertices;
  for (const auto& v : require(j, "vertices")) vertices.push_back(v.get<std::string>());
  std::vector<EdgeSpec> edges;
  for (const auto& e : require(j, "edges"))
    edges.push_back({require(e, "name").get<std::string>(), require(e, "src").get<std::string>(),
                     require(e, "dst").get<std::string>()});
  return build_graph(std::move(vertices), edges);
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"name", e.name}, {"src", g.vertex_name(e.src)}, {"dst", g.vertex_name(e.dst)}});
  return {{"vertices", g.vertex_names()}, {"edges", edges}};
}

HardyPoly poly_from_json(const GraphPtr& g, const json& j) {
  if (!j.is_array()) throw ValidationError("polynomial must be a list of terms");
  HardyPoly x(g);
  for (const auto& t : j) {
    const cplx c(t.value("re", 0.0), t.value("im", 0.0));
    if (t.contains("vertex")) {
      x.add_term(Path::at_vertex(g->vertex_index(t.at("vertex").get<std::string>())), c);
      continue;
    }
    std::vector<std::size_t> edges;
    for (const auto& e : require(t, "path")) edges.push_back(g->edge_index(e.get<std::string>()));
    if (edges.empty()) throw ValidationError("empty path; use {\"vertex\": ...} for P_v");
    const Path p = Path::of_edges(std::move(edges));
    if (!is_composable(*g, p)) throw ValidationError("path " + path_name(*g, p) + " is not composable");
    x.add_term(p, c);
  }
  return x;
}

json poly_to_json(const HardyPoly& x) {
  const Graph& g = *x.graph();
  json out = json::array();
  for (const auto& [p, c] : x.terms()) {
    json t;
    if (p.is_vertex()) {
      t["vertex"] = g.vertex_name(p.vertex);
    } else {
      json names = json::array();
      for (auto e : p.edges) names.push_back(g.edge(e).name);
      t["path"] = names;
    }
    t["re"] = c.real();
    t["im"] = c.imag();
    out.push_back(std::move(t));
  }
  return out;
}

DualPoint point_from_json(const GraphPtr& g, const json& j, bool allow_boundary) {
  std::vector<cplx> w(g->edge_count());
  for (const auto& [name, val] : require(j, "weights").items()) w[g->edge_index(name)] = complex_from_json(val);
  return make_dual_point(g, std::move(w), allow_boundary);
}

json point_to_json(const DualPoint& p) {
  const Graph& g = *p.graph();
  json w = json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) w[g.edge(e).name] = complex_to_json(p.weight(e));
  return {{"weights", w}};
}

CentralPoint central_from_json(const GraphPtr& g, const json& j) {
  std::vector<std::pair<std::size_t, cplx>> loops;
  for (const auto& [name, val] : require(j, "loops").items())
    loops.emplace_back(g->edge_index(name), complex_from_json(val));
  return make_central_point(g, loops);
}

json central_to_json(const CentralPoint& c) {
  const Graph& g = *c.graph();
  json loops = json::object();
  for (auto e : center_basis(g)) loops[g.edge(e).name] = complex_to_json(c.point().weight(e));
  return {{"loops", loops}};
}

BimoduleUnitary unitary_from_json(const GraphPtr& g, const json& j) {
  std::vector<BimoduleUnitary::Block> blocks;
  for (const auto& b : require(j, "blocks")) {
    BimoduleUnitary::Block blk;
    blk.src = g->vertex_index(require(b, "src").get<std::string>());
    blk.dst = g->vertex_index(require(b, "dst").get<std::string>());
    for (const auto& e : require(b, "edges")) blk.edges.push_back(g->edge_index(e.get<std::string>()));
    const auto n = idx(blk.edges.size());
    blk.matrix = matrix_from_json(require(b, "matrix"), n, n);
    blocks.push_back(std::move(blk));
  }
  return make_bimodule_unitary(g, std::move(blocks));
}

json unitary_to_json(const BimoduleUnitary& u) {
  const Graph& g = *u.graph();
  json blocks = json::array();
  for (const auto& b : u.blocks()) {
    json names = json::array();
    for (auto e : b.edges) names.push_back(g.edge(e).name);
    blocks.push_back({{"src", g.vertex_name(b.src)},
                      {"dst", g.vertex_name(b.dst)},
                      {"edges", names},
                      {"matrix", matrix_to_json(b.matrix)}});
  }
  return {{"blocks", blocks}};
}

std::vector<bool> vertex_set_from_json(const Graph& g, const json& j) {
  std::vector<bool> set(g.vertex_count(), false);
  if (!j.is_array()) throw ValidationError("vertex set must be a list of names");
  for (const auto& v : j) set[g.vertex_index(v.get<std::string>())] = true;
  return set;
}

json vertex_set_to_json(const Graph& g, const std::vector<bool>& set) {
  json out = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (set[v]) out.push_back(g.vertex_name(v));
  return out;
}

SystemMatrix system_from_json(const GraphPtr& g, const json& j) {
  const auto nv = g->vertex_count();
  std::vector<std::size_t> m(nv, 0);
  if (j.contains("multiplicities"))
    for (const auto& [name, val] : j.at("multiplicities").items()) m[g->vertex_index(name)] = val.get<std::size_t>();
  auto s = SystemMatrix::zero(g, m, vertex_set_from_json(*g, require(j, "q1")),
                              vertex_set_from_json(*g, require(j, "q2")));
  if (j.contains("A"))
    for (const auto& [name, val] : j.at("A").items()) s.a[g->vertex_index(name)] = complex_from_json(val);
  if (j.contains("B"))
    for (const auto& [name, val] : j.at("B").items()) {
      const auto v = g->vertex_index(name);
      if (!s.q2[v]) throw ValidationError("B block given for vertex " + name + " outside q2");
      s.b[v] = matrix_from_json(val, 1, idx(m[v]));
    }
  if (j.contains("C"))
    for (const auto& [name, val] : j.at("C").items()) {
      const auto e = g->edge_index(name);
      if (!s.q1[g->src(e)]) throw ValidationError("C block given for edge " + name + " whose source is outside q1");
      s.c[e] = matrix_from_json(val, idx(m[g->dst(e)]), 1);
    }
  if (j.contains("D"))
    for (const auto& [name, val] : j.at("D").items()) {
      const auto e = g->edge_index(name);
      s.d[e] = matrix_from_json(val, idx(m[g->dst(e)]), idx(m[g->src(e)]));
    }
  check_supports(s);
  return s;
}

json system_to_json(const SystemMatrix& s) {
  const Graph& g = *s.graph;
  json mult = json::object(), a = json::object(), b = json::object(), c = json::object(), d = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    mult[g.vertex_name(v)] = s.multiplicity[v];
    if (s.q1[v] && s.q2[v]) a[g.vertex_name(v)] = complex_to_json(s.a[v]);
    if (s.q2[v]) b[g.vertex_name(v)] = matrix_to_json(s.b[v]);
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (s.q1[g.src(e)]) c[g.edge(e).name] = matrix_to_json(s.c[e]);
    d[g.edge(e).name] = matrix_to_json(s.d[e]);
  }
  return {{"multiplicities", mult}, {"q1", vertex_set_to_json(g, s.q1)}, {"q2", vertex_set_to_json(g, s.q2)},
          {"A", a}, {"B", b}, {"C", c}, {"D", d}};
}

SampleFile samples_from_json(const GraphPtr& g, const json& j) {
  SampleFile f;
  for (const auto& p : require(j, "points")) f.points.push_back(point_from_json(g, p));
  const auto nv = g->vertex_count();
  if (j.contains("values")) f.values = matrices_from_json(j.at("values"), nv);
  if (j.contains("B")) f.b = matrices_from_json(j.at("B"), nv);
  if (j.contains("C")) f.c = matrices_from_json(j.at("C"), nv);
  return f;
}

json verdict_to_json(const CpVerdict& v) {
  json blocks = json::array();
  for (const auto& b : v.blocks) blocks.push_back({{"vertex", b.vertex}, {"min_eig", b.min_eig}, {"norm", b.norm}});
  return {{"verdict", v.completely_positive ? "CP" : "not CP"},
          {"summary", v.summary()},
          {"tol", v.tol},
          {"worst_min_eig", v.worst_min_eig},
          {"blocks", blocks}};
}

json system_report_to_json(const SystemReport& r) {
  return {{"classification", r.classification}, {"tol", r.tol},
          {"norm", r.norm},                     {"coisometry_residual", r.coisometry_residual},
          {"isometry_residual", r.isometry_residual}, {"cond11", r.cond11},
          {"cond22", r.cond22},                 {"cond12", r.cond12},
          {"graph_full", r.graph_full},         {"contractive", r.contractive},
          {"coisometric", r.coisometric},       {"unitary", r.unitary}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  const auto text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

}  // namespace hardy::io
