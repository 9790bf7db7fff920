#include <doctest.h>

#include <random>
#include <sstream>

#include "hardy/cli.hpp"
#include "hardy/io.hpp"
#include "hardy/random.hpp"

using namespace hardy;
using io::json;

namespace {

std::string data(const char* name) { return std::string(HARDY_DATA_DIR) + "/" + name; }

int run_cli(cli::RunConfig cfg, json* report = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(cfg, out, err);
  if (report && !out.str().empty()) *report = json::parse(out.str());
  return code;
}

}  // namespace

TEST_CASE("sha256 of a known vector") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("graph, polynomial, point and system survive a JSON round trip") {
  std::mt19937_64 rng(51);
  auto g = two_vertex_example();
  auto g2 = io::graph_from_json(io::graph_to_json(*g));
  CHECK(*g2 == *g);
  auto x = random_poly(g, 3, rng);
  CHECK(io::poly_from_json(g, io::poly_to_json(x)) == x);
  auto p = random_point(g, rng, 0.9);
  auto p2 = io::point_from_json(g, io::point_to_json(p));
  CHECK(p2.weights() == p.weights());
  auto s = random_contractive_system(g, {2, 1}, {true, false}, {true, true}, rng);
  auto s2 = io::system_from_json(g, io::system_to_json(s));
  CHECK(assemble_dense(s2) == assemble_dense(s));
  auto c = make_central_point(g, {{2, cplx(0.1, 0.2)}});
  CHECK(io::central_from_json(g, io::central_to_json(c)).point().weights() == c.point().weights());
}

TEST_CASE("malformed payloads are validation errors") {
  auto g = two_vertex_example();
  CHECK_THROWS_AS(io::poly_from_json(g, json::parse(R"([{"path":["e","g"],"re":1}])")), ValidationError);
  CHECK_THROWS_AS(io::point_from_json(g, json::parse(R"({"weights":{"nope":[0.1,0]}})")), ValidationError);
  CHECK_THROWS_AS(io::point_from_json(g, json::parse(R"({"weights":{"e":[1.5,0]}})")), DomainError);
  CHECK(io::complex_from_json(json(2.5)) == cplx(2.5));
}

TEST_CASE("cli exit codes") {
  cli::RunConfig cfg;
  cfg.command = "validate-graph";
  cfg.graph = data("two_vertex.json");
  json rep;
  CHECK(run_cli(cfg, &rep) == cli::kPass);
  CHECK(rep["path_counts"] == json({2, 3, 5, 8}));

  cfg = {};
  cfg.command = "pick";
  cfg.graph = data("one_loop.json");
  cfg.points = data("pick_infeasible.json");
  CHECK(run_cli(cfg, &rep) == cli::kFailed);
  CHECK(rep["verdict"] == "fail");
  cfg.points = data("pick_feasible.json");
  CHECK(run_cli(cfg, &rep) == cli::kPass);

  cfg.points = data("missing.json");
  CHECK(run_cli(cfg) == cli::kInputError);

  cfg = {};
  cfg.command = "eval";
  cfg.graph = data("one_loop.json");
  cfg.poly = data("poly.json");
  cfg.point = data("point.json");
  CHECK(run_cli(cfg) == cli::kInputError);  // names from the other graph

  cfg = {};
  cfg.command = "autom-demo";
  cfg.lambda = "0.5";
  cfg.n = 20;
  CHECK(run_cli(cfg, &rep) == cli::kPass);
  CHECK(rep["verdict"] == "pass");
  cfg.lambda = "1.5";
  CHECK(run_cli(cfg) == cli::kInputError);
}

TEST_CASE("cli reports are deterministic and carry input hashes") {
  cli::RunConfig cfg;
  cfg.command = "realize";
  cfg.graph = data("one_loop.json");
  cfg.points = data("pick_feasible.json");
  std::ostringstream a, b, err;
  CHECK(cli::run(cfg, a, err) == cli::kPass);
  CHECK(cli::run(cfg, b, err) == cli::kPass);
  CHECK(a.str() == b.str());
  const auto rep = json::parse(a.str());
  CHECK(rep["inputs"]["graph"] == io::sha256_hex(io::read_text_file(cfg.graph)));

  cfg = {};
  cfg.command = "transfer";
  cfg.graph = data("one_loop.json");
  cfg.system = data("system.json");
  cfg.point = data("point_one_loop.json");
  json t;
  CHECK(run_cli(cfg, &t) == cli::kPass);

  cfg = {};
  cfg.command = "mobius";
  cfg.graph = data("two_vertex.json");
  cfg.gamma = data("gamma.json");
  cfg.point = data("point.json");
  cfg.unitary = data("unitary.json");
  CHECK(run_cli(cfg) == cli::kPass);

  cfg = {};
  cfg.command = "fock-check";
  cfg.graph = data("two_vertex.json");
  CHECK(run_cli(cfg) == cli::kPass);

  cfg = {};
  cfg.command = "schur-check";
  cfg.graph = data("two_vertex.json");
  cfg.poly = data("poly.json");
  cfg.points = data("two_vertex_points.json");
  CHECK(run_cli(cfg) == cli::kPass);
}
