#include "hardy/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "hardy/automorphism.hpp"
#include "hardy/io.hpp"
#include "hardy/mobius.hpp"
#include "hardy/pick.hpp"
#include "hardy/random.hpp"
#include "hardy/realization.hpp"

namespace hardy::cli {

namespace {

using io::json;

struct Outcome {
  json body = json::object();
  double tol = 0.0;
  double worst = 0.0;
  bool pass = true;
};

class Context {
 public:
  explicit Context(const RunConfig& cfg) : cfg(cfg) {}

  const RunConfig& cfg;

  json load(const std::string& role, const std::string& path) {
    if (path.empty()) throw ValidationError("--" + role + " is required for " + cfg.command);
    const auto text = io::read_text_file(path);
    inputs_[role] = io::sha256_hex(text);
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }

  GraphPtr graph(bool default_two_vertex = false) {
    if (!graph_) {
      if (cfg.graph.empty() && default_two_vertex)
        graph_ = two_vertex_example();
      else
        graph_ = io::graph_from_json(load("graph", cfg.graph));
    }
    return graph_;
  }

  // --point (one point) and/or --points (a sample file).
  std::vector<DualPoint> points(bool required) {
    std::vector<DualPoint> out;
    if (!cfg.point.empty()) out.push_back(io::point_from_json(graph(), load("point", cfg.point)));
    if (!cfg.points.empty()) {
      const auto f = samples();
      out.insert(out.end(), f.points.begin(), f.points.end());
    }
    if (required && out.empty()) throw ValidationError(cfg.command + " needs --point or --points");
    return out;
  }

  io::SampleFile samples() {
    if (!samples_) samples_ = io::samples_from_json(graph(), load("points", cfg.points));
    return *samples_;
  }

  std::vector<bool> vertex_set(const std::vector<std::string>& names) {
    const Graph& g = *graph();
    if (names.empty()) return std::vector<bool>(g.vertex_count(), true);
    std::vector<bool> set(g.vertex_count(), false);
    for (const auto& n : names) set[g.vertex_index(n)] = true;
    return set;
  }

  const json& inputs() const { return inputs_; }
  double tol(double fallback) const { return cfg.tol.value_or(fallback); }
  std::size_t n(std::size_t fallback) const { return cfg.n.value_or(fallback); }

 private:
  GraphPtr graph_;
  std::optional<io::SampleFile> samples_;
  json inputs_ = json::object();
};

cplx parse_lambda(const std::string& s) {
  try {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ValidationError("--lambda must be \"re\" or \"re,im\"");
  }
}

json matrices_to_json(const std::vector<VertexMatrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(io::matrix_to_json(m));
  return out;
}

Outcome validate_graph(Context& ctx) {
  const auto g = ctx.graph();
  const auto flags = fullness_flags(*g);
  json counts = json::array();
  for (std::size_t k = 0; k <= ctx.n(3); ++k) counts.push_back(path_basis(*g, k).size());
  json center = json::array();
  for (auto e : center_basis(*g)) center.push_back(g->edge(e).name);
  Outcome o;
  o.body = {{"vertices", g->vertex_count()},
            {"edges", g->edge_count()},
            {"range_surjective", g->range_surjective()},
            {"source_surjective", g->source_surjective()},
            {"is_full", flags.is_full},
            {"left_faithful", flags.left_faithful},
            {"warnings", g->warnings()},
            {"center", center},
            {"path_counts", counts}};
  return o;
}

Outcome fock_check(Context& ctx) {
  Outcome o;
  o.tol = ctx.tol(1e-12);
  const auto rep = cuntz_toeplitz_check(ctx.graph(), ctx.n(4), o.tol);
  json rel = json::array();
  for (const auto& r : rep.relations)
    rel.push_back({{"relation", r.relation}, {"max_deviation", r.max_deviation}, {"passed", r.passed}});
  o.body = {{"N", rep.truncation}, {"relations", rel}};
  o.worst = rep.worst();
  o.pass = rep.passed;
  return o;
}

Outcome eval(Context& ctx) {
  const auto g = ctx.graph();
  const auto x = io::poly_from_json(g, ctx.load("poly", ctx.cfg.poly));
  const auto pts = ctx.points(true);
  std::vector<VertexMatrix> values;
  for (const auto& p : pts) values.push_back(evaluate_poly(x, p));
  const auto n = std::max(ctx.n(x.degree() + 4), x.degree());
  Outcome o;
  o.body = {{"degree", x.degree()}, {"values", matrices_to_json(values)}, {"N", n},
            {"fock_norm_bound", fock_norm_bound(x, n)}};
  return o;
}

Outcome pick(Context& ctx) {
  const auto f = ctx.samples();
  if (f.b.empty() || f.c.empty()) throw ValidationError("pick needs \"B\" and \"C\" in the sample file");
  Outcome o;
  o.tol = ctx.tol(1e-9);
  const auto v = pick_feasibility(f.points, f.b, f.c, o.tol);
  o.body = io::verdict_to_json(v);
  o.worst = std::max(0.0, -v.worst_min_eig);
  o.pass = v.completely_positive;
  return o;
}

Outcome schur_check(Context& ctx) {
  const auto g = ctx.graph();
  auto f = ctx.samples();
  if (!ctx.cfg.poly.empty()) {
    const auto x = io::poly_from_json(g, ctx.load("poly", ctx.cfg.poly));
    f.values.clear();
    for (const auto& p : f.points) f.values.push_back(evaluate_poly(x, p));
  }
  if (f.values.empty()) throw ValidationError("schur-check needs \"values\" in the sample file or --poly");
  Outcome o;
  o.tol = ctx.tol(1e-9);
  const auto v = is_completely_positive(schur_kernel_matrix(f.points, f.values), o.tol);
  o.body = io::verdict_to_json(v);
  o.worst = std::max(0.0, -v.worst_min_eig);
  o.pass = v.completely_positive;
  return o;
}

Outcome transfer(Context& ctx) {
  const auto g = ctx.graph();
  const auto s = io::system_from_json(g, ctx.load("system", ctx.cfg.system));
  const auto pts = ctx.points(true);
  Outcome o;
  o.tol = ctx.tol(1e-10);
  const auto rep = validate_system(s, o.tol);
  const auto n = ctx.n(40);
  json evals = json::array();
  o.pass = rep.contractive;
  o.worst = std::max(0.0, rep.norm - 1.0);
  for (const auto& p : pts) {
    const double res = series_residual(s, p, n);
    const double bound = std::pow(p.norm(), static_cast<double>(n + 1)) / (1.0 - p.norm());
    evals.push_back({{"value", io::matrix_to_json(transfer_eval(s, p))},
                     {"series_residual", res},
                     {"tail_bound", bound}});
    o.worst = std::max(o.worst, res);
    if (res > bound + 1e-12) o.pass = false;
  }
  o.body = {{"system", io::system_report_to_json(rep)}, {"N", n}, {"points", evals}};
  return o;
}

Outcome realize(Context& ctx) {
  const auto g = ctx.graph();
  const auto f = ctx.samples();
  if (f.values.empty()) throw ValidationError("realize needs \"values\" in the sample file");
  Outcome o;
  o.tol = ctx.tol(1e-9);
  const auto r = realize_from_samples(f.points, f.values, ctx.vertex_set(ctx.cfg.q1),
                                      ctx.vertex_set(ctx.cfg.q2), o.tol);
  const auto rep = validate_system(r.system, 1e-8);
  json mult = json::object();
  for (std::size_t v = 0; v < g->vertex_count(); ++v) mult[g->vertex_name(v)] = r.system.multiplicity[v];
  o.body = {{"kernel", io::verdict_to_json(r.report.kernel)},
            {"gram_rank", r.report.gram_rank},
            {"gram_min_eig", r.report.gram_min_eig},
            {"isometry_defect", r.report.isometry_defect},
            {"interpolation_residual", r.report.interpolation_residual},
            {"padded", r.report.padded},
            {"note", r.report.note},
            {"multiplicities", mult},
            {"system_check", io::system_report_to_json(rep)}};
  if (ctx.cfg.system_out.empty()) {
    o.body["system"] = io::system_to_json(r.system);
  } else {
    std::ofstream os(ctx.cfg.system_out);
    if (!os) throw ValidationError("cannot write " + ctx.cfg.system_out);
    os << io::system_to_json(r.system).dump(2) << "\n";
  }
  o.worst = r.report.interpolation_residual;
  o.pass = rep.contractive;
  return o;
}

Outcome mobius(Context& ctx) {
  const auto g = ctx.graph();
  const auto gamma = io::central_from_json(g, ctx.load("gamma", ctx.cfg.gamma));
  Outcome o;
  o.tol = ctx.tol(1e-10);
  const auto col = mobius_colligation(gamma);
  const auto zero = zero_point(g);
  const double at_zero = spectral_norm(mobius_matrix(gamma, zero) - gamma.point().adjoint_matrix());
  const double at_gamma = spectral_norm(mobius_matrix(gamma, gamma.point()));
  o.worst = std::max({col.coisometry_residual, col.isometry_residual, at_zero, at_gamma});

  std::optional<BimoduleUnitary> u;
  if (!ctx.cfg.unitary.empty()) u = io::unitary_from_json(g, ctx.load("unitary", ctx.cfg.unitary));
  json images = json::array();
  for (const auto& p : ctx.points(false)) {
    const auto img = mobius_apply(gamma, p);
    const auto back = mobius_apply(gamma, img);
    double inv = 0.0;
    for (std::size_t e = 0; e < g->edge_count(); ++e) inv = std::max(inv, std::abs(back.weight(e) - p.weight(e)));
    json item = {{"image", io::point_to_json(img)}, {"norm", img.norm()}, {"involution_residual", inv}};
    if (u) item["pullback"] = io::point_to_json(pullback_point(gamma, *u, p));
    images.push_back(std::move(item));
    o.worst = std::max(o.worst, inv);
  }
  o.pass = o.worst <= o.tol;
  o.body = {{"center_dimension", gamma.center_dimension()},
            {"gamma_norm", gamma.norm()},
            {"colligation", {{"coisometry_residual", col.coisometry_residual},
                             {"isometry_residual", col.isometry_residual}}},
            {"g_of_zero_residual", at_zero},
            {"g_of_gamma_residual", at_gamma},
            {"points", images}};
  if (gamma.center_dimension() == 0) o.body["note"] = "trivial center: g_gamma is z -> -z";
  return o;
}

Outcome autom_demo(Context& ctx) {
  const auto g = ctx.graph(true);
  const cplx lambda = parse_lambda(ctx.cfg.lambda);
  const auto n = ctx.n(20);
  Outcome o;
  o.tol = ctx.tol(1e-7);
  const auto t = two_vertex_alpha_lambda(g, lambda, n);
  const auto& r = t.roles;
  std::mt19937_64 rng(ctx.cfg.seed);
  std::vector<DualPoint> pts;
  for (std::size_t i = 0; i < ctx.cfg.samples; ++i) pts.push_back(random_point(g, rng, 0.95));

  double series = 0.0, bound_slack = 0.0, involution = 0.0, pullback_f = 0.0;
  const auto gamma = make_central_point(g, {{r.g, lambda}});
  const auto id = identity_unitary(g);
  const auto sf = HardyPoly::shift(g, r.f);
  for (const auto& p : pts) {
    const CMatrix tau = tau_lambda_matrix(p, lambda);
    const double bound = alpha_lambda_tail_bound(lambda, p, n);
    const double de = std::abs(evaluate_poly(t.te, p)(Eigen::Index(r.w), Eigen::Index(r.v)) - tau(Eigen::Index(r.w), Eigen::Index(r.e)));
    const double df = std::abs(evaluate_poly(t.tf, p)(Eigen::Index(r.v), Eigen::Index(r.w)) - tau(Eigen::Index(r.v), Eigen::Index(r.f)));
    const double dg = std::abs(evaluate_poly(t.tg, p)(Eigen::Index(r.w), Eigen::Index(r.w)) - tau(Eigen::Index(r.w), Eigen::Index(r.g)));
    const double worst = std::max({de, df, dg});
    series = std::max(series, worst);
    bound_slack = std::max(bound_slack, worst - bound);
    involution = std::max(involution, spectral_norm(mobius_matrix(gamma, mobius_apply(gamma, p)) - p.adjoint_matrix()));
    const VertexMatrix pf = pullback_evaluate(gamma, id, sf, p);
    pullback_f = std::max(pullback_f, std::abs(pf(Eigen::Index(r.v), Eigen::Index(r.w)) - tau(Eigen::Index(r.v), Eigen::Index(r.f))));
  }
  const auto ideal = kernel_ideal_check(pts, 10, ctx.cfg.seed);
  const bool tf_exact = t.tf == HardyPoly::shift(g, r.f) * cplx(-1.0);

  o.worst = std::max({series, involution, pullback_f, ideal.worst()});
  o.pass = bound_slack <= 1e-12 && series <= o.tol && tf_exact && ideal.worst() < 1e-13 && involution <= 1e-10 &&
           pullback_f <= 1e-12;
  o.body = {{"lambda", io::complex_to_json(lambda)},
            {"N", n},
            {"samples", pts.size()},
            {"seed", ctx.cfg.seed},
            {"series_vs_closed_form", series},
            {"excess_over_tail_bound", std::max(0.0, bound_slack)},
            {"T_f_exact", tf_exact},
            {"mobius_involution_residual", involution},
            {"pullback_S_f_residual", pullback_f},
            {"kernel_ideal", {{"commutator_max", ideal.commutator_max}, {"multiples_max", ideal.multiples_max}}},
            {"T_e", io::poly_to_json(t.te)},
            {"T_f", io::poly_to_json(t.tf)},
            {"T_g", io::poly_to_json(t.tg)}};
  return o;
}

Outcome dispatch(Context& ctx) {
  const auto& c = ctx.cfg.command;
  if (c == "validate-graph") return validate_graph(ctx);
  if (c == "fock-check") return fock_check(ctx);
  if (c == "eval") return eval(ctx);
  if (c == "pick") return pick(ctx);
  if (c == "schur-check") return schur_check(ctx);
  if (c == "transfer") return transfer(ctx);
  if (c == "realize") return realize(ctx);
  if (c == "mobius") return mobius(ctx);
  if (c == "autom-demo") return autom_demo(ctx);
  throw ValidationError("unknown command " + c);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Context ctx(cfg);
  Outcome o;
  int code = kPass;
  json rep;
  try {
    o = dispatch(ctx);
    code = o.pass ? kPass : kFailed;
    rep = o.body;
    rep["verdict"] = o.pass ? "pass" : "fail";
  } catch (const FeasibilityError& e) {
    code = kFailed;
    rep = {{"verdict", "infeasible"}, {"error", e.what()}};
  } catch (const ConditioningError& e) {
    code = kFailed;
    rep = {{"verdict", "ill-conditioned"}, {"error", e.what()}, {"value", e.value()}};
  } catch (const StructuralError& e) {
    code = kFailed;
    rep = {{"verdict", "structural failure"}, {"error", e.what()}};
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  rep["command"] = cfg.command;
  rep["inputs"] = ctx.inputs();
  rep["tol"] = o.tol;
  rep["worst_residual"] = o.worst;

  const auto text = rep.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream os(cfg.out);
    if (!os) {
      err << "error: cannot write " << cfg.out << "\n";
      return kInputError;
    }
    os << text;
  }
  if (code != kPass && rep.contains("error")) err << rep["error"].get<std::string>() << "\n";
  return code;
}

int main(int argc, char** argv) {
  CLI::App app{"Hardy algebras of finite directed graphs: evaluation, Pick tests, realizations"};
  app.require_subcommand(1);
  RunConfig cfg;
  double tol = 0.0;
  std::size_t n = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph, "graph JSON");
    sub->add_option("--N", n, "truncation degree");
    sub->add_option("--tol", tol, "tolerance");
    sub->add_option("--out", cfg.out, "report path (default stdout)");
  };
  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"validate-graph", "check a graph file and report its flags"},
      {"fock-check", "Cuntz-Toeplitz relations on the truncated Fock space"},
      {"eval", "evaluate a polynomial at dual points"},
      {"pick", "Pick feasibility of interpolation data"},
      {"schur-check", "complete positivity of the Schur kernel of samples"},
      {"transfer", "validate a system matrix and compare transfer values with the Taylor series"},
      {"realize", "build a system matrix from Schur samples"},
      {"mobius", "Mobius map of a central point and its colligation"},
      {"autom-demo", "the two-vertex automorphism example"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    subs.push_back(sub);
  }
  auto find = [&](const std::string& name) { return app.get_subcommand(name); };
  find("eval")->add_option("--poly", cfg.poly, "polynomial JSON");
  find("schur-check")->add_option("--poly", cfg.poly, "polynomial JSON supplying the values");
  for (const char* name : {"eval", "transfer", "mobius"}) find(name)->add_option("--point", cfg.point, "dual point JSON");
  for (const char* name : {"eval", "pick", "schur-check", "transfer", "realize", "mobius"})
    find(name)->add_option("--points", cfg.points, "sample file JSON");
  find("transfer")->add_option("--system", cfg.system, "system matrix JSON");
  find("realize")->add_option("--system-out", cfg.system_out, "write the realized system here");
  find("realize")->add_option("--q1", cfg.q1, "input vertices (default all)");
  find("realize")->add_option("--q2", cfg.q2, "output vertices (default all)");
  find("mobius")->add_option("--gamma", cfg.gamma, "central point JSON");
  find("mobius")->add_option("--unitary", cfg.unitary, "bimodule unitary JSON");
  auto* demo = find("autom-demo");
  demo->add_option("--lambda", cfg.lambda, "lambda as re or re,im");
  demo->add_option("--seed", cfg.seed, "random seed");
  demo->add_option("--samples", cfg.samples, "number of random points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  for (auto* sub : subs) {
    if (!sub->parsed()) continue;
    cfg.command = sub->get_name();
    if (sub->count("--N")) cfg.n = n;
    if (sub->count("--tol")) {
      if (!(tol > 0.0)) {
        std::cerr << "error: --tol must be positive\n";
        return kInputError;
      }
      cfg.tol = tol;
    }
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace hardy::cli
