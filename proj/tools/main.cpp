#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "io.hpp"
#include "toric/bases.hpp"
#include "toric/graph.hpp"
#include "toric/lattice.hpp"
#include "toric/normal_form.hpp"
#include "toric/reductions.hpp"
#include "toric_oracle/oracle.hpp"

using namespace toric;
using toric::cli::Json;

namespace {

struct RunConfig {
  std::string matrix_path;
  bool drop_zero_rows = false;
  std::string order_spec = "grlex";
  std::optional<Int> bound;
  std::optional<Int> degree;
  std::string ordering = "auto";
  std::string format = "json";
  std::size_t threads = 1;
  bool quiet = false;
  // Overridable through TORIC_BUDGET.
  std::size_t budget = 50'000'000;
};

void warn(const RunConfig& cfg, const std::string& msg) {
  if (!cfg.quiet) std::cerr << "warning: " << msg << "\n";
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

SparseIntMatrix load_matrix(const RunConfig& cfg) {
  ParsedMatrix parsed = read_matrix_file(cfg.matrix_path, {cfg.drop_zero_rows});
  for (const auto& w : parsed.warnings) warn(cfg, w);
  return std::move(parsed.matrix);
}

LatticeOptions lattice_options(const RunConfig& cfg) { return LatticeOptions{cfg.budget}; }

// "auto" tries both greedy heuristics on the column graph and keeps the one
// with the smaller clique number (min-fill on ties).
Permutation choose_ordering(const RunConfig& cfg, const SparseIntMatrix& a) {
  const std::string& spec = cfg.ordering;
  if (spec == "min-fill") return column_ordering(a, OrderingStrategy::MinFill);
  if (spec == "min-degree") return column_ordering(a, OrderingStrategy::MinDegree);
  if (spec.rfind("file:", 0) == 0) {
    Permutation p = cli::parse_ordering(cli::read_text_file(spec.substr(5)));
    if (!is_permutation_of(p, a.cols()))
      throw ParseError("ordering file is not a permutation of the " + std::to_string(a.cols()) + " columns");
    return p;
  }
  if (spec != "auto") throw ParseError("unknown ordering '" + spec + "'");
  const Graph g = column_graph(a);
  Permutation fill = heuristic_ordering(g, OrderingStrategy::MinFill);
  Permutation degree = heuristic_ordering(g, OrderingStrategy::MinDegree);
  return treewidth_estimate(g, degree) < treewidth_estimate(g, fill) ? degree : fill;
}

Int default_bound(const RunConfig& cfg, const SparseIntMatrix& a) {
  const BigInt g = graver_infinity_bound(a);
  if (g > BigInt(1) << 20)
    throw BudgetError("the default bound (2ma+1)^m = " + g.str() + " is far beyond any feasible table; pass --bound");
  const Int gi = static_cast<Int>(g);
  const Graph col = column_graph(a);
  const std::size_t width = a.cols() ? treewidth_estimate(col, heuristic_ordering(col, OrderingStrategy::MinFill)) + 1 : 0;
  BigInt estimate = BigInt(a.cols()) * boost::multiprecision::pow(BigInt(2 * gi + 1), static_cast<unsigned>(width));
  if (estimate > BigInt(cfg.budget))
    warn(cfg, "default bound g = (2ma+1)^m = " + g.str() + " may need up to " + estimate.str() +
                  " table rows (budget " + std::to_string(cfg.budget) + "); consider --bound");
  return gi;
}

KernelLattice make_lattice(const RunConfig& cfg, const SparseIntMatrix& a) {
  const Permutation ordering = choose_ordering(cfg, a);
  if (cfg.degree) return build_truncated_lattice(a, *cfg.degree, ordering, lattice_options(cfg));
  const Int g = cfg.bound ? *cfg.bound : default_bound(cfg, a);
  return build_lattice(a, g, ordering, lattice_options(cfg));
}

Json lattice_header(const KernelLattice& l) {
  Json j;
  if (l.kind() == LatticeKind::DegreeTruncated) {
    j["kind"] = "degree";
    j["degree"] = l.degree();
  } else {
    j["kind"] = "infinity";
    j["bound"] = l.bound();
  }
  j["ordering"] = cli::to_json(IntVector(l.column_ordering().begin(), l.column_ordering().end()));
  j["clique_number"] = l.clique_number();
  j["stored_rows"] = l.stored_rows();
  return j;
}

std::string basis_kind(BasisKind k) {
  switch (k) {
    case BasisKind::ReducedGroebner: return "reduced_groebner";
    case BasisKind::Graver: return "graver";
    case BasisKind::TruncatedGroebner: return "truncated_groebner";
    case BasisKind::TruncatedGraver: return "truncated_graver";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

int cmd_graph_stats(const RunConfig& cfg) {
  const SparseIntMatrix a = load_matrix(cfg);
  auto stats = [](const Graph& g) {
    Json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    for (auto [name, s] : {std::pair{"min_degree", OrderingStrategy::MinDegree},
                           std::pair{"min_fill", OrderingStrategy::MinFill}}) {
      const Permutation p = heuristic_ordering(g, s);
      j[name] = {{"treewidth", treewidth_estimate(g, p)}, {"treedepth", treedepth_estimate(g, p)}};
    }
    return j;
  };
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["column_graph"] = stats(column_graph(a));
  out["row_graph"] = stats(row_graph(a));
  emit(out);
  return 0;
}

int cmd_lattice(const RunConfig& cfg, const std::string& action, const std::string& vector) {
  const SparseIntMatrix a = load_matrix(cfg);
  const KernelLattice l = make_lattice(cfg, a);
  if (action == "count") {
    Json j = lattice_header(l);
    j["count"] = cli::big_string(l.count());
    emit(j);
  } else if (action == "list") {
    if (cfg.format == "text") {
      l.for_each([](const IntVector& v) { std::cout << to_csv(v) << "\n"; });
      return 0;
    }
    Json j = lattice_header(l);
    Json elems = Json::array();
    l.for_each([&](const IntVector& v) { elems.push_back(cli::to_json(v)); });
    j["count"] = cli::big_string(BigInt(elems.size()));
    j["elements"] = std::move(elems);
    emit(j);
  } else {
    if (vector.empty()) throw ParseError("contains needs a vector argument");
    const IntVector v = parse_csv(vector);
    if (v.size() != a.cols())
      throw ParseError("vector has " + std::to_string(v.size()) + " entries, A has " + std::to_string(a.cols()) + " columns");
    emit(Json{{"vector", cli::to_json(v)}, {"contains", l.contains(v)}});
  }
  return 0;
}

int cmd_normal_form(const RunConfig& cfg, const std::string& monomial, const std::string& polynomial,
                    std::string via) {
  const SparseIntMatrix a = load_matrix(cfg);
  const MonomialOrder order = MonomialOrder::parse(cfg.order_spec, a.cols());
  if (monomial.empty() == polynomial.empty()) throw ParseError("pass exactly one of --monomial and --polynomial");

  std::optional<KernelLattice> lattice;
  std::optional<std::vector<Binomial>> gb;
  auto get_lattice = [&]() -> const KernelLattice& {
    if (!lattice) lattice = make_lattice(cfg, a);
    return *lattice;
  };
  auto get_gb = [&]() -> const std::vector<Binomial>& {
    if (!gb) gb = reduced_groebner_basis(get_lattice(), order).binomials;
    return *gb;
  };
  auto in_box = [&](const IntVector& u) {
    const KernelLattice& l = get_lattice();
    if (l.kind() == LatticeKind::DegreeTruncated) return one_norm(u) <= l.degree();
    return infinity_norm(u) <= l.bound();
  };
  auto reduce = [&](const IntVector& u, std::string& route) -> IntVector {
    route = via;
    if (route == "auto") route = in_box(u) ? "lattice" : "gb";
    if (route == "lattice") return normal_form_bounded(get_lattice(), order, u).normal;
    if (route == "gb") return reduce_by_basis(get_gb(), order, u);
    IpSolution s = solve_ip(normalform_to_ip(a, order, u), cfg.budget);
    if (s.status != IpStatus::Optimal) throw DomainError("normal-form IP has no optimum");
    return s.z;
  };

  if (!monomial.empty()) {
    const IntVector u = parse_csv(monomial);
    if (u.size() != a.cols())
      throw ParseError("monomial has " + std::to_string(u.size()) + " exponents, A has " + std::to_string(a.cols()) + " columns");
    std::string route;
    const IntVector nf = reduce(u, route);
    emit(Json{{"input", cli::to_json(u)}, {"normal_form", cli::to_json(nf)}, {"standard", nf == u}, {"route", route}});
    return 0;
  }
  const Polynomial f = cli::parse_polynomial(polynomial);
  for (const auto& t : f)
    if (t.exponent.size() != a.cols()) throw ParseError("polynomial exponent length differs from the column count");
  std::string route;
  const Polynomial nf = [&] {
    auto less = [&](const IntVector& x, const IntVector& y) { return order.compare(x, y) == std::strong_ordering::greater; };
    std::map<IntVector, BigInt, decltype(less)> acc(less);
    for (const auto& t : f)
      if (t.coefficient != 0) acc[reduce(t.exponent, route)] += t.coefficient;
    Polynomial out;
    for (auto& [e, c] : acc)
      if (c != 0) out.push_back({c, e});
    return out;
  }();
  emit(Json{{"input", cli::to_json(f)}, {"normal_form", cli::to_json(nf)}, {"in_ideal", nf.empty()}});
  return 0;
}

int cmd_basis(const RunConfig& cfg, bool groebner) {
  const SparseIntMatrix a = load_matrix(cfg);
  std::optional<MonomialOrder> order;
  if (groebner) order = MonomialOrder::parse(cfg.order_spec, a.cols());
  const KernelLattice l = make_lattice(cfg, a);
  const BasisReport r = groebner ? reduced_groebner_basis(l, *order) : graver_basis(l);
  if (cfg.format == "text") {
    for (const auto& b : r.binomials) std::cout << to_csv(b.head) << " -> " << to_csv(b.tail) << "\n";
    for (const auto& v : r.vectors) std::cout << to_csv(v) << "\n";
    return 0;
  }
  Json j;
  j["kind"] = basis_kind(r.kind);
  if (order) j["order"] = order->describe();
  if (l.kind() == LatticeKind::DegreeTruncated)
    j["degree"] = r.bound_used;
  else
    j["bound"] = r.bound_used;
  j["scanned"] = r.scanned;
  Json elems = Json::array();
  for (const auto& b : r.binomials) elems.push_back(Json{{"head", cli::to_json(b.head)}, {"tail", cli::to_json(b.tail)}});
  for (const auto& v : r.vectors) elems.push_back(cli::to_json(v));
  j["elements"] = std::move(elems);
  emit(j);
  return 0;
}

Json solution_json(const IpSolution& s) {
  Json j;
  switch (s.status) {
    case IpStatus::Optimal:
      j["status"] = "optimal";
      j["objective"] = cli::big_string(s.objective);
      j["solution"] = cli::to_json(s.z);
      break;
    case IpStatus::Infeasible: j["status"] = "infeasible"; break;
    case IpStatus::NoBox: j["status"] = "no_box"; break;
  }
  return j;
}

int finish_ip(const IpSolution& s, Json j) {
  emit(j);
  if (s.status == IpStatus::Infeasible) {
    std::cerr << "error: the integer program is infeasible\n";
    return 1;
  }
  if (s.status == IpStatus::NoBox) {
    std::cerr << "error: no finite box could be derived; add upper bounds\n";
    return 1;
  }
  return 0;
}

int cmd_solve_ip(const RunConfig& cfg, const std::string& input, const std::string& via) {
  const IntegerProgram ip = cli::parse_ip_json(cli::read_text_file(input));
  if (via == "normal-form") {
    const ReducedSolution rs = solve_via_normal_form(ip, false, OrderingStrategy::MinFill, lattice_options(cfg));
    Json j = solution_json(rs.solution);
    j["r"] = rs.r;
    j["normal_form"] = cli::to_json(rs.normal_form);
    return finish_ip(rs.solution, j);
  }
  const IpSolution s = solve_ip(ip, cfg.budget);
  Json j = solution_json(s);
  j["nodes"] = s.nodes;
  return finish_ip(s, j);
}

int cmd_reduce_ip(const RunConfig&, const std::string& input, const std::string& target, const std::string& out_dir,
                  bool graded) {
  if (target != "normal-form") throw ParseError("--to must be normal-form");
  const IntegerProgram ip = cli::parse_ip_json(cli::read_text_file(input));
  const NormalFormInstance inst = ip_to_normalform(ip, graded);
  Json j;
  j["order"] = inst.order.describe();
  j["offset"] = cli::big_string(inst.offset);
  j["rows"] = inst.a_prime.rows();
  j["cols"] = inst.a_prime.cols();
  j["A_prime"] = Json::array();
  for (const auto& row : inst.a_prime.dense()) j["A_prime"].push_back(cli::to_json(row));
  j["b_prime"] = Json::array();
  for (const auto& v : inst.b_prime) j["b_prime"].push_back(cli::big_string(v));
  j["u"] = cli::to_json(inst.u);
  j["bounds"] = cli::to_json(inst.bounds);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    auto write = [&](const std::string& name, const std::string& text) {
      const std::string path = (std::filesystem::path(out_dir) / name).string();
      std::ofstream f(path);
      if (!f) throw ParseError("cannot write '" + path + "'");
      f << text;
    };
    std::string b;
    for (std::size_t i = 0; i < inst.b_prime.size(); ++i) b += (i ? "," : "") + inst.b_prime[i].str();
    write("A_prime.txt", format_matrix(inst.a_prime));
    write("b_prime.txt", b + "\n");
    write("u.txt", to_csv(inst.u) + "\n");
    j["files"] = Json{{"matrix", "A_prime.txt"}, {"b", "b_prime.txt"}, {"u", "u.txt"}};
  }
  emit(j);
  return 0;
}

int cmd_vertex_cover(const RunConfig& cfg, const std::string& path, const std::string& via) {
  const Graph g = cli::parse_edge_list(cli::read_text_file(path));
  const IntegerProgram ip = vertex_cover_ip(g);
  Json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["via"] = via;
  IpSolution s;
  if (via == "normal-form") {
    const ReducedSolution rs = solve_via_normal_form(ip, false, OrderingStrategy::MinFill, lattice_options(cfg));
    s = rs.solution;
    j["r"] = rs.r;
  } else {
    s = solve_ip(ip, cfg.budget);
  }
  if (s.status == IpStatus::Optimal) {
    j["cover_size"] = cli::big_string(s.objective);
    IntVector cover;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (s.z[v]) cover.push_back(static_cast<Int>(v));
    j["cover"] = cli::to_json(cover);
  }
  return finish_ip(s, j);
}

struct GenArgs {
  std::string kind;
  std::size_t l = 2, m = 2, n = 2;
  std::string a1, a2, graph, output;
  std::size_t rows = 2, cols = 4;
  Int max_abs = 2;
  double density = 0.5;
  std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& g) {
  SparseIntMatrix a;
  if (g.kind == "nfold") {
    if (g.a1.empty() || g.a2.empty()) throw ParseError("nfold needs --a1 and --a2");
    auto a1 = cli::parse_rows(g.a1), a2 = cli::parse_rows(g.a2);
    if (a1[0].size() != a2[0].size()) throw ParseError("--a1 and --a2 need the same number of columns");
    a = oracle::nfold(a1, a2, g.n);
  } else if (g.kind == "minors") {
    a = oracle::two_by_two_minors(g.l, g.m);
  } else if (g.kind == "threeway") {
    a = oracle::threeway_table(g.l, g.m, g.n);
  } else if (g.kind == "incidence") {
    if (g.graph.empty()) throw ParseError("incidence needs --graph");
    const Graph gr = cli::parse_edge_list(cli::read_text_file(g.graph));
    const auto ge = gr.edges();
    oracle::EdgeList edges(ge.begin(), ge.end());
    a = oracle::graph_incidence(gr.vertex_count(), edges);
  } else if (g.kind == "random") {
    a = oracle::random_sparse(g.rows, g.cols, g.max_abs, g.density, g.seed);
  } else {
    throw ParseError("unknown kind '" + g.kind + "'");
  }
  if (g.output.empty()) {
    std::cout << format_matrix(a);
  } else {
    std::ofstream f(g.output);
    if (!f) throw ParseError("cannot write '" + g.output + "'");
    f << format_matrix(a);
  }
  return 0;
}

void add_matrix_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-m,--matrix", cfg.matrix_path, "Matrix file (dense 'm n' or 'sparse m n k' format)")->required();
  sub->add_flag("--drop-zero-rows", cfg.drop_zero_rows, "Drop zero rows instead of rejecting them");
}

void add_lattice_options(CLI::App* sub, RunConfig& cfg, bool degree_name_truncate) {
  auto* b = sub->add_option("--bound", cfg.bound, "Box bound g (default (2ma+1)^m)")->check(CLI::NonNegativeNumber);
  auto* d = sub->add_option(degree_name_truncate ? "--truncate" : "--degree", cfg.degree,
                            "Degree bound d for the truncated lattice")
                ->check(CLI::NonNegativeNumber);
  b->excludes(d);
  d->excludes(b);
  sub->add_option("--ordering", cfg.ordering, "auto | min-fill | min-degree | file:<path>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms, Groebner and Graver bases of toric ideals via join-tree dynamic programming", "toric"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("TORIC_BUDGET")) {
    try {
      cfg.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: TORIC_BUDGET must be a positive integer\n";
      return 2;
    }
  }
  app.add_option("--threads", cfg.threads, "Worker cap (computation is single-threaded)")->check(CLI::PositiveNumber);
  app.add_flag("-q,--quiet", cfg.quiet, "Suppress warnings");

  auto* graph_stats = app.add_subcommand("graph-stats", "Width estimates for the column and row graphs");
  add_matrix_options(graph_stats, cfg);

  std::string action, vector;
  auto* lattice = app.add_subcommand("lattice", "Build the kernel lattice and count, list or test membership");
  add_matrix_options(lattice, cfg);
  add_lattice_options(lattice, cfg, false);
  lattice->add_option("--format", cfg.format, "json | text")->check(CLI::IsMember({"json", "text"}));
  lattice->add_option("action", action, "count | list | contains")->required()->check(CLI::IsMember({"count", "list", "contains"}));
  lattice->add_option("vector", vector, "Comma-separated vector for contains");

  std::string monomial, polynomial, via = "auto";
  auto* nf = app.add_subcommand("normal-form", "Normal form of a monomial or polynomial");
  add_matrix_options(nf, cfg);
  add_lattice_options(nf, cfg, false);
  nf->add_option("--order", cfg.order_spec, "lex | grlex | weights:<csv>");
  nf->add_option("--monomial", monomial, "Exponent vector, comma-separated");
  nf->add_option("--polynomial", polynomial, "Terms coefficient:exponents separated by spaces or ';'");
  nf->add_option("--via", via, "auto | lattice | gb | ip")->check(CLI::IsMember({"auto", "lattice", "gb", "ip"}));

  auto* groebner = app.add_subcommand("groebner", "Reduced Groebner basis");
  add_matrix_options(groebner, cfg);
  add_lattice_options(groebner, cfg, true);
  groebner->add_option("--order", cfg.order_spec, "lex | grlex | weights:<csv>");
  groebner->add_option("--format", cfg.format, "json | text")->check(CLI::IsMember({"json", "text"}));

  auto* graver = app.add_subcommand("graver", "Graver basis");
  add_matrix_options(graver, cfg);
  add_lattice_options(graver, cfg, true);
  graver->add_option("--format", cfg.format, "json | text")->check(CLI::IsMember({"json", "text"}));

  std::string ip_input, ip_via = "branch-and-bound";
  auto* solve = app.add_subcommand("solve-ip", "Solve an integer program given as JSON");
  solve->add_option("input", ip_input, "IP JSON file")->required();
  solve->add_option("--via", ip_via, "branch-and-bound | normal-form")
      ->check(CLI::IsMember({"branch-and-bound", "normal-form"}));

  std::string target = "normal-form", out_dir;
  bool graded = false;
  auto* reduce = app.add_subcommand("reduce-ip", "Rewrite an integer program as a normal-form instance");
  reduce->add_option("input", ip_input, "IP JSON file")->required();
  reduce->add_option("--to", target, "Target problem")->check(CLI::IsMember({"normal-form"}));
  reduce->add_option("--out-dir", out_dir, "Also write A_prime.txt, b_prime.txt and u.txt here");
  reduce->add_flag("--graded", graded, "Use grlex instead of lex");

  std::string graph_path, vc_via = "branch-and-bound";
  auto* vc = app.add_subcommand("vertex-cover", "Minimum vertex cover through its integer program");
  vc->add_option("graph", graph_path, "Edge list file")->required();
  vc->add_option("--via", vc_via, "branch-and-bound | normal-form")
      ->check(CLI::IsMember({"branch-and-bound", "normal-form"}));

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a test matrix");
  gen->add_option("--kind", gen_args.kind, "nfold | minors | threeway | incidence | random")
      ->required()
      ->check(CLI::IsMember({"nfold", "minors", "threeway", "incidence", "random"}));
  gen->add_option("--l", gen_args.l)->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_args.m)->check(CLI::PositiveNumber);
  gen->add_option("--n", gen_args.n)->check(CLI::PositiveNumber);
  gen->add_option("--a1", gen_args.a1, "nfold top block, rows ';'-separated");
  gen->add_option("--a2", gen_args.a2, "nfold diagonal block, rows ';'-separated");
  gen->add_option("--graph", gen_args.graph, "Edge list for incidence");
  gen->add_option("--rows", gen_args.rows)->check(CLI::PositiveNumber);
  gen->add_option("--cols", gen_args.cols)->check(CLI::PositiveNumber);
  gen->add_option("--max-abs", gen_args.max_abs)->check(CLI::PositiveNumber);
  gen->add_option("--density", gen_args.density)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_args.seed);
  gen->add_option("-o,--output", gen_args.output, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*graph_stats) return cmd_graph_stats(cfg);
    if (*lattice) return cmd_lattice(cfg, action, vector);
    if (*nf) return cmd_normal_form(cfg, monomial, polynomial, via);
    if (*groebner) return cmd_basis(cfg, true);
    if (*graver) return cmd_basis(cfg, false);
    if (*solve) return cmd_solve_ip(cfg, ip_input, ip_via);
    if (*reduce) return cmd_reduce_ip(cfg, ip_input, target, out_dir, graded);
    if (*vc) return cmd_vertex_cover(cfg, graph_path, vc_via);
    if (*gen) return cmd_gen(gen_args);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
