// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "test_support.hpp"
#include "toric/bases.hpp"
#include "toric/normal_form.hpp"
#include "toric/reductions.hpp"

using namespace toric;
using namespace toric::testing;
namespace fs = std::filesystem;

namespace {

// Pinned protocol constants and tolerances.
constexpr std::size_t kInstances = 200;
constexpr std::uint64_t kSeed = 12345;
constexpr Int kMaxBound = 3;
constexpr Int kMaxDegree = 4;
constexpr std::size_t kOrderSamples = 10'000;
constexpr double kCriterion1Seconds = 60.0;
constexpr std::size_t kRandomGraphs = 20;
constexpr std::size_t kMaxPath = 31;
// Every comparison below is exact: zero tolerance on sets, vectors, counts.

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

const std::vector<RandomInstance>& instances() {
  static const auto v = random_instances(kInstances, kSeed);
  return v;
}

KernelLattice box_lattice(const SparseIntMatrix& a, Int g) {
  return build_lattice(a, g, column_ordering(a, OrderingStrategy::MinFill));
}

void for_each_monomial(std::size_t n, Int g, const std::function<void(const IntVector&)>& f) {
  IntVector u(n, 0);
  while (true) {
    f(u);
    std::size_t j = 0;
    while (j < n && u[j] == g) u[j++] = 0;
    if (j == n) return;
    ++u[j];
  }
}

std::string where(std::size_t k, const std::string& extra = "") {
  return "instance " + std::to_string(k) + (extra.empty() ? "" : ", " + extra);
}

// Smallest g with graver_bruteforce(g) == graver_bruteforce(g + 1).
Int saturated_bound(const SparseIntMatrix& a) {
  Int g = 1;
  while (oracle::graver_bruteforce(a, g) != oracle::graver_bruteforce(a, g + 1)) ++g;
  return g;
}

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t compared = 0;
  for (std::size_t k = 0; k < instances().size(); ++k)
    for (Int g = 1; g <= kMaxBound; ++g) {
      const auto& a = instances()[k].a;
      if (sorted(box_lattice(a, g).elements()) != oracle::enumerate_kernel(a, g))
        o.fail(where(k, "g=" + std::to_string(g)));
      ++compared;
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > kCriterion1Seconds) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(compared) + " lattices, " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t worst_rows = 0;
  for (std::size_t k = 0; k < instances().size(); ++k)
    for (Int g = 1; g <= kMaxBound; ++g) {
      const auto& a = instances()[k].a;
      const auto l = box_lattice(a, g);
      const BigInt bound =
          BigInt(a.cols()) * boost::multiprecision::pow(BigInt(2 * g + 1), static_cast<unsigned>(l.clique_number()));
      if (BigInt(l.stored_rows()) > bound) o.fail(where(k, "g=" + std::to_string(g)));
      worst_rows = std::max(worst_rows, l.stored_rows());
    }
  if (o.pass) o.detail = "max stored rows " + std::to_string(worst_rows);
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (std::size_t k = 0; k < instances().size(); ++k)
    for (Int d = 1; d <= kMaxDegree; ++d) {
      const auto& a = instances()[k].a;
      const auto l = build_truncated_lattice(a, d, column_ordering(a, OrderingStrategy::MinFill));
      if (sorted(l.elements()) != oracle::enumerate_truncated(a, d)) o.fail(where(k, "d=" + std::to_string(d)));
    }
  if (o.pass) o.detail = std::to_string(instances().size() * kMaxDegree) + " truncated lattices";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const std::vector<std::pair<std::string, SparseIntMatrix>> named{
      {"twisted cubic", twisted_cubic()},
      {"K22", oracle::two_by_two_minors(2, 2)},
      {"K23", oracle::two_by_two_minors(2, 3)}};
  for (const auto& [name, a] : named) {
    const Int g = saturated_bound(a);
    const auto got = graver_basis(box_lattice(a, g)).vectors;
    if (got != oracle::graver_bruteforce(a, g)) o.fail(name);
    if (name == "K22" && got != std::vector<IntVector>{{-1, 1, 1, -1}, {1, -1, -1, 1}}) o.fail("K22 not the minor");
  }
  for (std::size_t k = 0; k < instances().size(); ++k)
    for (Int g = 1; g <= kMaxBound; ++g) {
      const auto& a = instances()[k].a;
      if (graver_basis(box_lattice(a, g)).vectors != oracle::graver_bruteforce(a, g))
        o.fail(where(k, "g=" + std::to_string(g)));
    }
  if (o.pass) o.detail = "3 named matrices + " + std::to_string(instances().size()) + " instances x 3 bounds";
  return o;
}

Outcome criterion5() {
  Outcome o;
  {
    const auto a = oracle::two_by_two_minors(2, 3);
    const auto grlex = MonomialOrder::grlex(6);
    const auto gb = reduced_groebner_basis(box_lattice(a, saturated_bound(a)), grlex).binomials;
    // x_{1,r} x_{2,s} - x_{1,s} x_{2,r}, columns x11, x21, x12, x22, x13, x23.
    std::vector<Binomial> minors;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t s = r + 1; s < 3; ++s) {
        IntVector p(6, 0), q(6, 0);
        p[2 * r] = p[2 * s + 1] = 1;
        q[2 * s] = q[2 * r + 1] = 1;
        minors.push_back(grlex.compare(p, q) > 0 ? Binomial(p, q) : Binomial(q, p));
      }
    std::sort(minors.begin(), minors.end());
    if (gb != minors) o.fail("K23 basis is not the three minors");
  }
  std::size_t checked = 0;
  for (std::size_t k = 0; k < instances().size(); ++k) {
    const auto& a = instances()[k].a;
    const std::size_t n = a.cols();
    for (Int g = 1; g <= kMaxBound; ++g) {
      const auto l = box_lattice(a, g);
      for (const auto& order : {MonomialOrder::grlex(n), MonomialOrder::lex(n)}) {
        const auto gb = reduced_groebner_basis(l, order).binomials;
        std::vector<oracle::OrientedPair> got;
        for (const auto& b : gb) got.push_back({b.head, b.tail});
        std::sort(got.begin(), got.end());
        if (got != oracle::reduced_gb_bruteforce(a, order.weights(), g))
          o.fail(where(k, "g=" + std::to_string(g) + " " + order.describe()));
        if (!is_reduced(gb)) o.fail(where(k, "not reduced"));
        ++checked;
      }
    }
  }
  if (o.pass) o.detail = "K23 minors + " + std::to_string(checked) + " bases";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t monomials = 0;
  for (std::size_t k = 0; k < instances().size(); ++k) {
    const auto& a = instances()[k].a;
    const std::size_t n = a.cols();
    for (const auto& order : {MonomialOrder::grlex(n), MonomialOrder::lex(n)}) {
      std::map<IntVector, IntVector> ip_route;
      for (Int g = 1; g <= kMaxBound; ++g) {
        // The box reaches every Graver coordinate so the lattice holds g∞.
        const auto l = build_lattice(a, graver_covering_bounds(a, g), column_ordering(a, OrderingStrategy::MinFill));
        const auto gb = reduced_groebner_basis(l, order).binomials;
        for_each_monomial(n, g, [&](const IntVector& u) {
          const IntVector dp = normal_form_bounded(l, order, u).normal;
          const IntVector div = reduce_by_basis(gb, order, u);
          auto it = ip_route.find(u);
          if (it == ip_route.end()) {
            const IpSolution s = solve_ip(normalform_to_ip(a, order, u));
            it = ip_route.emplace(u, s.status == IpStatus::Optimal ? s.z : IntVector{}).first;
          }
          if (dp != div || dp != it->second) o.fail(where(k, order.describe() + " u=" + to_csv(u)));
          ++monomials;
        });
      }
    }
  }
  if (o.pass) o.detail = std::to_string(monomials) + " monomial/order pairs";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  for (std::size_t t = 0; t < kOrderSamples; ++t) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<BigInt> w(n);
    for (auto& x : w) x = static_cast<long>(rng() % 5);
    const Int r = 2 + static_cast<Int>(rng() % 9);
    const auto c = weight_vector(w, r, n);
    IntVector u(n), v(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = static_cast<Int>(rng() % 20);
      v[j] = u[j] + static_cast<Int>(rng() % static_cast<std::uint64_t>(2 * r - 1)) - (r - 1);
    }
    BigInt cu = 0, cv = 0;
    for (std::size_t j = 0; j < n; ++j) {
      cu += c[j] * u[j];
      cv += c[j] * v[j];
    }
    if ((MonomialOrder(w).compare(u, v) < 0) != (cu < cv)) o.fail("sample " + std::to_string(t));
  }
  if (o.pass) o.detail = std::to_string(kOrderSamples) + " samples";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<std::tuple<std::string, Graph, int>> cases{
      {"K3", complete_graph(3), 2}, {"C5", cycle_graph(5), 3}, {"K4", complete_graph(4), 3}};
  for (const auto& [name, g, expected] : cases) {
    const auto ip = vertex_cover_ip(g);
    const auto direct = solve_ip(ip);
    const auto via = solve_via_normal_form(ip);
    if (via.solution.status != IpStatus::Optimal || via.solution.objective != expected ||
        direct.objective != expected)
      o.fail(name + " optimum");
    BigInt cminus_t = 0;
    for (std::size_t j = 0; j < ip.variables(); ++j)
      if (ip.c[j] < 0) cminus_t += -ip.c[j] * *ip.upper_bound(j);
    if (BigInt(via.r) != cminus_t + ip.objective(via.solution.z)) o.fail(name + " r identity");
  }
  if (o.pass) o.detail = "K3=2, C5=3, K4=3";
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (const auto& [name, a] : std::vector<std::pair<std::string, SparseIntMatrix>>{
           {"twisted cubic", twisted_cubic()}, {"K23", oracle::two_by_two_minors(2, 3)}}) {
    const std::size_t n = a.cols();
    const auto l = box_lattice(a, saturated_bound(a));
    const auto graver = graver_basis(l).vectors;
    for (const auto& order : {MonomialOrder::lex(n), MonomialOrder::grlex(n)}) {
      std::vector<Binomial> universal;
      for (const auto& v : graver) {
        const Binomial b = Binomial::from_kernel_vector(v);
        if (order.compare(b.head, b.tail) > 0) universal.push_back(b);
      }
      const auto gb = reduced_groebner_basis(l, order).binomials;
      for_each_monomial(n, 2, [&](const IntVector& u) {
        if (reduce_by_basis(universal, order, u) != reduce_by_basis(gb, order, u))
          o.fail(name + " " + order.describe() + " u=" + to_csv(u));
      });
    }
  }
  if (o.pass) o.detail = "twisted cubic and K23, lex and grlex";
  return o;
}

Outcome criterion10() {
  Outcome o;
  for (std::uint64_t s = 1; s <= kRandomGraphs; ++s) {
    const std::size_t v = 4 + s % 6;
    const auto edges = oracle::random_graph(v, 0.45, kSeed + s);
    if (row_graph(oracle::graph_incidence(v, edges)) != Graph(v, std::vector<Edge>(edges.begin(), edges.end())))
      o.fail("row graph of incidence, seed " + std::to_string(s));
  }
  {
    const std::vector<IntVector> a1{{1, 1, 1}, {1, 2, 3}}, a2{{1, 0, 1}, {2, 1, 1}};
    const std::size_t s1 = 2, s2 = 2, n = 4;
    const Graph g = row_graph(oracle::nfold(a1, a2, n));
    Permutation p;
    for (std::size_t i = s1 + n * s2; i-- > 0;) p.push_back(i);
    const auto e = eliminate(g, p);
    if (!e.fill_edges.empty() || e.height > s1 + s2) o.fail("n-fold ordering");
  }
  for (std::size_t n = 1; n <= 10; ++n) {
    const Graph k = complete_graph(n);
    for (auto s : {OrderingStrategy::MinDegree, OrderingStrategy::MinFill}) {
      const Permutation p = heuristic_ordering(k, s);
      if (treewidth_estimate(k, p) != n - 1 || treedepth_estimate(k, p) != n) o.fail("K_" + std::to_string(n));
    }
  }
  for (std::size_t n = 1; n <= kMaxPath; ++n) {
    Permutation p;
    median_ordering(0, n, p);
    if (treedepth_estimate(path_graph(n), p) != ceil_log2(n + 1)) o.fail("path P_" + std::to_string(n));
  }
  if (o.pass) o.detail = "incidence, n-fold, K_n, paths up to 31";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

Outcome criterion11(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.fail("no CLI path given");
    return o;
  }
  const fs::path dir = fs::temp_directory_path() / ("toric_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  write_file(dir / "tc.txt", "2 4\n1 1 1 1\n0 1 2 3\n");
  write_file(dir / "k23.txt", format_matrix(oracle::two_by_two_minors(2, 3)));
  write_file(dir / "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
  write_file(dir / "ip.json", R"({"A": [[1, 1, 0], [0, 1, 1]], "b": [1, 1], "c": [2, 3, -1], "upper": [1, 1, 1], "hint": [1, 0, 1]})");
  const std::vector<std::string> commands{
      "graph-stats -m tc.txt",
      "lattice -m tc.txt --bound 2 count",
      "lattice -m tc.txt --bound 2 list",
      "lattice -m tc.txt --degree 3 --format text list",
      "lattice -m tc.txt --bound 2 --ordering min-degree contains 1,-2,1,0",
      "normal-form -m tc.txt --bound 3 --order grlex --monomial 2,0,0,2",
      "normal-form -m tc.txt --bound 3 --order lex --monomial 1,1,1,1 --via gb",
      "normal-form -m tc.txt --bound 3 --order lex --monomial 0,2,0,1 --via ip",
      "normal-form -m tc.txt --bound 3 --order grlex --polynomial '1:1,0,1,0 -1:0,2,0,0 4:0,0,2,1'",
      "groebner -m k23.txt --bound 2 --order grlex",
      "groebner -m tc.txt --bound 3 --order lex --format text",
      "groebner -m tc.txt --truncate 2 --order grlex",
      "graver -m tc.txt --bound 3",
      "graver -m k23.txt --truncate 2 --format text",
      "solve-ip ip.json",
      "solve-ip ip.json --via normal-form",
      "reduce-ip ip.json --to normal-form --out-dir out",
      "vertex-cover c5.txt",
      "vertex-cover c5.txt --via normal-form",
      "gen --kind minors --l 2 --m 3",
      "gen --kind nfold --a1 '1,1;1,2' --a2 '1,1' --n 3",
      "gen --kind threeway --l 2 --m 2 --n 2",
      "gen --kind random --rows 3 --cols 6 --max-abs 2 --density 0.5 --seed 9",
  };
  std::size_t run = 0;
  for (const auto& cmd : commands) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / ("run" + std::to_string(rep) + ".txt");
      const std::string line = "cd '" + dir.string() + "' && '" + cli + "' " + cmd + " > '" + out.string() + "' 2>&1";
      const int status = std::system(line.c_str());
      outputs[rep] = std::to_string(status) + "\n" + slurp(out);
      if (cmd.rfind("reduce-ip", 0) == 0)
        for (const char* f : {"A_prime.txt", "b_prime.txt", "u.txt"}) outputs[rep] += slurp(dir / "out" / f);
    }
    if (outputs[0] != outputs[1]) o.fail("differs: " + cmd);
    if (outputs[0].rfind("0\n", 0) != 0) o.fail("nonzero exit: " + cmd);
    ++run;
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = std::to_string(run) + " commands byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? fs::absolute(argv[1]).string() : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"lattice equals kernel enumeration", criterion1},
      {"stored rows within n(2g+1)^(k+1)", criterion2},
      {"truncated lattice equals definitional filter", criterion3},
      {"Graver basis equals brute force", criterion4},
      {"reduced Groebner basis equals brute force", criterion5},
      {"normal-form routes agree", criterion6},
      {"weight vector realises the order", criterion7},
      {"vertex cover through the normal-form reduction", criterion8},
      {"Graver basis is a universal Groebner basis", criterion9},
      {"graph-structure fixtures", criterion10},
      {"CLI determinism", [&] { return criterion11(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char line[512];
    std::snprintf(line, sizeof line, "criterion %2zu: %s  %s [%s] (%.1fs)", i + 1, o.pass ? "PASS" : "FAIL",
                  criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::cout << line << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
