#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "toric/error.hpp"
#include "toric/normal_form.hpp"
#include "toric/reductions.hpp"

using namespace toric;
using namespace toric::testing;

namespace {

IntegerProgram box_ip(SparseIntMatrix a, std::vector<BigInt> b, std::vector<BigInt> c, Int upper) {
  IntegerProgram ip;
  const std::size_t n = a.cols();
  ip.a = std::move(a);
  ip.b = std::move(b);
  ip.c = std::move(c);
  ip.upper.assign(n, upper);
  return ip;
}

// Exhaustive minimum over the box, lexicographically smallest among ties.
std::optional<IntVector> enumerate_optimum(const IntegerProgram& ip) {
  const std::size_t n = ip.variables();
  IntVector z(n, 0);
  std::optional<IntVector> best;
  BigInt best_value;
  while (true) {
    if (ip.is_feasible(z)) {
      const BigInt v = ip.objective(z);
      if (!best || v < best_value) best = z, best_value = v;
    }
    std::size_t j = n;
    while (j-- > 0) {
      if (z[j] < *ip.upper_bound(j)) {
        ++z[j];
        break;
      }
      z[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

}  // namespace

TEST(WeightVector, Examples) {
  EXPECT_EQ(weight_vector({1, 1}, 3, 2), (std::vector<BigInt>{12, 10}));
  EXPECT_EQ(weight_vector({0, 0, 0}, 2, 3), (std::vector<BigInt>{4, 2, 1}));
  const auto c = weight_vector({1, 1}, 3, 2);
  EXPECT_LT(c[1], c[0]);
  EXPECT_TRUE(MonomialOrder::grlex(2).compare({0, 1}, {1, 0}) < 0);
}

TEST(WeightVector, AgreesWithCompareInsideTheWindow) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<BigInt> w(n);
    for (auto& x : w) x = static_cast<long>(rng() % 4);
    const Int r = 2 + static_cast<Int>(rng() % 5);
    const auto c = weight_vector(w, r, n);
    IntVector u(n), v(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = static_cast<Int>(rng() % 10);
      v[j] = u[j] + static_cast<Int>(rng() % (2 * r - 1)) - (r - 1);
    }
    BigInt cu = 0, cv = 0;
    for (std::size_t j = 0; j < n; ++j) cu += c[j] * u[j], cv += c[j] * v[j];
    EXPECT_EQ(MonomialOrder(w).compare(u, v) < 0, cu < cv);
  }
}

TEST(NormalFormToIp, SmallExamples) {
  const auto a = mat({{1, 1}});
  const auto lex = MonomialOrder::lex(2);
  EXPECT_EQ(solve_ip(normalform_to_ip(a, lex, {1, 0})).z, (IntVector{0, 1}));
  EXPECT_EQ(solve_ip(normalform_to_ip(a, lex, {0, 3})).z, (IntVector{0, 3}));
}

TEST(NormalFormToIp, MatchesLatticeRoute) {
  for (const auto& inst : random_instances(30, 808)) {
    const std::size_t n = inst.a.cols();
    const auto l = build_lattice(inst.a, graver_covering_bounds(inst.a, 2), column_ordering(inst.a, OrderingStrategy::MinFill));
    for (const auto& order : {MonomialOrder::grlex(n), MonomialOrder::lex(n)}) {
      IntVector u(n, 0);
      for (std::size_t k = 0; k < 20; ++k) {
        for (std::size_t j = 0; j < n; ++j) u[j] = static_cast<Int>((k * 13 + j * 5) % 3);
        const IpSolution s = solve_ip(normalform_to_ip(inst.a, order, u));
        ASSERT_EQ(s.status, IpStatus::Optimal);
        EXPECT_EQ(s.z, normal_form_bounded(l, order, u).normal);
      }
    }
  }
}

TEST(SolveIp, SmallExamples) {
  auto ip = box_ip(mat({{1, 1}}), {3}, {1, 1}, 3);
  const auto s = solve_ip(ip);
  EXPECT_EQ(s.status, IpStatus::Optimal);
  EXPECT_EQ(s.objective, 3);
  EXPECT_EQ(s.z, (IntVector{0, 3}));
  EXPECT_EQ(solve_ip(box_ip(mat({{1}}), {-1}, {1}, 5)).status, IpStatus::Infeasible);
}

TEST(SolveIp, DerivesMissingBoundsOrReportsNoBox) {
  IntegerProgram ip;
  ip.a = mat({{1, 2}});
  ip.b = {7};
  ip.c = {3, 1};
  EXPECT_EQ(solve_ip(ip).objective, 6);
  ip.a = mat({{1, -1}});
  ip.b = {0};
  EXPECT_EQ(solve_ip(ip).status, IpStatus::NoBox);
}

TEST(SolveIp, MatchesEnumeration) {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 150; ++t) {
    const std::size_t m = 1 + rng() % 2, n = 2 + rng() % 3;
    const auto a = oracle::random_sparse(m, n, 2, 0.7, rng());
    IntVector z0(n);
    for (auto& x : z0) x = static_cast<Int>(rng() % 3);
    const IntVector bz = a.multiply(z0);
    std::vector<BigInt> b(bz.begin(), bz.end()), c(n);
    for (auto& x : c) x = static_cast<long>(rng() % 7) - 3;
    const auto ip = box_ip(a, b, c, 3);
    const auto s = solve_ip(ip);
    const auto ref = enumerate_optimum(ip);
    ASSERT_TRUE(ref.has_value());
    ASSERT_EQ(s.status, IpStatus::Optimal);
    EXPECT_EQ(s.objective, ip.objective(*ref));
    EXPECT_EQ(s.z, *ref);
  }
}

TEST(IpToNormalForm, Construction) {
  auto ip = box_ip(mat({{1, 1}}), {1}, {2, -1}, 1);
  ip.hint = IntVector{1, 0};
  const auto inst = ip_to_normalform(ip);
  EXPECT_EQ(inst.a_prime.rows(), 1u + 1u + 2u);
  EXPECT_EQ(inst.a_prime.cols(), 1u + 2u + 2u);
  EXPECT_EQ(inst.a_prime.multiply(inst.u),
            (IntVector{0, 1, 1, 1}));
  EXPECT_EQ(inst.offset, 1);
  EXPECT_TRUE(inst.order.is_lex());
  EXPECT_TRUE(ip_to_normalform(ip, true).order.is_grlex());
  ip.hint.reset();
  EXPECT_THROW(ip_to_normalform(ip), DomainError);
}

TEST(IpToNormalForm, RoundTripOnRandomBoxPrograms) {
  std::mt19937_64 rng(66);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 2 + rng() % 2;
    const auto a = oracle::random_sparse(1, n, 2, 0.8, rng());
    IntVector z0(n);
    for (auto& x : z0) x = static_cast<Int>(rng() % 2);
    const IntVector bz = a.multiply(z0);
    std::vector<BigInt> c(n);
    for (auto& x : c) x = static_cast<long>(rng() % 5) - 2;
    auto ip = box_ip(a, {BigInt(bz[0])}, c, 1 + static_cast<Int>(rng() % 2));
    ip.hint = z0;
    const auto direct = solve_ip(ip);
    for (bool graded : {false, true}) {
      const auto via = solve_via_normal_form(ip, graded);
      ASSERT_EQ(via.solution.status, IpStatus::Optimal);
      EXPECT_EQ(via.solution.objective, direct.objective);
      BigInt cminus_t = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (c[j] < 0) cminus_t += -c[j] * *ip.upper_bound(j);
      EXPECT_EQ(BigInt(via.r), cminus_t + via.solution.objective);
    }
  }
}

TEST(VertexCover, KnownOptima) {
  const std::vector<std::pair<Graph, int>> cases{{Graph(2, {{0, 1}}), 1},  {complete_graph(3), 2},
                                                 {cycle_graph(5), 3},       {complete_graph(4), 3},
                                                 {petersen_graph(), 6}};
  for (const auto& [g, opt] : cases) {
    const auto ip = vertex_cover_ip(g);
    EXPECT_EQ(ip.variables(), g.vertex_count() + g.edge_count());
    EXPECT_EQ(solve_ip(ip).objective, opt);
  }
}

TEST(VertexCover, ThroughNormalForm) {
  for (const auto& [g, opt] : std::vector<std::pair<Graph, int>>{{complete_graph(3), 2}, {cycle_graph(5), 3}}) {
    const auto via = solve_via_normal_form(vertex_cover_ip(g));
    EXPECT_EQ(via.solution.objective, opt);
    EXPECT_EQ(via.r, opt);
  }
}

TEST(IntegerProgram, Validation) {
  auto ip = box_ip(mat({{1, 1}}), {1, 2}, {1, 1}, 1);
  EXPECT_THROW(ip.validate(), DimensionError);
  ip.b = {1};
  ip.c = {1};
  EXPECT_THROW(ip.validate(), DimensionError);
}
