#include <gtest/gtest.h>

#include "test_support.hpp"
#include "toric/bases.hpp"
#include "toric/error.hpp"
#include "toric/normal_form.hpp"

using namespace toric;
using namespace toric::testing;

namespace {

KernelLattice lattice(const SparseIntMatrix& a, Int g) {
  return build_lattice(a, g, column_ordering(a, OrderingStrategy::MinFill));
}

std::vector<oracle::OrientedPair> as_pairs(const std::vector<Binomial>& gb) {
  std::vector<oracle::OrientedPair> out;
  for (const auto& b : gb) out.push_back({b.head, b.tail});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Binomial> minors_2x3() {
  // Columns x11, x21, x12, x22, x13, x23.
  auto e = [](std::size_t i, std::size_t r) { return (r - 1) * 2 + (i - 1); };
  std::vector<Binomial> out;
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t s = r + 1; s <= 3; ++s) {
      IntVector h(6, 0), t(6, 0);
      h[e(1, r)] = h[e(2, s)] = 1;
      t[e(1, s)] = t[e(2, r)] = 1;
      out.emplace_back(h, t);
    }
  return out;
}

}  // namespace

TEST(ReducedGb, SmallExamples) {
  const auto a = mat({{1, 1}});
  const auto l = lattice(a, 3);
  const auto lex = MonomialOrder::lex(2);
  EXPECT_TRUE(in_reduced_gb(l, lex, Binomial({1, 0}, {0, 1})));
  EXPECT_FALSE(in_reduced_gb(l, lex, Binomial({2, 0}, {0, 2})));
  const auto r = reduced_groebner_basis(l, lex);
  ASSERT_EQ(r.binomials.size(), 1u);
  EXPECT_EQ(r.binomials[0], Binomial({1, 0}, {0, 1}));
  EXPECT_EQ(r.kind, BasisKind::ReducedGroebner);
  EXPECT_THROW(in_reduced_gb(l, lex, Binomial({1, 0}, {0, 2})), DomainError);
  EXPECT_THROW(in_reduced_gb(l, lex, Binomial({0, 1}, {1, 0})), DomainError);
}

TEST(ReducedGb, K22MinorIsAMember) {
  const auto a = oracle::two_by_two_minors(2, 2);
  const auto l = lattice(a, 2);
  const auto grlex = MonomialOrder::grlex(4);
  const auto gb = reduced_groebner_basis(l, grlex).binomials;
  ASSERT_EQ(gb.size(), 1u);
  EXPECT_TRUE(in_reduced_gb(l, grlex, gb[0]));
}

TEST(ReducedGb, K23IsTheThreeMinors) {
  const auto a = oracle::two_by_two_minors(2, 3);
  const auto l = lattice(a, 2);
  const auto grlex = MonomialOrder::grlex(6);
  const auto gb = reduced_groebner_basis(l, grlex).binomials;
  ASSERT_EQ(gb.size(), 3u);
  std::vector<Binomial> expected;
  for (const auto& m : minors_2x3())
    expected.push_back(grlex.compare(m.head, m.tail) > 0 ? m : Binomial(m.tail, m.head));
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(gb, expected);
  EXPECT_TRUE(is_reduced(gb));
}

TEST(ReducedGb, TwistedCubicMatchesOracle) {
  const auto a = twisted_cubic();
  for (const auto& order : {MonomialOrder::grlex(4), MonomialOrder::lex(4)}) {
    const auto gb = reduced_groebner_basis(lattice(a, 3), order).binomials;
    EXPECT_EQ(as_pairs(gb), oracle::reduced_gb_bruteforce(a, order.weights(), 3));
    EXPECT_TRUE(is_reduced(gb));
  }
}

TEST(ReducedGb, RandomInstancesMatchOracle) {
  for (const auto& inst : random_instances(50, 606)) {
    const std::size_t n = inst.a.cols();
    for (Int g = 1; g <= 2; ++g)
      for (const auto& order : {MonomialOrder::grlex(n), MonomialOrder::lex(n)}) {
        const auto gb = reduced_groebner_basis(lattice(inst.a, g), order).binomials;
        EXPECT_EQ(as_pairs(gb), oracle::reduced_gb_bruteforce(inst.a, order.weights(), g)) << format_matrix(inst.a);
        EXPECT_TRUE(is_reduced(gb));
        for (const auto& b : gb) EXPECT_TRUE(order.compare(b.head, b.tail) > 0);
      }
  }
}

TEST(ReducedGb, ReductionIsConfluent) {
  const auto a = twisted_cubic();
  const auto grlex = MonomialOrder::grlex(4);
  auto gb = reduced_groebner_basis(lattice(a, 3), grlex).binomials;
  const auto reversed = std::vector<Binomial>(gb.rbegin(), gb.rend());
  for (Int x = 0; x <= 3; ++x)
    for (Int y = 0; y <= 3; ++y) {
      const IntVector u{x, 0, y, x};
      EXPECT_EQ(reduce_by_basis(gb, grlex, u), reduce_by_basis(reversed, grlex, u));
    }
}

TEST(Graver, SmallExamples) {
  const auto l = lattice(mat({{1, -1}}), 2);
  EXPECT_TRUE(in_graver(l, {1, 1}));
  EXPECT_FALSE(in_graver(l, {2, 2}));
  EXPECT_EQ(graver_basis(l).vectors, (std::vector<IntVector>{{-1, -1}, {1, 1}}));
  EXPECT_THROW(in_graver(l, {0, 0}), DomainError);
  EXPECT_THROW(in_graver(l, {1, 0}), DomainError);
  EXPECT_THROW(in_graver(l, {3, 3}), BoundError);
}

TEST(Graver, K22IsTheMinorVector) {
  const auto a = oracle::two_by_two_minors(2, 2);
  EXPECT_EQ(graver_basis(lattice(a, 2)).vectors, (std::vector<IntVector>{{-1, 1, 1, -1}, {1, -1, -1, 1}}));
}

TEST(Graver, MatchesBruteForce) {
  for (const auto& a : {mat({{1, 1, -2}}), twisted_cubic(), oracle::two_by_two_minors(2, 3)}) {
    const auto got = graver_basis(lattice(a, 3)).vectors;
    EXPECT_EQ(got, oracle::graver_bruteforce(a, 3));
    EXPECT_EQ(as_set(got), as_set(oracle::graver_completion(a)));
  }
}

TEST(Graver, MembershipAgainstOracle) {
  const auto a = twisted_cubic();
  const auto l = lattice(a, 3);
  const auto graver = as_set(oracle::graver_bruteforce(a, 3));
  for (const auto& v : oracle::enumerate_kernel(a, 3)) {
    if (is_zero(v)) continue;
    EXPECT_EQ(in_graver(l, v), graver.count(v) == 1) << to_csv(v);
  }
}

TEST(Graver, StructuralProperties) {
  for (const auto& inst : random_instances(50, 707)) {
    const auto l = lattice(inst.a, 2);
    const auto g = graver_basis(l).vectors;
    EXPECT_EQ(g, oracle::graver_bruteforce(inst.a, 2));
    const auto s = as_set(g);
    for (const auto& v : g) {
      EXPECT_TRUE(s.count(negate(v)));
      EXPECT_TRUE(l.contains(v));
      for (const auto& w : g)
        if (w != v) EXPECT_FALSE(conformal_leq(w, v));
    }
  }
}

TEST(Truncated, K23Degrees) {
  const auto a = oracle::two_by_two_minors(2, 3);
  const auto grlex = MonomialOrder::grlex(6);
  const auto ord = column_ordering(a, OrderingStrategy::MinFill);
  EXPECT_TRUE(truncated_bases(a, 1, grlex, ord).binomials.empty());
  EXPECT_EQ(truncated_bases(a, 2, grlex, ord).binomials.size(), 3u);
  EXPECT_EQ(truncated_bases(a, 2, std::nullopt, ord).kind, BasisKind::TruncatedGraver);
}

TEST(Truncated, MatchesFullComputationFiltered) {
  for (const auto& a : {twisted_cubic(), oracle::two_by_two_minors(2, 3)}) {
    const std::size_t n = a.cols();
    const auto ord = column_ordering(a, OrderingStrategy::MinFill);
    const auto full = lattice(a, 3);
    const auto grlex = MonomialOrder::grlex(n);
    const auto gb = reduced_groebner_basis(full, grlex).binomials;
    const auto graver = graver_basis(full).vectors;
    for (Int d = 1; d <= 3; ++d) {
      std::vector<Binomial> gb_d;
      for (const auto& b : gb)
        if (one_norm(b.head) <= d && one_norm(b.tail) <= d) gb_d.push_back(b);
      std::vector<IntVector> graver_d;
      for (const auto& v : graver)
        if (one_norm(positive_part(v)) <= d && one_norm(negative_part(v)) <= d) graver_d.push_back(v);
      EXPECT_EQ(truncated_bases(a, d, grlex, ord).binomials, gb_d);
      EXPECT_EQ(truncated_bases(a, d, std::nullopt, ord).vectors, graver_d);
    }
  }
}

TEST(Universal, GraverReducesLikeTheReducedGb) {
  for (const auto& a : {twisted_cubic(), oracle::two_by_two_minors(2, 3)}) {
    const std::size_t n = a.cols();
    const auto l = lattice(a, 3);
    const auto graver = graver_basis(l).vectors;
    for (const auto& order : {MonomialOrder::lex(n), MonomialOrder::grlex(n)}) {
      std::vector<Binomial> g;
      for (const auto& v : graver) {
        const Binomial b = Binomial::from_kernel_vector(v);
        if (order.compare(b.head, b.tail) > 0) g.push_back(b);
      }
      const auto gb = reduced_groebner_basis(l, order).binomials;
      IntVector u(n, 0);
      for (std::size_t k = 0; k < 64; ++k) {
        for (std::size_t j = 0; j < n; ++j) u[j] = static_cast<Int>((k >> j) & 1) + static_cast<Int>((k * 7 + j) % 2);
        EXPECT_EQ(reduce_by_basis(g, order, u), reduce_by_basis(gb, order, u));
      }
    }
  }
}
