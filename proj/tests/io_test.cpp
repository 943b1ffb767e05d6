#include <gtest/gtest.h>

#include "io.hpp"
#include "toric/error.hpp"

using namespace toric;
using namespace toric::cli;

TEST(CliIo, IpJson) {
  const auto ip = parse_ip_json(R"({"A": [[1, 1, 0], [0, 1, 1]], "b": [2, "3"], "c": [1, 2, "-1"],
                                    "upper": [2, null, 3], "hint": [1, 1, 2]})");
  EXPECT_EQ(ip.a.rows(), 2u);
  EXPECT_EQ(ip.b[1], 3);
  EXPECT_EQ(ip.c[2], -1);
  EXPECT_EQ(ip.upper_bound(0), 2);
  EXPECT_FALSE(ip.upper_bound(1).has_value());
  EXPECT_EQ(*ip.hint, (IntVector{1, 1, 2}));
  const auto back = parse_ip_json(ip_to_json(ip).dump());
  EXPECT_EQ(back.a, ip.a);
  EXPECT_EQ(back.c, ip.c);
  EXPECT_EQ(back.upper, ip.upper);
}

TEST(CliIo, IpJsonErrors) {
  EXPECT_THROW(parse_ip_json("{"), ParseError);
  EXPECT_THROW(parse_ip_json(R"({"A": [[1]], "b": [1, 2], "c": [1]})"), ParseError);
  EXPECT_THROW(parse_ip_json(R"({"A": [[1]], "b": [1]})"), ParseError);
  EXPECT_THROW(parse_ip_json(R"({"A": [[1]], "b": ["x"], "c": [1]})"), ParseError);
}

TEST(CliIo, EdgeList) {
  const Graph g = parse_edge_list("# triangle\n0 1\n1 2\n2 0\n");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(parse_edge_list("vertices 5\n0 1\n").vertex_count(), 5u);
  EXPECT_THROW(parse_edge_list("0\n"), ParseError);
  EXPECT_THROW(parse_edge_list("0 x\n"), ParseError);
}

TEST(CliIo, PolynomialAndOrdering) {
  const Polynomial p = parse_polynomial("3:1,0 -2:0,1;12345678901234567890:2,2");
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[1].coefficient, -2);
  EXPECT_EQ(p[2].exponent, (IntVector{2, 2}));
  EXPECT_EQ(big_string(p[2].coefficient), "12345678901234567890");
  EXPECT_THROW(parse_polynomial("3"), ParseError);
  EXPECT_EQ(parse_ordering("2 0, 1\n"), (Permutation{2, 0, 1}));
  EXPECT_EQ(parse_rows("1,2;3,4"), (std::vector<IntVector>{{1, 2}, {3, 4}}));
  EXPECT_THROW(parse_rows("1,2;3"), ParseError);
}

TEST(CliIo, JsonShapes) {
  EXPECT_EQ(to_json(IntVector{1, -2}).dump(), "[1,-2]");
  EXPECT_EQ(to_json(Polynomial{{BigInt(5), {1, 0}}}).dump(), R"([{"coefficient":"5","exponent":[1,0]}])");
}
