#include <gtest/gtest.h>

#include <algorithm>

#include "random_instances.hpp"
#include "twqbf/error.hpp"
#include "twqbf/treedec.hpp"

namespace twqbf {
namespace {

TreeDecomposition path_td(std::vector<std::vector<Vertex>> bags) {
  TreeDecomposition d;
  for (std::uint32_t i = 0; i < bags.size(); ++i) d.add_node(i == 0 ? kNoNode : i - 1, bags[i]);
  return d;
}

Graph make_graph(std::size_t n, std::vector<Edge> edges) { return Graph(n, edges); }

TEST(Validate, SingleBagTriangle) {
  const Graph k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto d = path_td({{0, 1, 2}});
  EXPECT_TRUE(validate(d, k3).ok());
  EXPECT_EQ(width(d), 2);
}

TEST(Validate, PathGraph) {
  const Graph p = make_graph(3, {{0, 1}, {1, 2}});
  const auto d = path_td({{0, 1}, {1, 2}});
  EXPECT_TRUE(validate(d, p).ok());
  EXPECT_EQ(width(d), 1);
}

TEST(Validate, ConnectivityWitness) {
  const Graph p = make_graph(3, {{0, 1}, {1, 2}});
  const auto d = path_td({{0, 1}, {0, 2}, {1, 2}});
  const auto report = validate(d, p);
  ASSERT_FALSE(report.ok());
  bool saw_b = false;
  for (const auto& v : report.violations)
    if (v.kind == Violation::Kind::disconnected && v.u == 1) saw_b = true;
  EXPECT_TRUE(saw_b) << report.summary();
}

TEST(Validate, MissingVertexAndEdge) {
  const Graph g = make_graph(4, {{0, 1}, {1, 2}, {0, 2}});
  const auto d = path_td({{0, 1}, {1, 2}});
  const auto report = validate(d, g);
  std::vector<Violation::Kind> kinds;
  for (const auto& v : report.violations) kinds.push_back(v.kind);
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), Violation::Kind::missing_edge), kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), Violation::Kind::missing_vertex), kinds.end());
}

TEST(Width, Examples) {
  EXPECT_EQ(width(path_td({{0, 1}, {1, 2}})), 1);
  EXPECT_EQ(width(path_td({{0, 1, 2, 3, 4}})), 4);
  EXPECT_THROW(width(TreeDecomposition{}), InvalidInput);
}

TEST(Decompose, FigureOnePrimal) {
  const Graph g = primal_graph(parse_dimacs("p cnf 4 3\n-1 3 0\n1 2 -4 0\n-3 4 0\n"));
  for (Strategy s : {Strategy::min_fill, Strategy::min_degree, Strategy::exact_small}) {
    const auto d = decompose(g, s);
    EXPECT_TRUE(validate(d, g).ok());
    EXPECT_EQ(width(d), 2) << to_string(s);
  }
}

TEST(Decompose, TreeHasWidthOne) {
  const Graph t = make_graph(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  for (Strategy s : {Strategy::min_fill, Strategy::min_degree, Strategy::exact_small}) {
    const auto d = decompose(t, s);
    EXPECT_TRUE(validate(d, t).ok());
    EXPECT_EQ(width(d), 1) << to_string(s);
  }
}

TEST(Decompose, CliqueK4) {
  const Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  for (Strategy s : {Strategy::min_fill, Strategy::min_degree, Strategy::exact_small})
    EXPECT_EQ(width(decompose(k4, s)), 3);
}

TEST(Decompose, EmptyAndEdgelessGraphs) {
  const auto d0 = decompose(Graph(0), Strategy::min_fill);
  EXPECT_EQ(d0.size(), 1u);
  EXPECT_EQ(width(d0), -1);
  const Graph isolated(5);
  const auto d = decompose(isolated, Strategy::min_degree);
  EXPECT_TRUE(validate(d, isolated).ok());
  EXPECT_EQ(width(d), 0);
}

TEST(Decompose, ExactCap) {
  EXPECT_THROW(decompose(Graph(21), Strategy::exact_small), CapExceeded);
  EXPECT_NO_THROW(decompose(Graph(21), Strategy::exact_small, {.exact_cap = 21}));
}

TEST(Decompose, AlwaysValid) {
  testing::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 40;
    const Graph g = testing::random_graph(rng, n, 0.05 + 0.3 * (rng() % 4) / 4.0);
    for (Strategy s : {Strategy::min_fill, Strategy::min_degree}) {
      const auto d = decompose(g, s);
      ASSERT_TRUE(validate(d, g).ok()) << validate(d, g).summary();
      EXPECT_LE(d.size(), std::max<std::size_t>(n, 1));
    }
  }
}

TEST(Decompose, ExactIsNoWorseThanHeuristics) {
  testing::Rng rng(22);
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 1 + rng() % 8;
    const Graph g = testing::random_graph(rng, n, 0.2 + 0.6 * (rng() % 5) / 5.0);
    const auto exact = decompose(g, Strategy::exact_small);
    ASSERT_TRUE(validate(exact, g).ok());
    EXPECT_LE(width(exact), width(decompose(g, Strategy::min_fill)));
    EXPECT_LE(width(exact), width(decompose(g, Strategy::min_degree)));
  }
}

TEST(Decompose, ExactMatchesKnownTreewidths) {
  // cycle C6 has treewidth 2, 3x3 grid has treewidth 3
  const Graph c6 = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  EXPECT_EQ(width(decompose(c6, Strategy::exact_small)), 2);
  std::vector<Edge> grid;
  for (Vertex r = 0; r < 3; ++r)
    for (Vertex c = 0; c < 3; ++c) {
      if (c + 1 < 3) grid.emplace_back(r * 3 + c, r * 3 + c + 1);
      if (r + 1 < 3) grid.emplace_back(r * 3 + c, (r + 1) * 3 + c);
    }
  EXPECT_EQ(width(decompose(Graph(9, grid), Strategy::exact_small)), 3);
}

TEST(MakeNice, SingleBag) {
  const auto nice = make_nice(path_td({{0, 1}}));
  EXPECT_EQ(check_nice(nice), "");
  EXPECT_EQ(width(nice.as_tree_decomposition()), 1);
  EXPECT_EQ(nice.nodes.front().kind, NodeKind::leaf);
  EXPECT_TRUE(nice.bags.back().empty());
  // leaf, two introduces, two forgets
  EXPECT_EQ(nice.size(), 5u);
}

TEST(MakeNice, TwoBagsForgetBelowIntroduce) {
  const Graph p = make_graph(3, {{0, 1}, {1, 2}});
  const auto nice = make_nice(path_td({{0, 1}, {1, 2}}));
  EXPECT_EQ(check_nice(nice), "");
  EXPECT_TRUE(validate(nice.as_tree_decomposition(), p).ok());
  EXPECT_EQ(width(nice.as_tree_decomposition()), 1);
  int forget_a = -1, intro_a = -1;
  for (int t = 0; t < static_cast<int>(nice.size()); ++t) {
    if (nice.nodes[t].kind == NodeKind::forget && nice.nodes[t].vertex == 2) forget_a = t;
    if (nice.nodes[t].kind == NodeKind::introduce && nice.nodes[t].vertex == 0) intro_a = t;
  }
  ASSERT_GE(forget_a, 0);
  ASSERT_GE(intro_a, 0);
  EXPECT_GT(intro_a, forget_a);
}

TEST(MakeNice, RandomPreservesWidthAndValidity) {
  testing::Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 50;
    const Graph g = testing::random_graph(rng, n, 0.08);
    const auto d = from_elimination_order(g, elimination_order(g, Strategy::min_degree));
    const auto nice = make_nice(d);
    ASSERT_EQ(check_nice(nice), "");
    const auto flat = nice.as_tree_decomposition();
    ASSERT_TRUE(validate(flat, g).ok());
    EXPECT_EQ(width(flat), width(d));
    EXPECT_LE(nice.size(), 4 * (n + d.size()) * static_cast<std::size_t>(width(d) + 2));
  }
}

TEST(MakeNice, RejectsMalformed) {
  auto d = path_td({{0, 1}, {2}, {0}});
  EXPECT_THROW(make_nice(d), InvalidInput);
  auto unsorted = path_td({{1, 0}});
  EXPECT_THROW(make_nice(unsorted), InvalidInput);
}

TEST(Simplify, ContractsNestedBags) {
  const auto d = path_td({{0, 1, 2}, {0, 1}, {1}, {1, 3}});
  const auto s = simplify(d);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(width(s), 2);
}

TEST(Binarize, ChainsCopies) {
  TreeDecomposition d;
  const auto r = d.add_node(kNoNode, {0});
  for (Vertex v = 1; v <= 5; ++v) d.add_node(r, {0, v});
  const auto b = binarize(d);
  for (const auto& cs : b.tree.children()) EXPECT_LE(cs.size(), 2u);
  std::vector<Edge> star;
  for (Vertex v = 1; v <= 5; ++v) star.emplace_back(0, v);
  EXPECT_TRUE(validate(b, Graph(6, star)).ok());
  EXPECT_EQ(width(b), 1);
}

TEST(PaceTd, RoundTrip) {
  const std::string text = "c made by hand\ns td 3 2 4\nb 1 2 1\nb 2 2 3\nb 3 3 4\n3 2\n1 2\n";
  const auto parsed = parse_td(text);
  EXPECT_EQ(parsed.num_vertices, 4u);
  EXPECT_EQ(parsed.td.bags[0], (std::vector<Vertex>{0, 1}));
  const std::string canonical = write_td(parsed.td, parsed.num_vertices);
  EXPECT_EQ(canonical, "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n");
  const auto again = parse_td(canonical);
  EXPECT_EQ(write_td(again.td, again.num_vertices), canonical);
}

TEST(PaceTd, Errors) {
  EXPECT_THROW(parse_td("s td 2 1 2\nb 1 1\nb 2 2\n"), ParseError);        // no edge
  EXPECT_THROW(parse_td("s td 1 1 2\nb 1 3\n"), ParseError);               // vertex range
  EXPECT_THROW(parse_td("s td 1 2 2\nb 1 1\n"), ParseError);               // max bag
  EXPECT_THROW(parse_td("s td 2 1 2\nb 1 1\nb 1 2\n1 2\n"), ParseError);   // duplicate id
}

}  // namespace
}  // namespace twqbf
