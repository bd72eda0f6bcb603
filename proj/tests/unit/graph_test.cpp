#include <gtest/gtest.h>

#include "random_instances.hpp"
#include "twqbf/error.hpp"
#include "twqbf/graph.hpp"
#include "twqbf/treedec.hpp"

namespace twqbf {
namespace {

// x=1, y=2, z=3, w=4
const CnfFormula kFigureOne = parse_dimacs("p cnf 4 3\n-1 3 0\n1 2 -4 0\n-3 4 0\n");

TEST(PrimalGraph, FigureOne) {
  const Graph g = primal_graph(kFigureOne);
  EXPECT_EQ(g.num_vertices(), 4u);
  const std::vector<Edge> expected{{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}};
  EXPECT_EQ(g.edges(), expected);
}

TEST(PrimalGraph, UnitClauseHasNoEdges) {
  CnfFormula f;
  f.add_clause({Lit::pos(1)});
  const Graph g = primal_graph(f);
  EXPECT_EQ(g.num_vertices(), 1u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(PrimalGraph, SingleClauseIsClique) {
  CnfFormula f;
  f.add_clause({Lit::pos(1), Lit::neg(2), Lit::pos(3), Lit::pos(4)});
  EXPECT_EQ(primal_graph(f).num_edges(), 6u);
}

TEST(IncidenceGraph, FigureOne) {
  const Graph g = incidence_graph(kFigureOne);
  EXPECT_EQ(g.num_vertices(), 7u);
  EXPECT_EQ(g.num_edges(), 7u);
  EXPECT_TRUE(g.has_edge(var_vertex(2), clause_vertex(4, 1)));
  EXPECT_FALSE(g.has_edge(var_vertex(2), clause_vertex(4, 0)));
}

TEST(IncidenceGraph, ZeroClausesIsolated) {
  const Graph g = incidence_graph(parse_dimacs("p cnf 3 0\n"));
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(IncidenceGraph, SingleClauseIsStar) {
  CnfFormula f;
  f.add_clause({Lit::pos(1), Lit::neg(2), Lit::pos(3), Lit::pos(4), Lit::neg(5)});
  const Graph g = incidence_graph(f);
  EXPECT_EQ(g.num_edges(), 5u);
  EXPECT_EQ(g.degree(clause_vertex(5, 0)), 5u);
}

TEST(GraphProperties, EdgeCountBounds) {
  testing::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const CnfFormula f = testing::random_cnf(rng, 10, 8, 1, 5);
    std::size_t pair_bound = 0;
    for (const auto& c : f.clauses()) pair_bound += c.size() * (c.size() - 1) / 2;
    EXPECT_LE(primal_graph(f).num_edges(), pair_bound);
    EXPECT_EQ(incidence_graph(f).num_edges(), f.total_literals());
  }
}

TEST(GraphProperties, PrimalWidthBoundedByIncidenceTimesArity) {
  testing::Rng rng(12);
  for (int i = 0; i < 150; ++i) {
    const CnfFormula f = testing::random_cnf(rng, 9, 6, 1, 4);
    const int k = width(decompose(incidence_graph(f), Strategy::exact_small));
    const int p = width(decompose(primal_graph(f), Strategy::exact_small));
    EXPECT_LE(p, (k + 1) * static_cast<int>(std::max<std::size_t>(f.max_clause_size(), 1)));
  }
}

TEST(GrFormat, RoundTrip) {
  const std::string text = "p tw 4 3\n1 2\n2 3\n3 4\n";
  const Graph g = parse_gr(text);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(write_gr(g), text);
  EXPECT_THROW(parse_gr("p tw 2 1\n1 3\n"), ParseError);
  EXPECT_THROW(parse_gr("p tw 2 2\n1 2\n"), ParseError);
}

}  // namespace
}  // namespace twqbf
