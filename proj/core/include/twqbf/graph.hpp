#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twqbf/cnf.hpp"

namespace twqbf {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}
  /// Builds from an edge list; loops are dropped, duplicates merged.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;

  /// Edges with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t num_edges_ = 0;
};

/// Vertex v-1 stands for variable v; every declared variable is a vertex.
Graph primal_graph(const CnfFormula& f);

/// Variables v map to v-1 and clause c to num_vars + c.
Graph incidence_graph(const CnfFormula& f);

inline Vertex var_vertex(Var v) { return v - 1; }
inline Vertex clause_vertex(Var num_vars, ClauseId c) { return num_vars + c; }

/// PACE .gr format: "p tw <n> <m>" then one "u v" line per edge (1-based).
Graph parse_gr(std::string_view text);
std::string write_gr(const Graph& g);

}  // namespace twqbf
