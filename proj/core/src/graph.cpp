#include "twqbf/graph.hpp"

#include <algorithm>

#include "twqbf/error.hpp"

namespace twqbf {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidInput("edge endpoint out of range");
    if (u == v) continue;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    num_edges_ += list.size();
  }
  num_edges_ /= 2;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph primal_graph(const CnfFormula& f) {
  std::vector<Edge> edges;
  for (const auto& clause : f.clauses())
    for (std::size_t i = 0; i < clause.size(); ++i)
      for (std::size_t j = i + 1; j < clause.size(); ++j)
        edges.emplace_back(var_vertex(clause[i].var()), var_vertex(clause[j].var()));
  return Graph(f.num_vars(), edges);
}

Graph incidence_graph(const CnfFormula& f) {
  std::vector<Edge> edges;
  edges.reserve(f.total_literals());
  for (ClauseId c = 0; c < f.num_clauses(); ++c)
    for (Lit l : f.clause(c)) edges.emplace_back(var_vertex(l.var()), clause_vertex(f.num_vars(), c));
  return Graph(f.num_vars() + f.num_clauses(), edges);
}

Graph parse_gr(std::string_view text) {
  detail::LineCursor cursor{text};
  std::string_view line;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (cursor.next(line)) {
    auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (!have_header) {
      if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "tw")
        throw ParseError(cursor.line_no, "malformed header, expected 'p tw <n> <m>'");
      const long long nn = detail::parse_int(tokens[2], cursor.line_no);
      const long long mm = detail::parse_int(tokens[3], cursor.line_no);
      if (nn < 0 || mm < 0) throw ParseError(cursor.line_no, "negative counts in header");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      have_header = true;
      continue;
    }
    if (tokens.size() != 2) throw ParseError(cursor.line_no, "expected an edge line 'u v'");
    const long long u = detail::parse_int(tokens[0], cursor.line_no);
    const long long v = detail::parse_int(tokens[1], cursor.line_no);
    if (u < 1 || v < 1 || u > static_cast<long long>(n) || v > static_cast<long long>(n))
      throw ParseError(cursor.line_no, "edge endpoint out of range");
    edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  }
  if (!have_header) throw ParseError(0, "missing 'p tw' header");
  if (edges.size() != m)
    throw ParseError(0, "edge count mismatch: header declares " + std::to_string(m) + ", found " +
                            std::to_string(edges.size()));
  return Graph(n, edges);
}

std::string write_gr(const Graph& g) {
  std::string out = "p tw " + std::to_string(g.num_vertices()) + ' ' + std::to_string(g.num_edges()) + '\n';
  for (auto [u, v] : g.edges()) out += std::to_string(u + 1) + ' ' + std::to_string(v + 1) + '\n';
  return out;
}

}  // namespace twqbf
