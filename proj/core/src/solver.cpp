#include "twqbf/solver.hpp"

#include <algorithm>

#include "twqbf/error.hpp"
#include "twqbf/graph.hpp"
#include "twqbf/transform.hpp"

namespace twqbf {

namespace {

// Deepest topmost bag among the clause's variables; it holds the whole
// clause whenever the clause is covered at all.
class CoverFinder {
 public:
  explicit CoverFinder(const TreeDecomposition& d, std::size_t num_vertices) : d_(d), depth_(d.size(), 0) {
    const auto order = d.tree.postorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (d.tree.parent[*it] != kNoNode) depth_[*it] = depth_[d.tree.parent[*it]] + 1;
    top_.assign(num_vertices, kNoNode);
    for (std::uint32_t t = 0; t < d.size(); ++t)
      for (Vertex u : d.bags[t])
        if (u < num_vertices && (top_[u] == kNoNode || depth_[t] < depth_[top_[u]])) top_[u] = t;
  }

  std::uint32_t find(const Clause& clause) const {
    std::uint32_t anchor = kNoNode;
    for (Lit l : clause) {
      const std::uint32_t t = top_[var_vertex(l.var())];
      if (t == kNoNode) return kNoNode;
      if (anchor == kNoNode || depth_[t] > depth_[anchor]) anchor = t;
    }
    if (anchor == kNoNode) return d_.tree.root;
    for (Lit l : clause)
      if (!std::binary_search(d_.bags[anchor].begin(), d_.bags[anchor].end(), var_vertex(l.var()))) return kNoNode;
    return anchor;
  }

 private:
  const TreeDecomposition& d_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> top_;
};

struct Candidate {
  QbfFormula formula;
  TreeDecomposition primal;
  int width;
  std::string name;
  std::size_t aux = 0;
};

int width_or(const TreeDecomposition& d, int fallback) { return d.size() == 0 ? fallback : width(d); }

}  // namespace

ChoiceSystem make_choice_system(const QbfFormula& q, ChoiceOptions options) {
  std::vector<Quantifier> blocks;
  for (const auto& b : q.prefix) blocks.push_back(b.quantifier);
  return ChoiceSystem(std::move(blocks), q.level_of(), options);
}

std::vector<ChoiceConstraint> build_choice_constraints(const QbfFormula& q, const TreeDecomposition& primal,
                                                       ChoiceSystem& system) {
  const CoverFinder cover(primal, q.matrix.num_vars());
  std::vector<ChoiceConstraint> out;
  out.reserve(q.matrix.num_clauses());
  for (ClauseId c = 0; c < q.matrix.num_clauses(); ++c) {
    if (!q.matrix.clause(c).empty() && cover.find(q.matrix.clause(c)) == kNoNode)
      throw InvalidInput("clause " + std::to_string(c + 1) + " is not covered by any bag");
    out.push_back(system.from_clause(q.matrix.clause(c)));
  }
  return out;
}

SolveResult chen_solve(const QbfFormula& q, const TreeDecomposition& primal, const SolveOptions& options) {
  q.check();
  SolveResult result;
  auto& stats = result.stats;
  stats.vars = q.matrix.num_vars();
  stats.clauses = q.matrix.num_clauses();
  stats.blocks = q.prefix.size();
  if (stats.decomposition.empty()) stats.decomposition = "given";

  const Graph g = primal_graph(q.matrix);
  if (g.num_vertices() > 0) {
    const auto report = validate(primal, g);
    if (!report.ok()) throw InvalidInput("solver: invalid primal decomposition: " + report.summary());
    stats.width = width(primal);
  }

  ChoiceSystem system = make_choice_system(q, {options.reduce, options.max_arity});
  auto initial = build_choice_constraints(q, primal, system);

  std::vector<ChoiceConstraint> live;
  std::vector<std::uint8_t> alive;
  std::vector<std::vector<std::uint32_t>> by_var(q.matrix.num_vars() + 1);
  bool value = true;
  auto settle = [&](ChoiceConstraint&& c) {
    if (c.scope.empty()) {
      if (!system.evaluate(c)) value = false;
      return;
    }
    const auto id = static_cast<std::uint32_t>(live.size());
    for (Var v : c.scope) by_var[v].push_back(id);
    live.push_back(std::move(c));
    alive.push_back(1);
  };
  for (auto& c : initial) {
    settle(std::move(c));
    if (!value && options.early_exit) {
      stats.early_exit = true;
      stats.choice = system.stats();
      return result;
    }
  }

  if (g.num_vertices() > 0) {
    const auto nice = make_nice(primal);
    for (const auto& node : nice.nodes) {
      if (node.kind != NodeKind::forget) continue;
      ++stats.forget_nodes;
      const Var v = node.vertex + 1;
      std::vector<std::uint32_t> ids;
      for (std::uint32_t id : by_var[v])
        if (alive[id]) ids.push_back(id);
      by_var[v].clear();
      if (ids.empty()) continue;
      const std::uint64_t before = system.stats().ops;
      ChoiceConstraint acc = std::move(live[ids[0]]);
      alive[ids[0]] = 0;
      for (std::size_t i = 1; i < ids.size(); ++i) {
        acc = system.join(acc, live[ids[i]]);
        alive[ids[i]] = 0;
        live[ids[i]] = ChoiceConstraint{};
      }
      acc = system.forget(acc, v);
      stats.max_forget_ops = std::max(stats.max_forget_ops, system.stats().ops - before);
      settle(std::move(acc));
      if (!value && options.early_exit) {
        stats.early_exit = true;
        break;
      }
    }
  }
  result.value = value;
  stats.choice = system.stats();
  return result;
}

SolveResult chen_solve(const QbfFormula& q, const SolveOptions& options) {
  q.check();
  const Graph g = primal_graph(q.matrix);
  Candidate best{q, decompose(g, options.strategy, options.decompose), 0, std::string(to_string(options.strategy))};
  best.width = width_or(best.primal, -1);
  best.formula.incidence_hint.reset();
  best.formula.primal_hint.reset();

  auto consider = [&](Candidate&& c) {
    if (c.width < best.width) best = std::move(c);
  };
  if (options.use_hints && q.primal_hint && validate(*q.primal_hint, g).ok())
    consider({best.formula, *q.primal_hint, width_or(*q.primal_hint, -1), "primal-hint"});
  const bool hint_ok = options.use_hints && q.incidence_hint && validate(*q.incidence_hint, q.matrix).ok();
  if (hint_ok) {
    auto primal = q.incidence_hint->to_primal(q.matrix);
    const int w = width_or(primal, -1);
    consider({best.formula, std::move(primal), w, "incidence-hint"});
  }
  if (q.matrix.max_clause_size() > 3) {
    IncidenceDecomposition inc;
    if (hint_ok) {
      inc = *q.incidence_hint;
    } else {
      try {
        inc = decompose_incidence(q.matrix, options.strategy, options.decompose);
      } catch (const CapExceeded&) {
        inc = decompose_incidence(q.matrix, Strategy::min_fill);
      }
    }
    FreshVars fresh(q.matrix.num_vars());
    auto cert = to_3cnf(q.matrix, inc, fresh);
    Candidate split;
    split.formula.prefix = q.prefix;
    split.formula.matrix = std::move(cert.target);
    split.aux = cert.fresh.size();
    if (!cert.fresh.empty()) {
      if (split.formula.prefix.empty() || split.formula.prefix.back().quantifier != Quantifier::exists)
        split.formula.prefix.push_back({Quantifier::exists, {}});
      auto& inner = split.formula.prefix.back().vars;
      inner.insert(inner.end(), cert.fresh.begin(), cert.fresh.end());
    }
    split.primal = cert.decomposition.to_primal(split.formula.matrix);
    split.width = width_or(split.primal, -1);
    split.name = "3cnf";
    const Graph g3 = primal_graph(split.formula.matrix);
    try {
      auto alt = decompose(g3, options.strategy, options.decompose);
      if (width_or(alt, -1) < split.width) {
        split.width = width_or(alt, -1);
        split.primal = std::move(alt);
      }
    } catch (const CapExceeded&) {
    }
    consider(std::move(split));
  }

  auto result = chen_solve(best.formula, best.primal, options);
  result.stats.decomposition = best.name;
  result.stats.aux_vars = best.aux;
  return result;
}

}  // namespace twqbf
