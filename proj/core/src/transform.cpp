#include "twqbf/transform.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "twqbf/error.hpp"
#include "twqbf/graph.hpp"

namespace twqbf {

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <typename T>
bool contains(const std::vector<T>& v, T x) {
  return std::binary_search(v.begin(), v.end(), x);
}

template <typename T>
void insert_sorted(std::vector<T>& v, T x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void require_valid(const IncidenceDecomposition& d, const CnfFormula& f, const char* what) {
  const auto report = validate(d, f);
  if (!report.ok()) throw InvalidInput(std::string(what) + ": invalid decomposition: " + report.summary());
}

Var max_bag_var(const IncidenceDecomposition& d) {
  Var m = 0;
  for (const auto& bag : d.vars)
    if (!bag.empty()) m = std::max(m, bag.back());
  return m;
}

std::vector<Var> all_vars(Var n) {
  std::vector<Var> out(n);
  for (Var v = 1; v <= n; ++v) out[v - 1] = v;
  return out;
}

// Clause-first numbering: clause c is vertex c, variable v is m + v - 1, so
// that sorted forget chains drop clauses before variables.
TreeDecomposition clause_first_graph(const IncidenceDecomposition& d, std::size_t m) {
  TreeDecomposition td;
  td.tree = d.tree;
  td.bags.resize(d.size());
  for (std::size_t t = 0; t < d.size(); ++t) {
    auto& bag = td.bags[t];
    for (ClauseId c : d.clauses[t]) bag.push_back(c);
    for (Var v : d.vars[t]) bag.push_back(static_cast<Vertex>(m + v - 1));
  }
  return td;
}

IncidenceDecomposition from_clause_first(const TreeDecomposition& td, std::size_t m) {
  IncidenceDecomposition d;
  d.tree = td.tree;
  d.vars.resize(td.size());
  d.clauses.resize(td.size());
  for (std::size_t t = 0; t < td.size(); ++t)
    for (Vertex u : td.bags[t]) {
      if (u < m)
        d.clauses[t].push_back(u);
      else
        d.vars[t].push_back(static_cast<Var>(u - m + 1));
    }
  return d;
}

// Accumulates clauses placed at tree nodes.
struct Placement {
  CnfFormula formula;
  std::vector<std::vector<Var>> extra;
  std::vector<std::vector<ClauseId>> placed;
  std::size_t work = 0;

  Placement(Var num_vars, std::size_t nodes) : formula(num_vars), extra(nodes), placed(nodes) {}

  void emit(std::uint32_t t, std::initializer_list<Lit> lits) {
    emit(t, std::span<const Lit>(lits.begin(), lits.size()));
  }
  void emit(std::uint32_t t, std::span<const Lit> lits) {
    placed[t].push_back(formula.add_clause(lits));
    for (Lit l : lits) extra[t].push_back(l.var());
    work += lits.size();
  }

  // Left-to-right chain (s0 s1 z1)(-z1 s2 z2)...(-zj s_{n-2} s_{n-1}).
  void split(std::uint32_t t, std::span<const Lit> s, FreshVars& fresh, std::vector<Var>& made) {
    if (s.size() <= 3) {
      emit(t, s);
      return;
    }
    Var z = fresh.make("split");
    made.push_back(z);
    emit(t, {s[0], s[1], Lit::pos(z)});
    Lit prev = Lit::neg(z);
    std::size_t i = 2;
    while (s.size() - i > 2) {
      z = fresh.make("split");
      made.push_back(z);
      emit(t, {prev, s[i], Lit::pos(z)});
      prev = Lit::neg(z);
      ++i;
    }
    emit(t, {prev, s[i], s[i + 1]});
  }

  // z <-> a | b as three clauses.
  void define_or(std::uint32_t t, Var z, Lit a, Lit b) {
    emit(t, {Lit::neg(z), a, b});
    emit(t, {Lit::pos(z), ~a});
    emit(t, {Lit::pos(z), ~b});
  }

  // Folds s from the left into defined variables until three literals remain;
  // returns the id of the remaining clause.
  ClauseId split_defined(std::uint32_t t, std::span<const Lit> s, FreshVars& fresh, std::vector<Var>& made) {
    std::vector<Lit> rest(s.begin(), s.end());
    std::size_t i = 0;
    while (rest.size() - i > 3) {
      const Var z = fresh.make("split");
      made.push_back(z);
      define_or(t, z, rest[i], rest[i + 1]);
      rest[i + 1] = Lit::pos(z);
      ++i;
    }
    emit(t, std::span<const Lit>(rest.data() + i, rest.size() - i));
    return placed[t].back();
  }

  IncidenceDecomposition decomposition(const RootedTree& tree, const std::vector<std::vector<Var>>& base_vars,
                                       const std::vector<std::vector<ClauseId>>& base_clauses) {
    IncidenceDecomposition d;
    d.tree = tree;
    d.vars.resize(tree.size());
    d.clauses.resize(tree.size());
    for (std::size_t t = 0; t < tree.size(); ++t) {
      d.vars[t] = base_vars[t];
      d.vars[t].insert(d.vars[t].end(), extra[t].begin(), extra[t].end());
      sort_unique(d.vars[t]);
      d.clauses[t] = base_clauses[t];
      d.clauses[t].insert(d.clauses[t].end(), placed[t].begin(), placed[t].end());
      sort_unique(d.clauses[t]);
    }
    return d;
  }
};

}  // namespace

std::uint32_t IncidenceDecomposition::add_node(std::uint32_t parent, std::vector<Var> node_vars,
                                               std::vector<ClauseId> node_clauses) {
  sort_unique(node_vars);
  sort_unique(node_clauses);
  const auto id = static_cast<std::uint32_t>(vars.size());
  tree.parent.push_back(parent);
  if (parent == kNoNode) tree.root = id;
  vars.push_back(std::move(node_vars));
  clauses.push_back(std::move(node_clauses));
  return id;
}

int IncidenceDecomposition::width() const {
  if (vars.empty()) throw InvalidInput("width of an empty decomposition");
  std::size_t best = 0;
  for (std::size_t t = 0; t < size(); ++t) best = std::max(best, vars[t].size() + clauses[t].size());
  return static_cast<int>(best) - 1;
}

TreeDecomposition IncidenceDecomposition::to_graph(Var num_vars) const {
  TreeDecomposition td;
  td.tree = tree;
  td.bags.resize(size());
  for (std::size_t t = 0; t < size(); ++t) {
    auto& bag = td.bags[t];
    for (Var v : vars[t]) bag.push_back(var_vertex(v));
    for (ClauseId c : clauses[t]) bag.push_back(clause_vertex(num_vars, c));
  }
  return td;
}

IncidenceDecomposition IncidenceDecomposition::from_graph(const TreeDecomposition& d, Var num_vars,
                                                          std::size_t num_clauses) {
  IncidenceDecomposition out;
  out.tree = d.tree;
  out.vars.resize(d.size());
  out.clauses.resize(d.size());
  for (std::size_t t = 0; t < d.size(); ++t)
    for (Vertex u : d.bags[t]) {
      if (u < num_vars) {
        out.vars[t].push_back(u + 1);
      } else {
        if (u - num_vars >= num_clauses) throw InvalidInput("bag vertex " + std::to_string(u) + " out of range");
        out.clauses[t].push_back(u - num_vars);
      }
    }
  return out;
}

TreeDecomposition IncidenceDecomposition::to_primal(const CnfFormula& f) const {
  TreeDecomposition td;
  td.tree = tree;
  td.bags.resize(size());
  for (std::size_t t = 0; t < size(); ++t) {
    auto& bag = td.bags[t];
    for (Var v : vars[t]) bag.push_back(var_vertex(v));
    for (ClauseId c : clauses[t])
      for (Lit l : f.clause(c)) bag.push_back(var_vertex(l.var()));
    sort_unique(bag);
  }
  return td;
}

ValidationReport validate(const IncidenceDecomposition& d, const CnfFormula& f) {
  ValidationReport report;
  if (d.vars.size() != d.tree.size() || d.clauses.size() != d.tree.size()) {
    report.violations.push_back({Violation::Kind::not_a_tree, 0, 0});
    return report;
  }
  const Var n = f.num_vars();
  for (std::size_t t = 0; t < d.size(); ++t) {
    for (Var v : d.vars[t])
      if (v == 0 || v > n) report.violations.push_back({Violation::Kind::vertex_out_of_range, v, 0});
    for (ClauseId c : d.clauses[t])
      if (c >= f.num_clauses())
        report.violations.push_back({Violation::Kind::vertex_out_of_range, clause_vertex(n, c), 0});
  }
  if (!report.ok()) return report;
  std::vector<std::uint8_t> occurs(n + 1, 0);
  for (const auto& clause : f.clauses())
    for (Lit l : clause) occurs[l.var()] = 1;
  for (const auto& v : validate(d.to_graph(n), incidence_graph(f)).violations) {
    if (v.kind == Violation::Kind::missing_vertex && v.u < n && !occurs[v.u + 1]) continue;
    report.violations.push_back(v);
  }
  return report;
}

IncidenceDecomposition decompose_incidence(const CnfFormula& f, Strategy s, DecomposeOptions options) {
  const auto td = decompose(incidence_graph(f), s, options);
  return IncidenceDecomposition::from_graph(td, f.num_vars(), f.num_clauses());
}

IncidenceDecomposition incidence_from_primal(const TreeDecomposition& primal, const CnfFormula& f) {
  IncidenceDecomposition out;
  out.tree = primal.tree;
  out.vars.resize(primal.size());
  out.clauses.resize(primal.size());
  for (std::size_t t = 0; t < primal.size(); ++t)
    for (Vertex u : primal.bags[t]) out.vars[t].push_back(u + 1);
  if (primal.size() == 0) {
    out.add_node(kNoNode, {}, {});
  }
  const std::size_t base = out.size();
  // Depth and topmost node of every variable; the deepest top among a
  // clause's variables is the top of the bags holding the whole clause.
  std::vector<std::uint32_t> depth(base, 0);
  const auto order = out.tree.postorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (out.tree.parent[*it] != kNoNode) depth[*it] = depth[out.tree.parent[*it]] + 1;
  std::vector<std::uint32_t> top(f.num_vars() + 1, kNoNode);
  for (std::uint32_t t = 0; t < base; ++t)
    for (Var v : out.vars[t])
      if (v <= f.num_vars() && (top[v] == kNoNode || depth[t] < depth[top[v]])) top[v] = t;
  for (ClauseId c = 0; c < f.num_clauses(); ++c) {
    const Clause& clause = f.clause(c);
    std::uint32_t anchor = out.tree.root;
    std::vector<Var> vs;
    for (Lit l : clause) {
      const Var v = l.var();
      vs.push_back(v);
      if (top[v] == kNoNode) throw InvalidInput("variable " + std::to_string(v) + " missing from the decomposition");
      if (anchor == out.tree.root || depth[top[v]] > depth[anchor]) anchor = top[v];
    }
    for (Var v : vs)
      if (!contains(out.vars[anchor], v))
        throw InvalidInput("clause " + std::to_string(c + 1) + " is not covered by a bag");
    out.add_node(anchor, std::move(vs), {c});
  }
  return out;
}

IncidenceDecomposition make_nice(const IncidenceDecomposition& d, const CnfFormula& f) {
  const std::size_t m = std::max<std::size_t>(f.num_clauses(), [&] {
    std::size_t hi = 0;
    for (const auto& bag : d.clauses)
      if (!bag.empty()) hi = std::max<std::size_t>(hi, bag.back() + 1);
    return hi;
  }());
  const auto nice = make_nice(clause_first_graph(d, m));
  return from_clause_first(nice.as_tree_decomposition(), m);
}

bool is_nice_shape(const IncidenceDecomposition& d) {
  if (d.size() == 0) return false;
  const auto kids = d.tree.children();
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    if (kids[t].size() > 2) return false;
    for (std::uint32_t c : kids[t]) {
      if (kids[t].size() == 2) {
        if (d.vars[c] != d.vars[t] || d.clauses[c] != d.clauses[t]) return false;
        continue;
      }
      std::vector<Var> dv;
      std::vector<ClauseId> dc;
      std::set_symmetric_difference(d.vars[c].begin(), d.vars[c].end(), d.vars[t].begin(), d.vars[t].end(),
                                    std::back_inserter(dv));
      std::set_symmetric_difference(d.clauses[c].begin(), d.clauses[c].end(), d.clauses[t].begin(),
                                    d.clauses[t].end(), std::back_inserter(dc));
      if (dv.size() + dc.size() > 1) return false;
    }
  }
  const auto r = d.tree.root;
  return d.vars[r].size() + d.clauses[r].size() <= 1;
}

IncidenceDecomposition binarize(const IncidenceDecomposition& d) {
  std::size_t m = 0;
  for (const auto& bag : d.clauses)
    if (!bag.empty()) m = std::max<std::size_t>(m, bag.back() + 1);
  return from_clause_first(binarize(clause_first_graph(d, m)), m);
}

Var FreshVars::make(std::string_view tag) {
  const Var v = next_++;
  symbols_.emplace_back(v, std::string(tag));
  return v;
}

std::string_view FreshVars::name(Var v) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), v,
                             [](const auto& entry, Var key) { return entry.first < key; });
  if (it == symbols_.end() || it->first != v) return {};
  return it->second;
}

ProjectionCertificate to_3cnf(const CnfFormula& f, const IncidenceDecomposition& d_in, FreshVars& fresh,
                              SplitStyle style) {
  require_valid(d_in, f, "to_3cnf");
  if (fresh.next() <= f.num_vars()) throw InvalidInput("to_3cnf: fresh variables overlap the formula");
  const IncidenceDecomposition d = is_nice_shape(d_in) ? d_in : make_nice(d_in, f);
  const std::size_t m = f.num_clauses();

  ProjectionCertificate cert;
  cert.source_vars = all_vars(f.num_vars());
  Placement out(f.num_vars(), d.size());

  constexpr ClauseId kWide = static_cast<ClauseId>(-1);
  const bool defined = style == SplitStyle::defined;
  std::vector<ClauseId> small_id(m, kWide);
  cert.image.assign(m, kWide);
  for (ClauseId c = 0; c < m; ++c)
    if (f.clause(c).size() <= 3) {
      small_id[c] = out.formula.add_clause(f.clause(c));
      cert.image[c] = small_id[c];
      out.work += f.clause(c).size();
    }

  // Replaces the pair (a, b) by one literal.
  auto merge = [&](std::uint32_t t, Lit a, Lit b, std::string_view tag) {
    const Var z = fresh.make(tag);
    cert.fresh.push_back(z);
    if (defined) {
      out.define_or(t, z, a, b);
      return Lit::pos(z);
    }
    out.emit(t, {a, b, Lit::pos(z)});
    return Lit::neg(z);
  };

  // Pending literal F per wide clause of a bag; Lit{} means none yet.
  using Slots = std::vector<std::pair<ClauseId, Lit>>;
  const Lit none{};
  auto slot = [](Slots& s, ClauseId c) -> Lit& {
    auto it = std::lower_bound(s.begin(), s.end(), c, [](const auto& e, ClauseId k) { return e.first < k; });
    if (it == s.end() || it->first != c) throw std::logic_error("to_3cnf: clause missing from its bag state");
    return it->second;
  };

  OccurrenceLists occ = f.occurrences();
  std::vector<Slots> pending(d.size());
  const auto kids = d.tree.children();

  auto forget_clause = [&](ClauseId c, Lit carried, std::uint32_t t) {
    std::vector<std::pair<std::uint32_t, Lit>> live;
    for (const auto& e : occ.clause_entries(c)) live.emplace_back(e.position, Lit::make(e.var, e.negative));
    std::sort(live.begin(), live.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Lit> s;
    if (carried != none) s.push_back(carried);
    for (const auto& [pos, lit] : live) s.push_back(lit);
    while (!occ.clause_entries(c).empty())
      occ.erase_from_clause(c, static_cast<std::uint32_t>(occ.clause_entries(c).size() - 1));
    out.work += live.size() + 1;
    if (defined) {
      cert.image[c] = out.split_defined(t, s, fresh, cert.fresh);
    } else {
      out.split(t, s, fresh, cert.fresh);
      cert.image[c] = out.placed[t].back();
    }
  };

  auto forget_var = [&](Var x, Slots& state, std::uint32_t t) {
    std::uint32_t i = 0;
    while (i < occ.var_entries(x).size()) {
      const auto e = occ.var_entries(x)[i];
      ++out.work;
      if (small_id[e.clause] != kWide) {
        ++i;
        continue;
      }
      const Lit lx = Lit::make(x, e.negative);
      Lit& pend = slot(state, e.clause);
      pend = pend == none ? lx : merge(t, pend, lx, "forget");
      occ.erase_from_var(x, i);
    }
  };

  // Transition from a bag with state `state` to node t holding vars/clauses.
  auto leave = [&](Slots& state, const std::vector<Var>& from_vars, const std::vector<Var>& to_vars,
                   const std::vector<ClauseId>& to_clauses, std::uint32_t t) {
    for (auto& [c, pend] : state)
      if (!contains(to_clauses, c)) forget_clause(c, pend, t);
    for (Var x : from_vars)
      if (!contains(to_vars, x)) forget_var(x, state, t);
  };

  const std::vector<Var> no_vars;
  const std::vector<ClauseId> no_clauses;
  for (std::uint32_t t : d.tree.postorder()) {
    Slots state;
    for (ClauseId c : d.clauses[t])
      if (small_id[c] == kWide) state.emplace_back(c, none);
    for (std::uint32_t child : kids[t]) {
      Slots from = std::move(pending[child]);
      leave(from, d.vars[child], d.vars[t], d.clauses[t], t);
      for (const auto& [c, lit] : from) {
        if (lit == none || !contains(d.clauses[t], c)) continue;
        Lit& mine = slot(state, c);
        mine = mine == none ? lit : merge(t, mine, lit, "join");
        ++out.work;
      }
    }
    if (t == d.tree.root) {
      leave(state, d.vars[t], no_vars, no_clauses, t);
    } else {
      for (const auto& [c, lit] : state)
        if (lit != none) out.extra[t].push_back(lit.var());
      pending[t] = std::move(state);
    }
  }

  std::vector<std::vector<ClauseId>> small_clauses(d.size());
  for (std::size_t t = 0; t < d.size(); ++t)
    for (ClauseId c : d.clauses[t])
      if (small_id[c] != kWide) small_clauses[t].push_back(small_id[c]);
  out.formula.ensure_vars(fresh.highest());
  cert.decomposition = out.decomposition(d.tree, d.vars, small_clauses);
  cert.target = std::move(out.formula);
  cert.work = out.work;
  return cert;
}

Reified reify(const CnfFormula& f3, const IncidenceDecomposition& d, FreshVars& fresh) {
  if (f3.max_clause_size() > 3) throw InvalidInput("reify: clause with more than 3 literals");
  require_valid(d, f3, "reify");
  if (fresh.next() <= f3.num_vars()) throw InvalidInput("reify: fresh variables overlap the formula");
  const std::size_t n = d.size();
  Reified r;

  std::vector<std::vector<Var>> vars = d.vars;
  std::vector<std::uint32_t> top(f3.num_clauses(), kNoNode);
  for (std::uint32_t t = 0; t < n; ++t)
    for (ClauseId c : d.clauses[t]) {
      for (Lit l : f3.clause(c)) vars[t].push_back(l.var());
      const auto p = d.tree.parent[t];
      if (p == kNoNode || !contains(d.clauses[p], c)) top[c] = t;
    }
  for (auto& bag : vars) sort_unique(bag);

  Placement out(f3.num_vars(), n);
  std::vector<std::vector<Lit>> conjuncts(n);
  for (ClauseId c = 0; c < f3.num_clauses(); ++c) {
    const Clause& cl = f3.clause(c);
    const std::uint32_t t = top[c];
    const Var xc = fresh.make("clause");
    r.fresh.push_back(xc);
    const Lit on = Lit::pos(xc), off = Lit::neg(xc);
    switch (cl.size()) {
      case 0:
        out.emit(t, {off});
        break;
      case 1:
        out.emit(t, {off, cl[0]});
        break;
      case 2:
        out.emit(t, {off, cl[0], cl[1]});
        break;
      default: {
        const Var u = fresh.make("clause-aux");
        r.fresh.push_back(u);
        out.emit(t, {off, cl[0], Lit::pos(u)});
        out.emit(t, {Lit::neg(u), cl[1], cl[2]});
        break;
      }
    }
    for (Lit l : cl) out.emit(t, {on, ~l});
    conjuncts[t].push_back(on);
  }

  const auto kids = d.tree.children();
  std::vector<Var> node_var(n, 0);
  for (std::uint32_t t : d.tree.postorder()) {
    const Var xt = fresh.make("node");
    r.fresh.push_back(xt);
    node_var[t] = xt;
    std::vector<Lit> conj;
    for (std::uint32_t c : kids[t]) conj.push_back(Lit::pos(node_var[c]));
    conj.insert(conj.end(), conjuncts[t].begin(), conjuncts[t].end());
    if (conj.empty()) {
      out.emit(t, {Lit::pos(xt)});
      continue;
    }
    for (Lit c : conj) out.emit(t, {Lit::neg(xt), c});
    std::vector<Lit> reverse{Lit::pos(xt)};
    for (Lit c : conj) reverse.push_back(~c);
    out.split(t, reverse, fresh, r.fresh);
  }

  r.output = Lit::pos(node_var[d.tree.root]);
  out.formula.ensure_vars(fresh.highest());
  r.td = out.decomposition(d.tree, vars, std::vector<std::vector<ClauseId>>(n));
  r.formula = std::move(out.formula);
  return r;
}

ProjectionCertificate negate_projection(const CnfFormula& f3, const IncidenceDecomposition& d, FreshVars& fresh) {
  Reified r = reify(f3, d, fresh);
  const ClauseId unit = r.formula.add_clause({~r.output});
  insert_sorted(r.td.clauses[r.td.tree.root], unit);
  ProjectionCertificate cert;
  cert.source_vars = all_vars(f3.num_vars());
  cert.target = std::move(r.formula);
  cert.decomposition = std::move(r.td);
  cert.fresh = std::move(r.fresh);
  cert.work = cert.target.total_literals();
  return cert;
}

DecomposedCnf conjoin(const DecomposedCnf& a, const DecomposedCnf& b) {
  if (!(a.td.tree == b.td.tree)) throw InvalidInput("conjoin: decompositions do not share a tree");
  const std::size_t n = a.td.size();
  const Var hi = std::max({a.formula.num_vars(), b.formula.num_vars(), max_bag_var(a.td), max_bag_var(b.td)});
  std::vector<std::uint8_t> in_a(hi + 1, 0), in_b(hi + 1, 0), met(hi + 1, 0);
  std::vector<Var> common;
  for (std::size_t t = 0; t < n; ++t) {
    for (Var v : a.td.vars[t]) in_a[v] = 1;
    for (Var v : b.td.vars[t]) in_b[v] = 1;
    common.clear();
    std::set_intersection(a.td.vars[t].begin(), a.td.vars[t].end(), b.td.vars[t].begin(), b.td.vars[t].end(),
                          std::back_inserter(common));
    for (Var v : common) met[v] = 1;
  }
  for (Var v = 1; v <= hi; ++v)
    if (in_a[v] && in_b[v] && !met[v])
      throw InvalidInput("conjoin: variable " + std::to_string(v) + " occupies disjoint parts of the tree");

  DecomposedCnf out{a.formula, a.td};
  out.formula.ensure_vars(b.formula.num_vars());
  const auto offset = static_cast<ClauseId>(a.formula.num_clauses());
  for (const auto& clause : b.formula.clauses()) out.formula.add_clause(clause);
  for (std::size_t t = 0; t < n; ++t) {
    auto& vs = out.td.vars[t];
    vs.insert(vs.end(), b.td.vars[t].begin(), b.td.vars[t].end());
    sort_unique(vs);
    for (ClauseId c : b.td.clauses[t]) out.td.clauses[t].push_back(c + offset);
  }
  return out;
}

ProjectionCertificate subset_constraint(std::span<const Var> x, std::span<const Var> y, SubsetMode mode,
                                        const IncidenceDecomposition& carrier, FreshVars& fresh) {
  if (x.size() != y.size()) throw InvalidInput("subset_constraint: sequences differ in length");
  std::vector<Var> universe(x.begin(), x.end());
  universe.insert(universe.end(), y.begin(), y.end());
  sort_unique(universe);
  const Var hi = universe.empty() ? 0 : universe.back();
  if (fresh.next() <= hi) throw InvalidInput("subset_constraint: fresh variables overlap the arguments");
  std::vector<std::uint8_t> keep(hi + 1, 0);
  for (Var v : universe) keep[v] = 1;
  const auto base = restrict_vars(carrier, [&](Var v) { return v <= hi && keep[v]; });

  std::vector<std::vector<std::uint32_t>> nodes_of(hi + 1);
  for (std::uint32_t t = 0; t < base.size(); ++t)
    for (Var v : base.vars[t]) nodes_of[v].push_back(t);
  std::vector<std::uint32_t> host(x.size(), kNoNode);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == y[i]) continue;
    for (std::uint32_t t : nodes_of[x[i]])
      if (contains(base.vars[t], y[i])) {
        host[i] = t;
        break;
      }
    if (host[i] == kNoNode)
      throw InvalidInput("subset_constraint: no bag holds both variables " + std::to_string(x[i]) + " and " +
                         std::to_string(y[i]));
  }

  auto pairwise = [&](bool both_ways) {
    DecomposedCnf d{CnfFormula(hi), base};
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (host[i] == kNoNode) continue;
      d.td.clauses[host[i]].push_back(d.formula.add_clause({Lit::neg(x[i]), Lit::pos(y[i])}));
      if (both_ways) d.td.clauses[host[i]].push_back(d.formula.add_clause({Lit::pos(x[i]), Lit::neg(y[i])}));
    }
    for (auto& bag : d.td.clauses) sort_unique(bag);
    return d;
  };

  ProjectionCertificate cert;
  cert.source_vars = universe;
  DecomposedCnf sub = pairwise(false);
  if (mode == SubsetMode::subseteq) {
    cert.target = std::move(sub.formula);
    cert.decomposition = std::move(sub.td);
    cert.work = cert.target.total_literals();
    return cert;
  }
  const DecomposedCnf eq = pairwise(true);
  ProjectionCertificate neq = negate_projection(eq.formula, eq.td, fresh);
  DecomposedCnf both = conjoin(sub, neq.decomposed());
  cert.target = std::move(both.formula);
  cert.decomposition = std::move(both.td);
  cert.fresh = std::move(neq.fresh);
  cert.work = cert.target.total_literals();
  return cert;
}

DecomposedCnf disjoin_literal(const DecomposedCnf& d, Lit guard) {
  DecomposedCnf out{CnfFormula(d.formula.num_vars()), d.td};
  out.formula.ensure_vars(guard.var());
  Clause buf;
  for (const auto& clause : d.formula.clauses()) {
    if (std::find(clause.begin(), clause.end(), ~guard) != clause.end())
      throw InvalidInput("disjoin_literal: guard complements a clause literal");
    buf = clause;
    buf.push_back(guard);
    out.formula.add_clause(buf);
  }
  spread_var(out.td, guard.var());
  return out;
}

void spread_var(IncidenceDecomposition& d, Var v) {
  for (auto& bag : d.vars) insert_sorted(bag, v);
}

ClauseId attach_clause(DecomposedCnf& d, std::span<const Lit> clause) {
  const ClauseId id = d.formula.add_clause(clause);
  std::vector<Var> vs;
  for (Lit l : d.formula.clause(id)) vs.push_back(l.var());
  sort_unique(vs);
  auto& td = d.td;
  if (td.size() == 0) {
    td.add_node(kNoNode, vs, {id});
    return id;
  }
  std::uint32_t anchor = td.tree.root;
  std::size_t best = 0;
  for (std::uint32_t t = 0; t < td.size(); ++t) {
    std::size_t hits = 0;
    for (Var v : vs) hits += contains(td.vars[t], v);
    if (hits > best) {
      best = hits;
      anchor = t;
    }
  }
  // Undirected BFS from the anchor; a missing variable is routed along the
  // path to its nearest bag.
  const auto kids = td.tree.children();
  for (Var v : vs) {
    if (contains(td.vars[anchor], v)) continue;
    std::vector<std::uint32_t> via(td.size(), kNoNode);
    std::deque<std::uint32_t> queue{anchor};
    via[anchor] = anchor;
    std::uint32_t found = kNoNode;
    while (!queue.empty() && found == kNoNode) {
      const std::uint32_t t = queue.front();
      queue.pop_front();
      auto visit = [&](std::uint32_t u) {
        if (u == kNoNode || via[u] != kNoNode) return;
        via[u] = t;
        if (contains(td.vars[u], v))
          found = u;
        else
          queue.push_back(u);
      };
      visit(td.tree.parent[t]);
      for (std::uint32_t c : kids[t]) visit(c);
    }
    if (found == kNoNode) continue;
    for (std::uint32_t t = via[found]; t != anchor; t = via[t]) insert_sorted(td.vars[t], v);
    insert_sorted(td.vars[anchor], v);
  }
  td.add_node(anchor, vs, {id});
  return id;
}

DecomposedCnf rename_vars(const DecomposedCnf& d, std::span<const Var> map) {
  auto image = [&](Var v) { return v < map.size() && map[v] != 0 ? map[v] : v; };
  DecomposedCnf out{CnfFormula(0), d.td};
  Var hi = 0;
  for (Var v = 1; v <= d.formula.num_vars(); ++v) hi = std::max(hi, image(v));
  out.formula.ensure_vars(hi);
  Clause buf;
  for (const auto& clause : d.formula.clauses()) {
    buf.clear();
    for (Lit l : clause) buf.push_back(Lit::make(image(l.var()), l.negative()));
    out.formula.add_clause(buf);
  }
  for (auto& bag : out.td.vars) {
    for (Var& v : bag) v = image(v);
    sort_unique(bag);
  }
  return out;
}

}  // namespace twqbf
