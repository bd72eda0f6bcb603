#include "compose.hpp"

#include <algorithm>
#include <stdexcept>

#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"

namespace twqbf::detail {

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

std::vector<Var> clause_vars(const Clause& c) {
  std::vector<Var> vs;
  for (Lit l : c) vs.push_back(l.var());
  sort_unique(vs);
  return vs;
}

// Clauses `ids` of d renumbered, with bags cut down to the variables they use.
DecomposedCnf select(const DecomposedCnf& d, std::span<const ClauseId> ids) {
  DecomposedCnf out{CnfFormula(d.formula.num_vars()), {}};
  std::vector<ClauseId> renumber(d.formula.num_clauses(), static_cast<ClauseId>(-1));
  std::vector<std::uint8_t> used(d.formula.num_vars() + 1, 0);
  for (ClauseId c : ids) {
    if (renumber[c] != static_cast<ClauseId>(-1)) continue;
    renumber[c] = out.formula.add_clause(d.formula.clause(c));
    for (Lit l : d.formula.clause(c)) used[l.var()] = 1;
  }
  out.td = restrict_vars(d.td, [&](Var v) { return v < used.size() && used[v]; });
  for (std::size_t t = 0; t < d.td.size(); ++t) {
    for (ClauseId c : d.td.clauses[t])
      if (renumber[c] != static_cast<ClauseId>(-1)) out.td.clauses[t].push_back(renumber[c]);
    sort_unique(out.td.clauses[t]);
  }
  return out;
}

// Merges every node into its parent when one bag contains the other, then
// renumbers; width is unchanged.
IncidenceDecomposition contract(const IncidenceDecomposition& d) {
  const std::size_t n = d.size();
  if (n <= 1) return d;
  std::vector<std::vector<Var>> vars = d.vars;
  std::vector<std::vector<ClauseId>> clauses = d.clauses;
  std::vector<std::uint32_t> parent = d.tree.parent;
  std::vector<std::uint32_t> rep(n);
  for (std::uint32_t t = 0; t < n; ++t) rep[t] = t;
  auto find = [&](std::uint32_t t) {
    while (rep[t] != t) t = rep[t] = rep[rep[t]];
    return t;
  };
  auto within = [](const auto& a, const auto& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
  for (std::uint32_t t : d.tree.postorder()) {
    if (parent[t] == kNoNode) continue;
    const std::uint32_t p = find(parent[t]);
    const bool down = within(vars[t], vars[p]) && within(clauses[t], clauses[p]);
    const bool up = within(vars[p], vars[t]) && within(clauses[p], clauses[t]);
    if (!down && !up) continue;
    if (up) {
      vars[p] = std::move(vars[t]);
      clauses[p] = std::move(clauses[t]);
    }
    rep[t] = p;
  }
  IncidenceDecomposition out;
  std::vector<std::uint32_t> id(n, kNoNode);
  const auto order = d.tree.postorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::uint32_t t = *it;
    if (find(t) != t) continue;
    std::uint32_t p = parent[t] == kNoNode ? kNoNode : id[find(parent[t])];
    id[t] = out.add_node(p, vars[t], clauses[t]);
  }
  return out;
}

}  // namespace

std::uint32_t Carrier::add_node(std::uint32_t parent, std::vector<Var> bag) {
  sort_unique(bag);
  const auto id = static_cast<std::uint32_t>(vars.size());
  if (parent == kNoNode) {
    tree.root = id;
  }
  tree.parent.push_back(parent);
  vars.push_back(std::move(bag));
  return id;
}

void Carrier::shadow(Var anchor, Var v) {
  bool placed = false;
  for (auto& bag : vars)
    if (contains(bag, anchor)) {
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      sort_unique(bag);
      placed = true;
    }
  if (!placed) {
    if (vars.empty()) add_node(kNoNode, {});
    auto& bag = vars[tree.root];
    bag.push_back(v);
    sort_unique(bag);
  }
}

int Carrier::width() const {
  std::size_t w = 0;
  for (const auto& bag : vars) w = std::max(w, bag.size());
  return static_cast<int>(w) - 1;
}

IncidenceDecomposition Carrier::place(const CnfFormula& f, std::span<const std::vector<std::uint32_t>> fixed) const {
  IncidenceDecomposition out;
  out.tree = tree;
  out.vars = vars;
  out.clauses.assign(size(), {});
  if (size() == 0) out.add_node(kNoNode, {}, {});
  const std::size_t base = out.size();

  std::vector<std::uint32_t> depth(base, 0);
  const auto order = out.tree.postorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (out.tree.parent[*it] != kNoNode) depth[*it] = depth[out.tree.parent[*it]] + 1;
  std::vector<std::vector<std::uint32_t>> nodes_of(f.num_vars() + 1);
  for (std::uint32_t t = 0; t < base; ++t)
    for (Var v : out.vars[t])
      if (v <= f.num_vars()) nodes_of[v].push_back(t);

  for (ClauseId c = 0; c < f.num_clauses(); ++c) {
    if (c < fixed.size() && !fixed[c].empty()) {
      for (std::uint32_t t : fixed[c]) out.clauses[t].push_back(c);
      continue;
    }
    const auto vs = clause_vars(f.clause(c));
    if (vs.empty()) {
      out.clauses[out.tree.root].push_back(c);
      continue;
    }
    for (Var v : vs)
      if (nodes_of[v].empty()) throw std::logic_error("carrier: variable " + std::to_string(v) + " has no bag");
    std::uint32_t host = kNoNode;
    for (std::uint32_t t : nodes_of[vs.front()])
      if (std::all_of(vs.begin(), vs.end(), [&](Var v) { return contains(out.vars[t], v); })) {
        host = t;
        break;
      }
    if (host != kNoNode) {
      out.add_node(host, vs, {c});
      continue;
    }
    // Union of the paths from one bag per variable up to their common ancestor.
    std::vector<std::uint32_t> picks;
    for (Var v : vs) picks.push_back(nodes_of[v].front());
    std::uint32_t top = picks.front();
    for (std::uint32_t p : picks) {
      std::uint32_t a = top, b = p;
      while (depth[a] > depth[b]) a = out.tree.parent[a];
      while (depth[b] > depth[a]) b = out.tree.parent[b];
      while (a != b) {
        a = out.tree.parent[a];
        b = out.tree.parent[b];
      }
      top = a;
    }
    std::vector<std::uint32_t> span{top};
    for (std::uint32_t p : picks)
      for (std::uint32_t t = p; t != top; t = out.tree.parent[t]) span.push_back(t);
    sort_unique(span);
    for (std::uint32_t t : span) out.clauses[t].push_back(c);
  }
  for (auto& bag : out.clauses) sort_unique(bag);
  return out;
}

CopiedCarrier copy_carrier(const IncidenceDecomposition& d, std::size_t num_clauses,
                           std::span<const std::vector<Var>> maps) {
  CopiedCarrier out;
  out.carrier.tree = d.tree;
  out.carrier.vars.resize(d.size());
  out.clause_nodes.resize(num_clauses);
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    auto& bag = out.carrier.vars[t];
    for (const auto& map : maps)
      for (Var v : d.vars[t])
        if (v < map.size() && map[v] != 0) bag.push_back(map[v]);
    sort_unique(bag);
    for (ClauseId c : d.clauses[t])
      if (c < num_clauses) out.clause_nodes[c].push_back(t);
  }
  return out;
}

Composer::Composer(const CnfFormula& base, const IncidenceDecomposition& d, Var base_vars)
    : base_vars_(std::max(base_vars, base.num_vars())), fresh_(base_vars_) {
  CnfFormula widened = base;
  widened.ensure_vars(base_vars_);
  split_ = to_3cnf(widened, make_nice(d, widened), fresh_, SplitStyle::defined);
  split_.target.ensure_vars(fresh_.highest());
  split_.decomposition = contract(split_.decomposition);
  std::vector<std::uint8_t> is_image(split_.target.num_clauses(), 0);
  for (ClauseId c : split_.image) is_image[c] = 1;
  std::vector<ClauseId> defs;
  for (ClauseId c = 0; c < split_.target.num_clauses(); ++c)
    if (!is_image[c]) defs.push_back(c);
  defs_ = select(split_.decomposed(), defs);
}

Composer::Term Composer::empty() const {
  Term t{CnfFormula(fresh_.highest()), restrict_vars(split_.decomposition, [](Var) { return false; })};
  return t;
}

Composer::Term Composer::clauses(std::span<const ClauseId> ids) const {
  std::vector<ClauseId> image;
  for (ClauseId c : ids) image.push_back(split_.image.at(c));
  return select(split_.decomposed(), image);
}

Composer::Term Composer::truth() const { return empty(); }

Composer::Term Composer::conj(const Term& a, const Term& b) const { return conjoin(a, b); }

Composer::Term Composer::conj(std::span<const Term> terms) const {
  Term acc = empty();
  for (const auto& t : terms) acc = conjoin(acc, t);
  return acc;
}

Composer::Term Composer::neg(const Term& t) {
  Term body = t;
  body.formula.ensure_vars(fresh_.highest());
  Reified r = reify(body.formula, body.td, fresh_);
  defs_ = conjoin(defs_, DecomposedCnf{std::move(r.formula), std::move(r.td)});
  Term out = empty();
  out.formula.ensure_vars(fresh_.highest());
  const ClauseId unit = out.formula.add_clause({~r.output});
  const auto root = out.td.tree.root;
  out.td.vars[root].push_back(r.output.var());
  out.td.clauses[root].push_back(unit);
  return out;
}

Composer::Term Composer::disj(const Term& a, const Term& b) { return neg(conj(neg(a), neg(b))); }

DecomposedCnf Composer::finish(const Term& body) const {
  DecomposedCnf out = conjoin(defs_, body);
  out.formula.ensure_vars(fresh_.highest());
  return out;
}

std::vector<SidecarLine> sidecar_lines(std::string_view text, std::string_view tag) {
  std::vector<SidecarLine> out;
  LineCursor cursor{text};
  std::string_view line;
  while (cursor.next(line)) {
    auto tokens = split_ws(line);
    if (tokens.size() < 2 || tokens[0] != "c" || tokens[1] != tag) continue;
    out.push_back({cursor.line_no, std::vector<std::string_view>(tokens.begin() + 2, tokens.end())});
  }
  return out;
}

void strip_sidecar(CnfFormula& f, std::string_view tag) {
  auto& cs = f.comments();
  cs.erase(std::remove_if(cs.begin(), cs.end(),
                          [&](const std::string& c) {
                            const auto tokens = split_ws(c);
                            return !tokens.empty() && tokens[0] == tag;
                          }),
           cs.end());
}

std::vector<Var> sidecar_vars(const SidecarLine& line, std::size_t first, Var num_vars) {
  std::vector<Var> out;
  for (std::size_t i = first; i < line.args.size(); ++i) {
    const long long v = parse_int(line.args[i], line.line_no);
    if (v == 0 && i + 1 == line.args.size()) break;
    if (v <= 0 || v > static_cast<long long>(num_vars))
      throw ParseError(line.line_no, "variable " + std::string(line.args[i]) + " out of range");
    out.push_back(static_cast<Var>(v));
  }
  return out;
}

std::string write_with_sidecar(const CnfFormula& f, std::string_view lines) {
  std::string body = write_dimacs(f);
  const auto header = body.starts_with("p ") ? 0 : body.find("\np ") + 1;
  body.insert(header, lines);
  return body;
}

std::string sidecar_var_line(std::string_view tag, std::string_view field, std::span<const Var> vars) {
  std::string out = "c " + std::string(tag) + " " + std::string(field);
  for (Var v : vars) out += " " + std::to_string(v);
  return out + " 0\n";
}

QbfFormula close_over(const DecomposedCnf& matrix, std::vector<QuantifierBlock> blocks) {
  QbfFormula q;
  q.matrix = matrix.formula;
  const Var n = q.matrix.num_vars();
  std::vector<std::uint8_t> bound(n + 1, 0);
  for (const auto& b : blocks)
    for (Var v : b.vars) bound[v] = 1;
  QuantifierBlock aux{Quantifier::exists, {}};
  for (Var v = 1; v <= n; ++v)
    if (!bound[v]) aux.vars.push_back(v);
  blocks.push_back(std::move(aux));
  q.prefix = std::move(blocks);
  q.normalize_prefix();
  q.incidence_hint = matrix.td;
  return q;
}

}  // namespace twqbf::detail

namespace twqbf {

DecomposedCnf negate_formula(const CnfFormula& f, const IncidenceDecomposition& d) {
  detail::Composer c(f, d, f.num_vars());
  std::vector<ClauseId> all(f.num_clauses());
  for (ClauseId i = 0; i < all.size(); ++i) all[i] = i;
  return c.finish(c.neg(c.clauses(all)));
}

}  // namespace twqbf
