#include <algorithm>
#include <cctype>

#include "compose.hpp"
#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"

namespace twqbf {

Argument ArgumentationFramework::add_argument(std::string name) {
  if (name.empty()) throw InvalidInput("argument name is empty");
  if (find(name)) throw InvalidInput("duplicate argument '" + name + "'");
  names_.push_back(std::move(name));
  return static_cast<Argument>(names_.size() - 1);
}

void ArgumentationFramework::add_attack(Argument attacker, Argument target) {
  if (attacker >= size() || target >= size()) throw InvalidInput("attack on an unknown argument");
  const std::pair<Argument, Argument> e{attacker, target};
  auto it = std::lower_bound(attacks_.begin(), attacks_.end(), e);
  if (it == attacks_.end() || *it != e) attacks_.insert(it, e);
}

std::optional<Argument> ArgumentationFramework::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Argument>(i);
  return std::nullopt;
}

bool ArgumentationFramework::attacks(Argument a, Argument b) const {
  return std::binary_search(attacks_.begin(), attacks_.end(), std::pair<Argument, Argument>{a, b});
}

Graph ArgumentationFramework::graph() const {
  std::vector<Edge> edges;
  for (const auto& [a, b] : attacks_)
    if (a != b) edges.emplace_back(a, b);
  return Graph(size(), edges);
}

AfDocument parse_af(std::string_view text) {
  AfDocument doc;
  detail::LineCursor cursor{text};
  std::string_view line;
  auto lookup = [&](std::string_view name) {
    const auto a = doc.framework.find(name);
    if (!a) throw ParseError(cursor.line_no, "unknown argument '" + std::string(name) + "'");
    return *a;
  };
  while (cursor.next(line)) {
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens[0] == "arg") {
      if (tokens.size() != 2) throw ParseError(cursor.line_no, "expected 'arg <name>'");
      if (doc.framework.find(tokens[1]))
        throw ParseError(cursor.line_no, "duplicate argument '" + std::string(tokens[1]) + "'");
      doc.framework.add_argument(std::string(tokens[1]));
    } else if (tokens[0] == "att") {
      if (tokens.size() != 3) throw ParseError(cursor.line_no, "expected 'att <attacker> <target>'");
      doc.framework.add_attack(lookup(tokens[1]), lookup(tokens[2]));
    } else if (tokens[0] == "query") {
      for (std::size_t i = 1; i < tokens.size(); ++i) doc.query.push_back(lookup(tokens[i]));
    } else {
      throw ParseError(cursor.line_no, "unknown directive '" + std::string(tokens[0]) + "'");
    }
  }
  std::sort(doc.query.begin(), doc.query.end());
  doc.query.erase(std::unique(doc.query.begin(), doc.query.end()), doc.query.end());
  return doc;
}

std::string write_af(const AfDocument& doc) {
  const auto& f = doc.framework;
  std::string out;
  for (Argument a = 0; a < f.size(); ++a) out += "arg " + f.name(a) + "\n";
  for (const auto& [a, b] : f.attacks()) out += "att " + f.name(a) + " " + f.name(b) + "\n";
  if (!doc.query.empty()) {
    out += "query";
    for (Argument a : doc.query) out += " " + f.name(a);
    out += "\n";
  }
  return out;
}

namespace {

// Clauses of phi_adm over the given member and attacked variables, with the
// nodes each P_a-defining clause must occupy.
void admissible_clauses(const ArgumentationFramework& f, const std::vector<std::vector<std::uint32_t>>& arg_nodes,
                        const std::vector<Var>& x, const std::vector<Var>& p, CnfFormula& out,
                        std::vector<std::vector<std::uint32_t>>& fixed, std::vector<ClauseId>* ids = nullptr) {
  auto add = [&](std::initializer_list<Lit> lits, const std::vector<std::uint32_t>& nodes = {}) {
    const ClauseId c = out.add_clause(lits);
    fixed.resize(c + 1);
    fixed[c] = nodes;
    if (ids) ids->push_back(c);
    return c;
  };
  const std::size_t n = f.size();
  std::vector<std::vector<Argument>> attackers(n);
  for (const auto& [b, a] : f.attacks()) attackers[a].push_back(b);
  for (const auto& [a, b] : f.attacks()) add({Lit::neg(x[a]), Lit::neg(x[b])});
  for (Argument a = 0; a < n; ++a) {
    Clause c{Lit::neg(p[a])};
    for (Argument b : attackers[a]) c.push_back(Lit::pos(x[b]));
    const ClauseId id = out.add_clause(c);
    fixed.resize(id + 1);
    fixed[id] = arg_nodes[a];
    if (ids) ids->push_back(id);
    for (Argument b : attackers[a]) add({Lit::pos(p[a]), Lit::neg(x[b])});
  }
  // An attacked member needs its attacker to be attacked by the set.
  for (const auto& [b, a] : f.attacks()) add({Lit::neg(x[a]), Lit::pos(p[b])});
}

void require_decomposition(const ArgumentationFramework& f, const TreeDecomposition& d) {
  if (f.size() == 0) return;
  const auto report = validate(d, f.graph());
  if (!report.ok()) throw InvalidInput("invalid decomposition of the framework: " + report.summary());
}

struct AfLayout {
  detail::Carrier carrier;
  std::vector<std::vector<std::uint32_t>> arg_nodes;
};

// One bag per node of d holding, for each of its arguments, the variable
// of every copy.
AfLayout af_layout(const ArgumentationFramework& f, const TreeDecomposition& d,
                   const std::vector<std::vector<Var>>& copies) {
  AfLayout out;
  out.arg_nodes.resize(f.size());
  if (d.size() == 0) {
    out.carrier.add_node(kNoNode, {});
    return out;
  }
  out.carrier.tree = d.tree;
  out.carrier.vars.resize(d.size());
  for (std::uint32_t t = 0; t < d.size(); ++t)
    for (Vertex a : d.bags[t]) {
      out.arg_nodes[a].push_back(t);
      for (const auto& copy : copies) out.carrier.vars[t].push_back(copy[a]);
    }
  for (auto& bag : out.carrier.vars) std::sort(bag.begin(), bag.end());
  for (Argument a = 0; a < f.size(); ++a)
    if (out.arg_nodes[a].empty()) {
      out.arg_nodes[a].push_back(out.carrier.tree.root);
      for (const auto& copy : copies) out.carrier.shadow(0, copy[a]);
    }
  return out;
}

std::vector<Var> var_range(Var first, std::size_t n) {
  std::vector<Var> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = first + static_cast<Var>(i);
  return v;
}

std::vector<Argument> checked_set(const ArgumentationFramework& f, const std::vector<Argument>& s) {
  std::vector<Argument> out = s;
  for (Argument a : out)
    if (a >= f.size()) throw InvalidInput("argument set names an unknown argument");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

DecomposedCnf encode_admissible(const ArgumentationFramework& f, const TreeDecomposition& d) {
  require_decomposition(f, d);
  const std::size_t n = f.size();
  const auto x = var_range(1, n), p = var_range(static_cast<Var>(n) + 1, n);
  auto layout = af_layout(f, d, {x, p});
  CnfFormula phi(static_cast<Var>(2 * n));
  std::vector<std::vector<std::uint32_t>> fixed;
  admissible_clauses(f, layout.arg_nodes, x, p, phi, fixed);
  auto td = layout.carrier.place(phi, fixed);
  return {std::move(phi), std::move(td)};
}

DomainQbf credulous_qbf(const ArgumentationFramework& f, const std::vector<Argument>& s,
                        const TreeDecomposition& d) {
  const auto set = checked_set(f, s);
  DecomposedCnf adm = encode_admissible(f, d);
  for (Argument a : set) attach_clause(adm, std::vector<Lit>{Lit::pos(af_member_var(a))});
  std::vector<Var> all = var_range(1, 2 * f.size());
  DomainQbf out;
  out.qbf = detail::close_over(adm, {{Quantifier::exists, all}});
  return out;
}

DomainQbf skeptical_qbf(const ArgumentationFramework& f, const std::vector<Argument>& s,
                        const TreeDecomposition& d) {
  require_decomposition(f, d);
  const auto set = checked_set(f, s);
  const std::size_t n = f.size();
  const Var k = static_cast<Var>(n);
  const auto x = var_range(1, n), p = var_range(k + 1, n), x2 = var_range(2 * k + 1, n),
             p2 = var_range(3 * k + 1, n);
  auto layout = af_layout(f, d, {x, p, x2, p2});

  CnfFormula base(4 * k);
  std::vector<std::vector<std::uint32_t>> fixed;
  std::vector<ClauseId> adm, adm2, sub, rev, held;
  admissible_clauses(f, layout.arg_nodes, x, p, base, fixed, &adm);
  admissible_clauses(f, layout.arg_nodes, x2, p2, base, fixed, &adm2);
  auto add = [&](std::initializer_list<Lit> lits, std::vector<ClauseId>& ids) {
    ids.push_back(base.add_clause(lits));
    fixed.resize(base.num_clauses());
  };
  for (Argument a = 0; a < n; ++a) {
    add({Lit::neg(x[a]), Lit::pos(x2[a])}, sub);
    add({Lit::pos(x[a]), Lit::neg(x2[a])}, rev);
  }
  for (Argument a : set) add({Lit::pos(x[a])}, held);

  detail::Composer c(base, layout.carrier.place(base, fixed), 4 * k);
  const auto subset = c.clauses(sub);
  const auto strict = c.conj(subset, c.neg(c.conj(subset, c.clauses(rev))));
  const auto larger = c.conj(c.clauses(adm2), strict);
  // Not admissible, or not maximal, or containing s.
  const auto body = c.neg(c.conj(std::vector{c.clauses(adm), c.neg(larger), c.neg(c.clauses(held))}));

  std::vector<Var> outer = x, inner = x2;
  outer.insert(outer.end(), p.begin(), p.end());
  inner.insert(inner.end(), p2.begin(), p2.end());
  DomainQbf out;
  out.qbf = detail::close_over(c.finish(body), {{Quantifier::forall, outer}, {Quantifier::exists, inner}});
  return out;
}

bool credulous(const ArgumentationFramework& f, const std::vector<Argument>& s, const SolveOptions& options) {
  const auto d = decompose(f.graph(), options.strategy, options.decompose);
  return solve_domain(credulous_qbf(f, s, d), options).value;
}

bool skeptical(const ArgumentationFramework& f, const std::vector<Argument>& s, const SolveOptions& options) {
  const auto d = decompose(f.graph(), options.strategy, options.decompose);
  return solve_domain(skeptical_qbf(f, s, d), options).value;
}

bool af_admissible(const ArgumentationFramework& f, const ArgumentSet& s) {
  std::vector<std::uint8_t> in(f.size(), 0), hit(f.size(), 0);
  for (Argument a : s) in.at(a) = 1;
  for (const auto& [a, b] : f.attacks()) {
    if (in[a] && in[b]) return false;
    if (in[a]) hit[b] = 1;
  }
  for (const auto& [b, a] : f.attacks())
    if (in[a] && !hit[b]) return false;
  return true;
}

std::vector<ArgumentSet> af_oracle(const ArgumentationFramework& f, OracleOptions options) {
  const std::size_t n = f.size();
  if (n > options.cap || n > 30)
    throw CapExceeded("af oracle: " + std::to_string(n) + " arguments exceed the cap of " +
                      std::to_string(options.cap));
  std::vector<std::uint32_t> targets(n, 0), attackers(n, 0);
  for (const auto& [a, b] : f.attacks()) {
    targets[a] |= 1u << b;
    attackers[b] |= 1u << a;
  }
  const std::uint32_t full = n == 0 ? 1u : (1u << n);
  std::vector<std::uint8_t> adm(full, 0), above(full, 0);
  for (std::uint32_t m = 0; m < full; ++m) {
    std::uint32_t hit = 0;
    for (std::size_t a = 0; a < n; ++a)
      if (m >> a & 1u) hit |= targets[a];
    bool ok = (hit & m) == 0;
    for (std::size_t a = 0; ok && a < n; ++a)
      if ((m >> a & 1u) && (attackers[a] & ~hit)) ok = false;
    adm[m] = above[m] = ok;
  }
  // above[m]: some admissible superset of m.
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t m = 0; m < full; ++m)
      if (!(m >> i & 1u) && above[m | (1u << i)]) above[m] = 1;
  std::vector<ArgumentSet> out;
  for (std::uint32_t m = 0; m < full; ++m) {
    if (!adm[m]) continue;
    bool maximal = true;
    for (std::size_t i = 0; maximal && i < n; ++i)
      if (!(m >> i & 1u) && above[m | (1u << i)]) maximal = false;
    if (!maximal) continue;
    ArgumentSet s;
    for (std::size_t a = 0; a < n; ++a)
      if (m >> a & 1u) s.push_back(static_cast<Argument>(a));
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
bool includes(const ArgumentSet& big, const ArgumentSet& small) {
  ArgumentSet s = small;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return std::includes(big.begin(), big.end(), s.begin(), s.end());
}
}  // namespace

bool af_credulous_oracle(const ArgumentationFramework& f, const ArgumentSet& s, OracleOptions options) {
  const auto pref = af_oracle(f, options);
  return std::any_of(pref.begin(), pref.end(), [&](const ArgumentSet& e) { return includes(e, s); });
}

bool af_skeptical_oracle(const ArgumentationFramework& f, const ArgumentSet& s, OracleOptions options) {
  const auto pref = af_oracle(f, options);
  return std::all_of(pref.begin(), pref.end(), [&](const ArgumentSet& e) { return includes(e, s); });
}

}  // namespace twqbf
