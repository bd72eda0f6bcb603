#include <algorithm>

#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"

namespace twqbf {

namespace {

TreeDecomposition checked_primal(const QbfFormula& q, const TreeDecomposition& primal) {
  const Graph g = primal_graph(q.matrix);
  if (g.num_vertices() == 0) return primal;
  const auto report = validate(primal, g);
  if (!report.ok()) throw InvalidInput("generator: invalid primal decomposition: " + report.summary());
  return primal;
}

TreeDecomposition default_primal(const QbfFormula& q) {
  const Graph g = primal_graph(q.matrix);
  if (g.num_vertices() == 0) return {};
  return decompose(g, Strategy::min_fill);
}

// First bag holding every variable of the clause.
std::uint32_t covering_bag(const TreeDecomposition& d, const Clause& c) {
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    const auto& bag = d.bags[t];
    if (std::all_of(c.begin(), c.end(),
                    [&](Lit l) { return std::binary_search(bag.begin(), bag.end(), var_vertex(l.var())); }))
      return t;
  }
  throw InvalidInput("generator: clause not covered by the primal decomposition");
}

std::uint32_t add_sorted(TreeDecomposition& d, std::uint32_t parent, std::vector<Vertex> bag) {
  std::sort(bag.begin(), bag.end());
  bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  return d.add_node(parent, std::move(bag));
}

}  // namespace

GeneratedAf generate_af_from_qbf(const QbfFormula& q, const TreeDecomposition& primal_in) {
  const auto [xs, ys] = forall_exists_split(q);
  const TreeDecomposition primal = checked_primal(q, primal_in);
  const CnfFormula& f = q.matrix;
  const Var n = f.num_vars();
  std::vector<std::uint8_t> universal(n + 1, 0);
  for (Var v : xs) universal[v] = 1;

  GeneratedAf out;
  auto& af = out.doc.framework;
  const Argument phi = af.add_argument("phi");
  std::vector<Argument> clause_arg, pos_arg(n + 1), neg_arg(n + 1);
  for (ClauseId j = 0; j < f.num_clauses(); ++j) clause_arg.push_back(af.add_argument("c" + std::to_string(j + 1)));
  for (Var v = 1; v <= n; ++v) {
    pos_arg[v] = af.add_argument("x" + std::to_string(v));
    neg_arg[v] = af.add_argument("nx" + std::to_string(v));
  }
  const Argument b1 = af.add_argument("b1"), b2 = af.add_argument("b2"), b3 = af.add_argument("b3");

  for (ClauseId j = 0; j < f.num_clauses(); ++j) {
    af.add_attack(clause_arg[j], phi);
    for (Lit l : f.clause(j)) af.add_attack(l.negative() ? neg_arg[l.var()] : pos_arg[l.var()], clause_arg[j]);
  }
  for (Var v = 1; v <= n; ++v) {
    af.add_attack(pos_arg[v], neg_arg[v]);
    af.add_attack(neg_arg[v], pos_arg[v]);
    if (!universal[v]) {
      af.add_attack(b1, pos_arg[v]);
      af.add_attack(b1, neg_arg[v]);
    }
  }
  for (Argument b : {b1, b2, b3}) af.add_attack(phi, b);
  af.add_attack(b1, b2);
  af.add_attack(b2, b3);
  af.add_attack(b3, b1);
  out.doc.query = {phi};

  auto& d = out.decomposition;
  for (std::uint32_t t = 0; t < primal.size(); ++t) {
    std::vector<Vertex> bag{phi, b1};
    for (Vertex u : primal.bags[t]) {
      bag.push_back(pos_arg[u + 1]);
      bag.push_back(neg_arg[u + 1]);
    }
    const std::uint32_t parent = primal.tree.parent[t];
    add_sorted(d, parent, std::move(bag));
  }
  if (d.size() == 0) add_sorted(d, kNoNode, {phi, b1});
  d.tree.root = primal.size() == 0 ? 0 : primal.tree.root;
  for (ClauseId j = 0; j < f.num_clauses(); ++j) {
    const std::uint32_t at = f.clause(j).empty() ? d.tree.root : covering_bag(primal, f.clause(j));
    std::vector<Vertex> bag{clause_arg[j], phi};
    for (Lit l : f.clause(j)) bag.push_back(l.negative() ? neg_arg[l.var()] : pos_arg[l.var()]);
    add_sorted(d, at, std::move(bag));
  }
  add_sorted(d, d.tree.root, {phi, b1, b2, b3});
  return out;
}

GeneratedAf generate_af_from_qbf(const QbfFormula& q) { return generate_af_from_qbf(q, default_primal(q)); }

PapInstance generate_pap_from_qbf(const QbfFormula& q) {
  const auto [xs, ys] = forall_exists_split(q);
  const CnfFormula& f = q.matrix;
  const Var n = f.num_vars();
  const Var m = static_cast<Var>(xs.size());
  const Var s = n + m + 1, u = n + m + 2;
  PapInstance p;
  p.theory = CnfFormula(u);
  for (Var i = 0; i < m; ++i) {
    const Var x = xs[i], xp = n + i + 1;
    p.theory.add_clause({Lit::pos(x), Lit::pos(xp)});
    p.theory.add_clause({Lit::neg(x), Lit::neg(xp)});
  }
  p.theory.add_clause({Lit::neg(u), Lit::pos(s)});
  for (Var y : ys) p.theory.add_clause({Lit::neg(u), Lit::pos(y)});
  for (const auto& c : f.clauses()) {
    Clause cl{Lit::pos(u)};
    cl.insert(cl.end(), c.begin(), c.end());
    p.theory.add_clause(cl);
  }
  for (Var y : ys) p.theory.add_clause({Lit::neg(s), Lit::pos(y)});
  for (Var i = 0; i < m; ++i) p.hypotheses.push_back(xs[i]);
  for (Var i = 0; i < m; ++i) p.hypotheses.push_back(n + i + 1);
  std::sort(p.hypotheses.begin(), p.hypotheses.end());
  p.manifestations = ys;
  p.manifestations.push_back(s);
  std::sort(p.manifestations.begin(), p.manifestations.end());
  return p;
}

CircumscriptionInstance generate_circ_from_qbf(const QbfFormula& q) {
  const auto [xs, ys] = forall_exists_split(q);
  const CnfFormula& f = q.matrix;
  const Var n = f.num_vars();
  const Var m = static_cast<Var>(xs.size());
  const Var u = n + m + 1, v = n + m + 2;
  CircumscriptionInstance c;
  c.theory = CnfFormula(v);
  for (Var i = 0; i < m; ++i) {
    const Var x = xs[i], z = n + i + 1;
    c.theory.add_clause({Lit::pos(x), Lit::pos(z)});
    c.theory.add_clause({Lit::neg(x), Lit::neg(z)});
  }
  c.theory.add_clause({Lit::neg(v), Lit::pos(u)});
  for (Var y : ys) c.theory.add_clause({Lit::neg(v), Lit::pos(y)});
  for (const auto& cl : f.clauses()) {
    Clause out{Lit::pos(v)};
    out.insert(out.end(), cl.begin(), cl.end());
    c.theory.add_clause(out);
  }
  c.query = CnfFormula(v);
  c.query.add_clause({Lit::neg(u)});
  for (Var w = 1; w < v; ++w) c.p.push_back(w);
  c.z = {v};
  return c;
}

GeneratedMus generate_mus_from_qbf(const QbfFormula& q, const TreeDecomposition& primal_in) {
  const auto [xs, ys] = forall_exists_split(q);
  const TreeDecomposition primal = checked_primal(q, primal_in);
  const CnfFormula& f = q.matrix;
  const Var n = f.num_vars(), w = n + 1;
  GeneratedMus out;
  auto& phi = out.query.formula;
  phi = CnfFormula(w);
  for (Var x : xs) {
    phi.add_clause({Lit::pos(x)});
    phi.add_clause({Lit::neg(x)});
  }
  out.query.clause = phi.add_clause({Lit::pos(w)});
  for (const auto& c : f.clauses()) {
    Clause cl{Lit::neg(w)};
    cl.insert(cl.end(), c.begin(), c.end());
    phi.add_clause(cl);
  }
  auto& d = out.decomposition;
  for (std::uint32_t t = 0; t < primal.size(); ++t) {
    auto bag = primal.bags[t];
    bag.push_back(var_vertex(w));
    add_sorted(d, primal.tree.parent[t], std::move(bag));
  }
  if (d.size() == 0) add_sorted(d, kNoNode, {var_vertex(w)});
  d.tree.root = primal.size() == 0 ? 0 : primal.tree.root;
  return out;
}

GeneratedMus generate_mus_from_qbf(const QbfFormula& q) { return generate_mus_from_qbf(q, default_primal(q)); }

}  // namespace twqbf
