#include <algorithm>

#include "compose.hpp"
#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"

namespace twqbf {

void CircumscriptionInstance::check() const {
  const Var n = num_vars();
  std::vector<std::uint8_t> role(n + 1, 0);
  for (const auto* part : {&p, &q, &z})
    for (std::size_t i = 0; i < part->size(); ++i) {
      const Var v = (*part)[i];
      if (v == 0 || v > n) throw InvalidInput("circumscription: variable " + std::to_string(v) + " out of range");
      if (i > 0 && (*part)[i - 1] >= v) throw InvalidInput("circumscription: P, Q, Z must be strictly ascending");
      if (role[v]) throw InvalidInput("circumscription: variable " + std::to_string(v) + " listed twice");
      role[v] = 1;
    }
  for (const auto* f : {&theory, &query})
    for (const auto& c : f->clauses())
      for (Lit l : c)
        if (!role[l.var()])
          throw InvalidInput("circumscription: variable " + std::to_string(l.var()) + " is not in P, Q or Z");
}

CircumscriptionInstance parse_circ(std::string_view text) {
  CircumscriptionInstance c;
  c.theory = parse_dimacs(text);
  detail::strip_sidecar(c.theory, "circ");
  const Var n = c.theory.num_vars();
  c.query = CnfFormula(n);
  for (const auto& line : detail::sidecar_lines(text, "circ")) {
    if (line.args.empty()) throw ParseError(line.line_no, "expected 'c circ p|q|z|f ...'");
    const auto field = line.args[0];
    if (field == "f") {
      Clause clause;
      for (std::size_t i = 1; i < line.args.size(); ++i) {
        const long long code = detail::parse_int(line.args[i], line.line_no);
        if (code == 0) {
          if (i + 1 != line.args.size()) throw ParseError(line.line_no, "literal after the terminating 0");
          break;
        }
        if (code < -static_cast<long long>(n) || code > static_cast<long long>(n))
          throw ParseError(line.line_no, "literal " + std::string(line.args[i]) + " out of range");
        clause.push_back(Lit::from_dimacs(static_cast<std::int32_t>(code)));
      }
      try {
        c.query.add_clause(clause);
      } catch (const InvalidInput& e) {
        throw ParseError(line.line_no, e.what());
      }
      continue;
    }
    std::vector<Var>* dst = field == "p" ? &c.p : field == "q" ? &c.q : field == "z" ? &c.z : nullptr;
    if (!dst) throw ParseError(line.line_no, "unknown circ field '" + std::string(field) + "'");
    const auto vs = detail::sidecar_vars(line, 1, n);
    dst->insert(dst->end(), vs.begin(), vs.end());
  }
  for (auto* part : {&c.p, &c.q, &c.z}) {
    std::sort(part->begin(), part->end());
    part->erase(std::unique(part->begin(), part->end()), part->end());
  }
  c.check();
  return c;
}

std::string write_circ(const CircumscriptionInstance& c) {
  std::string lines = detail::sidecar_var_line("circ", "p", c.p) + detail::sidecar_var_line("circ", "q", c.q) +
                      detail::sidecar_var_line("circ", "z", c.z);
  for (const auto& clause : c.query.clauses()) {
    lines += "c circ f";
    for (Lit l : clause) lines += " " + std::to_string(l.dimacs());
    lines += " 0\n";
  }
  CnfFormula t = c.theory;
  t.ensure_vars(c.num_vars());
  return detail::write_with_sidecar(t, lines);
}

DomainQbf circumscription_qbf(const CircumscriptionInstance& c, const std::optional<IncidenceDecomposition>& d_in) {
  c.check();
  const Var n = c.num_vars();
  const Var np = static_cast<Var>(c.p.size());
  // T and F side by side; clause ids of F follow those of T.
  CnfFormula both = c.theory;
  both.ensure_vars(n);
  for (const auto& clause : c.query.clauses()) both.add_clause(clause);
  IncidenceDecomposition d;
  if (d_in) {
    const auto report = validate(*d_in, both);
    if (!report.ok()) throw InvalidInput("invalid decomposition of theory and query: " + report.summary());
    d = *d_in;
  } else {
    d = decompose_incidence(both, Strategy::min_fill);
  }

  // Second copy: P and Z renamed, Q shared.
  std::vector<Var> ident(n + 1, 0), prime(n + 1, 0);
  for (Var v = 1; v <= n; ++v) ident[v] = v;
  for (Var i = 0; i < np; ++i) prime[c.p[i]] = n + i + 1;
  for (std::size_t j = 0; j < c.z.size(); ++j) prime[c.z[j]] = n + np + static_cast<Var>(j) + 1;
  for (Var v : c.q) prime[v] = v;
  const std::vector<std::vector<Var>> maps{ident, prime};
  auto copied = detail::copy_carrier(d, both.num_clauses(), maps);
  auto& carrier = copied.carrier;
  std::vector<std::uint8_t> seen(n + 1, 0);
  for (const auto& bag : carrier.vars)
    for (Var v : bag)
      if (v <= n) seen[v] = 1;
  for (Var v = 1; v <= n; ++v) {
    if (!seen[v]) carrier.shadow(v, v);
    if (prime[v] != v && prime[v] != 0 && !seen[v]) carrier.shadow(v, prime[v]);
  }

  CnfFormula base(n + np + static_cast<Var>(c.z.size()));
  std::vector<std::vector<std::uint32_t>> fixed;
  auto add = [&](const Clause& cl, std::vector<std::uint32_t> nodes = {}) {
    const ClauseId id = base.add_clause(cl);
    fixed.resize(id + 1);
    fixed[id] = std::move(nodes);
    return id;
  };
  std::vector<ClauseId> t, f, t2, below, above;
  for (ClauseId i = 0; i < c.theory.num_clauses(); ++i) t.push_back(add(c.theory.clause(i), copied.clause_nodes[i]));
  for (ClauseId i = 0; i < c.query.num_clauses(); ++i)
    f.push_back(add(c.query.clause(i), copied.clause_nodes[c.theory.num_clauses() + i]));
  for (ClauseId i = 0; i < c.theory.num_clauses(); ++i) {
    Clause cl;
    for (Lit l : c.theory.clause(i)) cl.push_back(Lit::make(prime[l.var()], l.negative()));
    t2.push_back(add(cl, copied.clause_nodes[i]));
  }
  for (Var i = 0; i < np; ++i) {
    below.push_back(add({Lit::neg(n + i + 1), Lit::pos(c.p[i])}));
    above.push_back(add({Lit::neg(c.p[i]), Lit::pos(n + i + 1)}));
  }

  detail::Composer k(base, carrier.place(base, fixed), base.num_vars());
  auto strict = k.conj(k.clauses(below), k.neg(k.conj(k.clauses(below), k.clauses(above))));
  auto smaller = k.conj(k.clauses(t2), strict);
  auto body = k.neg(k.conj(std::vector{k.clauses(t), k.neg(k.clauses(f)), k.neg(smaller)}));
  std::vector<Var> outer, inner;
  for (Var v = 1; v <= n; ++v) outer.push_back(v);
  for (Var v = n + 1; v <= base.num_vars(); ++v) inner.push_back(v);
  DomainQbf out;
  out.qbf = detail::close_over(k.finish(body), {{Quantifier::forall, outer}, {Quantifier::exists, inner}});
  return out;
}

bool circumscription_entails(const CircumscriptionInstance& c, const SolveOptions& options) {
  return solve_domain(circumscription_qbf(c), options).value;
}

namespace {

struct MaskClause {
  std::uint64_t pos = 0, neg = 0;
  bool holds(std::uint64_t a) const { return ((a & pos) | (~a & neg)) != 0; }
};

std::vector<MaskClause> mask_clauses(const CnfFormula& f) {
  std::vector<MaskClause> out;
  for (const auto& clause : f.clauses()) {
    MaskClause m;
    for (Lit l : clause) (l.negative() ? m.neg : m.pos) |= std::uint64_t{1} << (l.var() - 1);
    out.push_back(m);
  }
  return out;
}

bool holds_all(const std::vector<MaskClause>& cs, std::uint64_t a) {
  return std::all_of(cs.begin(), cs.end(), [a](const MaskClause& m) { return m.holds(a); });
}

std::uint64_t gather(std::uint64_t a, const std::vector<Var>& vs) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (a >> (vs[i] - 1) & 1u) out |= std::uint64_t{1} << i;
  return out;
}

}  // namespace

std::vector<std::uint64_t> circ_oracle(const CircumscriptionInstance& c, CircOracleOptions options) {
  c.check();
  const Var n = c.num_vars();
  if (n > options.max_vars || n > 40)
    throw CapExceeded("circumscription oracle: " + std::to_string(n) + " variables exceed the cap");
  const auto t = mask_clauses(c.theory);
  const std::size_t np = c.p.size(), nq = c.q.size();
  const std::uint64_t pfull = std::uint64_t{1} << np;
  // has[q][p]: some model projects to (q, p); sub closes it under subsets of p.
  std::vector<std::uint8_t> sub(std::size_t{1} << (np + nq), 0);
  std::vector<std::uint64_t> models;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    if (!holds_all(t, a)) continue;
    models.push_back(a);
    sub[gather(a, c.q) * pfull + gather(a, c.p)] = 1;
  }
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t x = 0; x < sub.size(); ++x)
      if ((x >> i & 1u) && sub[x ^ (std::size_t{1} << i)]) sub[x] = 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t a : models) {
    const std::uint64_t pm = gather(a, c.p), base = gather(a, c.q) * pfull;
    bool minimal = true;
    for (std::size_t i = 0; minimal && i < np; ++i)
      if ((pm >> i & 1u) && sub[base + (pm ^ (std::uint64_t{1} << i))]) minimal = false;
    if (minimal) out.push_back(a);
  }
  return out;
}

bool circumscription_oracle(const CircumscriptionInstance& c, CircOracleOptions options) {
  const auto f = mask_clauses(c.query);
  const auto minimal = circ_oracle(c, options);
  return std::all_of(minimal.begin(), minimal.end(), [&](std::uint64_t a) { return holds_all(f, a); });
}

}  // namespace twqbf
