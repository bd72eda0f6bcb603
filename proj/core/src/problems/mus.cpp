#include <algorithm>

#include "compose.hpp"
#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"

namespace twqbf {

void MusQuery::check() const {
  if (clause >= formula.num_clauses())
    throw InvalidInput("mus: clause " + std::to_string(clause + 1) + " does not exist");
}

MusQuery parse_mus(std::string_view text) {
  MusQuery q;
  q.formula = parse_dimacs(text);
  detail::strip_sidecar(q.formula, "mus");
  bool found = false;
  for (const auto& line : detail::sidecar_lines(text, "mus")) {
    if (line.args.size() != 2 || line.args[0] != "clause") throw ParseError(line.line_no, "expected 'c mus clause <id>'");
    if (found) throw ParseError(line.line_no, "duplicate 'c mus clause' line");
    const long long id = detail::parse_int(line.args[1], line.line_no);
    if (id < 1 || id > static_cast<long long>(q.formula.num_clauses()))
      throw ParseError(line.line_no, "clause " + std::string(line.args[1]) + " out of range");
    q.clause = static_cast<ClauseId>(id - 1);
    found = true;
  }
  if (!found) throw ParseError(0, "missing 'c mus clause <id>' line");
  return q;
}

std::string write_mus(const MusQuery& q) {
  return detail::write_with_sidecar(q.formula, "c mus clause " + std::to_string(q.clause + 1) + "\n");
}

DomainQbf mus_qbf(const MusQuery& q, const std::optional<IncidenceDecomposition>& d_in) {
  q.check();
  const CnfFormula& f = q.formula;
  const Var n = f.num_vars();
  IncidenceDecomposition d;
  if (d_in) {
    const auto report = validate(*d_in, f);
    if (!report.ok()) throw InvalidInput("invalid decomposition of the formula: " + report.summary());
    d = *d_in;
  } else {
    d = decompose_incidence(f, Strategy::min_fill);
  }
  std::vector<Var> y(n + 1, 0), z(n + 1, 0);
  for (Var v = 1; v <= n; ++v) {
    y[v] = v;
    z[v] = n + v;
  }
  const std::vector<std::vector<Var>> maps{y, z};
  auto copied = detail::copy_carrier(d, f.num_clauses(), maps);
  auto& carrier = copied.carrier;
  // Selector of clause i, for i other than the query clause.
  std::vector<Var> sel(f.num_clauses(), 0);
  Var next = 2 * n;
  for (ClauseId i = 0; i < f.num_clauses(); ++i)
    if (i != q.clause) sel[i] = ++next;
  for (ClauseId i = 0; i < f.num_clauses(); ++i) {
    if (!sel[i]) continue;
    for (std::uint32_t t : copied.clause_nodes[i]) {
      auto& bag = carrier.vars[t];
      bag.insert(std::lower_bound(bag.begin(), bag.end(), sel[i]), sel[i]);
    }
  }

  CnfFormula base(next);
  std::vector<std::vector<std::uint32_t>> fixed;
  auto add = [&](Clause cl, std::vector<std::uint32_t> nodes) {
    const ClauseId id = base.add_clause(cl);
    fixed.resize(id + 1);
    fixed[id] = std::move(nodes);
    return id;
  };
  std::vector<ClauseId> sel_y, sel_z, target;
  for (ClauseId i = 0; i < f.num_clauses(); ++i) {
    Clause cy, cz;
    for (Lit l : f.clause(i)) {
      cy.push_back(Lit::make(y[l.var()], l.negative()));
      cz.push_back(Lit::make(z[l.var()], l.negative()));
    }
    if (!sel[i]) {
      target.push_back(add(cz, copied.clause_nodes[i]));
      continue;
    }
    cy.insert(cy.begin(), Lit::neg(sel[i]));
    cz.insert(cz.begin(), Lit::neg(sel[i]));
    sel_y.push_back(add(cy, copied.clause_nodes[i]));
    sel_z.push_back(add(cz, copied.clause_nodes[i]));
  }

  detail::Composer k(base, carrier.place(base, fixed), base.num_vars());
  auto body = k.neg(k.conj(k.clauses(sel_y), k.neg(k.conj(k.clauses(target), k.clauses(sel_z)))));
  std::vector<Var> outer, inner;
  for (Var v = 1; v <= n; ++v) {
    outer.push_back(v);
    inner.push_back(n + v);
  }
  for (Var v = 2 * n + 1; v <= next; ++v) outer.push_back(v);
  DomainQbf out;
  out.qbf = detail::close_over(k.finish(body), {{Quantifier::forall, outer}, {Quantifier::exists, inner}});
  out.negated = true;
  return out;
}

bool mus_membership(const MusQuery& q, const SolveOptions& options) {
  return solve_domain(mus_qbf(q), options).value;
}

std::vector<std::vector<ClauseId>> mus_oracle(const CnfFormula& f, MusOracleOptions options) {
  const std::size_t m = f.num_clauses();
  if (m > options.max_clauses || m > 30)
    throw CapExceeded("mus oracle: " + std::to_string(m) + " clauses exceed the cap");
  if (f.num_vars() > options.max_vars)
    throw CapExceeded("mus oracle: " + std::to_string(f.num_vars()) + " variables exceed the cap");
  const std::uint32_t full = 1u << m;
  std::vector<std::uint8_t> unsat(full, 0);
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    bool inherited = false;
    for (std::size_t i = 0; !inherited && i < m; ++i)
      if ((mask >> i & 1u) && unsat[mask ^ (1u << i)]) inherited = true;
    if (inherited) {
      unsat[mask] = 1;
      continue;
    }
    CnfFormula sub(f.num_vars());
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) sub.add_clause(f.clause(static_cast<ClauseId>(i)));
    unsat[mask] = satisfiable(sub) ? 0 : 1;
  }
  std::vector<std::vector<ClauseId>> out;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (!unsat[mask]) continue;
    bool minimal = true;
    for (std::size_t i = 0; minimal && i < m; ++i)
      if ((mask >> i & 1u) && unsat[mask ^ (1u << i)]) minimal = false;
    if (!minimal) continue;
    std::vector<ClauseId> ids;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) ids.push_back(static_cast<ClauseId>(i));
    out.push_back(std::move(ids));
  }
  return out;
}

bool mus_membership_oracle(const MusQuery& q, MusOracleOptions options) {
  q.check();
  const auto all = mus_oracle(q.formula, options);
  return std::any_of(all.begin(), all.end(), [&](const std::vector<ClauseId>& s) {
    return std::binary_search(s.begin(), s.end(), q.clause);
  });
}

}  // namespace twqbf
