#include <algorithm>

#include "compose.hpp"
#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"

namespace twqbf {

namespace {

void check_var_list(const std::vector<Var>& vs, Var n, const char* what) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] == 0 || vs[i] > n) throw InvalidInput(std::string(what) + ": variable out of range");
    if (i > 0 && vs[i - 1] >= vs[i]) throw InvalidInput(std::string(what) + ": list is not strictly ascending");
  }
}

std::vector<Var> sorted_unique(std::vector<Var> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

void PapInstance::check() const {
  check_var_list(hypotheses, theory.num_vars(), "hypotheses");
  check_var_list(manifestations, theory.num_vars(), "manifestations");
}

PapInstance parse_pap(std::string_view text) {
  PapInstance p;
  p.theory = parse_dimacs(text);
  detail::strip_sidecar(p.theory, "pap");
  for (const auto& line : detail::sidecar_lines(text, "pap")) {
    if (line.args.empty()) throw ParseError(line.line_no, "expected 'c pap h|m <var>...'");
    const auto vs = detail::sidecar_vars(line, 1, p.theory.num_vars());
    if (line.args[0] == "h")
      p.hypotheses.insert(p.hypotheses.end(), vs.begin(), vs.end());
    else if (line.args[0] == "m")
      p.manifestations.insert(p.manifestations.end(), vs.begin(), vs.end());
    else
      throw ParseError(line.line_no, "unknown pap field '" + std::string(line.args[0]) + "'");
  }
  p.hypotheses = sorted_unique(std::move(p.hypotheses));
  p.manifestations = sorted_unique(std::move(p.manifestations));
  return p;
}

std::string write_pap(const PapInstance& p) {
  return detail::write_with_sidecar(p.theory, detail::sidecar_var_line("pap", "h", p.hypotheses) +
                                                  detail::sidecar_var_line("pap", "m", p.manifestations));
}

std::string_view to_string(AbductionQuery q) {
  switch (q) {
    case AbductionQuery::solvable:
      return "solvable";
    case AbductionQuery::relevance:
      return "relevance";
    case AbductionQuery::necessity:
      return "necessity";
    case AbductionQuery::subset_relevance:
      return "subset-relevance";
    case AbductionQuery::subset_necessity:
      return "subset-necessity";
  }
  return "?";
}

std::optional<AbductionQuery> parse_abduction_query(std::string_view name) {
  for (auto q : {AbductionQuery::solvable, AbductionQuery::relevance, AbductionQuery::necessity,
                 AbductionQuery::subset_relevance, AbductionQuery::subset_necessity})
    if (to_string(q) == name) return q;
  return std::nullopt;
}

namespace {

std::size_t hypothesis_index(const PapInstance& p, AbductionQuery query, Var h) {
  if (query == AbductionQuery::solvable) return 0;
  const auto it = std::lower_bound(p.hypotheses.begin(), p.hypotheses.end(), h);
  if (it == p.hypotheses.end() || *it != h)
    throw InvalidInput("variable " + std::to_string(h) + " is not a hypothesis");
  return static_cast<std::size_t>(it - p.hypotheses.begin());
}

bool is_subset_query(AbductionQuery q) {
  return q == AbductionQuery::subset_relevance || q == AbductionQuery::subset_necessity;
}

// Base clause sets of the abduction encodings, all over one carrier.
class PapBase {
 public:
  PapBase(const PapInstance& p, const IncidenceDecomposition& d, std::size_t theory_copies, std::size_t set_copies)
      : p_(p), n_(p.theory.num_vars()), hyps_(p.hypotheses.size()), copies_(theory_copies) {
    const Var total = static_cast<Var>(theory_copies * n_ + set_copies * hyps_);
    base_ = CnfFormula(total);
    std::vector<std::vector<Var>> maps;
    for (std::size_t j = 0; j < theory_copies; ++j) {
      std::vector<Var> map(n_ + 1, 0);
      for (Var v = 1; v <= n_; ++v) map[v] = x(j, v);
      maps.push_back(std::move(map));
    }
    auto copied = detail::copy_carrier(d, p.theory.num_clauses(), maps);
    carrier_ = std::move(copied.carrier);
    clause_nodes_ = std::move(copied.clause_nodes);
    for (Var v = 1; v <= n_; ++v)
      for (std::size_t j = 1; j < theory_copies; ++j) carrier_.shadow(x(0, v), x(j, v));
    for (Var v = 1; v <= n_; ++v) carrier_.shadow(x(0, v), x(0, v));
    for (std::size_t i = 0; i < hyps_; ++i)
      for (std::size_t k = 0; k < set_copies; ++k) carrier_.shadow(x(0, p.hypotheses[i]), s(k, i));
  }

  Var x(std::size_t copy, Var v) const { return static_cast<Var>(copy * n_) + v; }
  Var s(std::size_t copy, std::size_t i) const {
    return static_cast<Var>(copies_ * n_ + copy * hyps_ + i + 1);
  }

  std::vector<ClauseId> theory(std::size_t copy, Var unit = 0) {
    std::vector<ClauseId> ids;
    for (ClauseId c = 0; c < p_.theory.num_clauses(); ++c) {
      Clause cl;
      for (Lit l : p_.theory.clause(c)) cl.push_back(Lit::make(x(copy, l.var()), l.negative()));
      ids.push_back(add(cl, clause_nodes_[c]));
    }
    if (unit != 0) ids.push_back(add({Lit::pos(x(copy, unit))}));
    return ids;
  }
  // s_i -> x_{h_i} for every hypothesis.
  std::vector<ClauseId> coupling(std::size_t set, std::size_t copy) {
    std::vector<ClauseId> ids;
    for (std::size_t i = 0; i < hyps_; ++i)
      ids.push_back(add({Lit::neg(s(set, i)), Lit::pos(x(copy, p_.hypotheses[i]))}));
    return ids;
  }
  std::vector<ClauseId> manifest(std::size_t copy) {
    std::vector<ClauseId> ids;
    for (Var m : p_.manifestations) ids.push_back(add({Lit::pos(x(copy, m))}));
    return ids;
  }
  // a_i -> b_i over two hypothesis sets.
  std::vector<ClauseId> implication(std::size_t a, std::size_t b) {
    std::vector<ClauseId> ids;
    for (std::size_t i = 0; i < hyps_; ++i) ids.push_back(add({Lit::neg(s(a, i)), Lit::pos(s(b, i))}));
    return ids;
  }
  std::vector<ClauseId> unit(Lit l) { return {add({l})}; }

  std::vector<Var> xs(std::size_t copy) const {
    std::vector<Var> out;
    for (Var v = 1; v <= n_; ++v) out.push_back(x(copy, v));
    return out;
  }
  std::vector<Var> ss(std::size_t set) const {
    std::vector<Var> out;
    for (std::size_t i = 0; i < hyps_; ++i) out.push_back(s(set, i));
    return out;
  }

  detail::Composer composer() const {
    return detail::Composer(base_, carrier_.place(base_, fixed_), base_.num_vars());
  }

 private:
  ClauseId add(std::initializer_list<Lit> lits, std::vector<std::uint32_t> nodes = {}) {
    return add(Clause(lits), std::move(nodes));
  }
  ClauseId add(const Clause& c, std::vector<std::uint32_t> nodes = {}) {
    const ClauseId id = base_.add_clause(c);
    fixed_.resize(id + 1);
    fixed_[id] = std::move(nodes);
    return id;
  }

  const PapInstance& p_;
  Var n_;
  std::size_t hyps_;
  std::size_t copies_;
  CnfFormula base_;
  detail::Carrier carrier_;
  std::vector<std::vector<std::uint32_t>> clause_nodes_;
  std::vector<std::vector<std::uint32_t>> fixed_;
};

std::vector<Var> concat(std::initializer_list<std::vector<Var>> parts) {
  std::vector<Var> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

DomainQbf abduction_qbf(const PapInstance& p, AbductionQuery query, Var h,
                        const std::optional<IncidenceDecomposition>& d_in) {
  p.check();
  const std::size_t hi = hypothesis_index(p, query, h);
  const IncidenceDecomposition d = d_in ? *d_in : decompose_incidence(p.theory, Strategy::min_fill);
  if (d_in) {
    const auto report = validate(d, p.theory);
    if (!report.ok()) throw InvalidInput("invalid decomposition of the theory: " + report.summary());
  }
  DomainQbf out;
  using detail::Composer;

  if (!is_subset_query(query)) {
    // forall S, X exists X': T(X) and S <= X fails, or X' witnesses that
    // T and S do not entail M. True iff no solution qualifies.
    PapBase b(p, d, 2, 1);
    const Var extra = query == AbductionQuery::relevance ? h : 0;
    auto t0 = b.theory(0, extra), t1 = b.theory(1, extra);
    auto c0 = b.coupling(0, 0), c1 = b.coupling(0, 1);
    auto m1 = b.manifest(1);
    std::vector<ClauseId> drop;
    if (query == AbductionQuery::necessity) drop = b.unit(Lit::neg(b.s(0, hi)));
    Composer c = b.composer();
    auto consistent = c.conj(std::vector{c.clauses(t0), c.clauses(c0), c.clauses(drop)});
    auto refuted = c.conj(std::vector{c.clauses(c1), c.clauses(t1), c.neg(c.clauses(m1))});
    auto body = c.neg(c.conj(consistent, c.neg(refuted)));
    out.qbf = detail::close_over(c.finish(body), {{Quantifier::forall, concat({b.ss(0), b.xs(0)})},
                                                  {Quantifier::exists, b.xs(1)}});
    out.negated = query != AbductionQuery::necessity;
    return out;
  }

  // exists S, X forall X1, S', X2 exists X3: S is a solution containing h
  // (or missing h) and no strict subset S' is one.
  PapBase b(p, d, 4, 2);
  auto t0 = b.theory(0), t1 = b.theory(1), t2 = b.theory(2), t3 = b.theory(3);
  auto c0 = b.coupling(0, 0), c1 = b.coupling(0, 1), c2 = b.coupling(1, 2), c3 = b.coupling(1, 3);
  auto m1 = b.manifest(1), m3 = b.manifest(3);
  auto below = b.implication(1, 0), above = b.implication(0, 1);
  const bool relevance = query == AbductionQuery::subset_relevance;
  auto mark = b.unit(Lit::make(b.s(0, hi), !relevance));
  Composer c = b.composer();
  auto entails = c.neg(c.conj(std::vector{c.clauses(c1), c.clauses(t1), c.neg(c.clauses(m1))}));
  auto strict = c.conj(c.clauses(below), c.neg(c.conj(c.clauses(below), c.clauses(above))));
  auto refutes = c.conj(std::vector{c.clauses(c3), c.clauses(t3), c.neg(c.clauses(m3))});
  auto smaller_fails =
      c.neg(c.conj(std::vector{strict, c.clauses(t2), c.clauses(c2), c.neg(refutes)}));
  auto body = c.conj(std::vector{c.clauses(mark), c.clauses(t0), c.clauses(c0), entails, smaller_fails});
  out.qbf = detail::close_over(c.finish(body), {{Quantifier::exists, concat({b.ss(0), b.xs(0)})},
                                                {Quantifier::forall, concat({b.xs(1), b.ss(1), b.xs(2)})},
                                                {Quantifier::exists, b.xs(3)}});
  out.negated = !relevance;
  return out;
}

bool abduction(const PapInstance& p, AbductionQuery query, Var h, const SolveOptions& options) {
  return solve_domain(abduction_qbf(p, query, h), options).value;
}

bool abduction_subset(const PapInstance& p, AbductionQuery query, Var h, const SolveOptions& options) {
  if (!is_subset_query(query)) throw InvalidInput("abduction_subset: expected a subset query");
  return abduction(p, query, h, options);
}

PapSolutions pap_oracle(const PapInstance& p, PapOracleOptions options) {
  p.check();
  const std::size_t k = p.hypotheses.size();
  if (k > options.max_hypotheses || k > 30)
    throw CapExceeded("pap oracle: " + std::to_string(k) + " hypotheses exceed the cap");
  if (p.theory.num_vars() > options.max_vars)
    throw CapExceeded("pap oracle: " + std::to_string(p.theory.num_vars()) + " variables exceed the cap");
  CnfFormula violated = p.theory;
  Clause some_missing;
  for (Var m : p.manifestations) some_missing.push_back(Lit::neg(m));
  violated.add_clause(some_missing);

  const std::uint32_t full = 1u << k;
  std::vector<std::uint8_t> sol(full, 0);
  PapSolutions out;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    std::vector<std::int8_t> fixed(p.theory.num_vars() + 1, -1);
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) fixed[p.hypotheses[i]] = 1;
    if (!satisfiable(p.theory, fixed) || satisfiable(violated, fixed)) continue;
    sol[mask] = 1;
    std::vector<Var> s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) s.push_back(p.hypotheses[i]);
    out.solutions.push_back(std::move(s));
  }
  // below[m]: some solution is a subset of m.
  std::vector<std::uint8_t> below = sol;
  for (std::size_t i = 0; i < k; ++i)
    for (std::uint32_t m = 0; m < full; ++m)
      if ((m >> i & 1u) && below[m ^ (1u << i)]) below[m] = 1;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (!sol[mask]) continue;
    bool minimal = true;
    for (std::size_t i = 0; minimal && i < k; ++i)
      if ((mask >> i & 1u) && below[mask ^ (1u << i)]) minimal = false;
    if (!minimal) continue;
    std::vector<Var> s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) s.push_back(p.hypotheses[i]);
    out.minimal.push_back(std::move(s));
  }
  return out;
}

bool abduction_oracle(const PapInstance& p, AbductionQuery query, Var h, PapOracleOptions options) {
  hypothesis_index(p, query, h);
  const auto all = pap_oracle(p, options);
  auto has = [&](const std::vector<Var>& s) { return std::binary_search(s.begin(), s.end(), h); };
  switch (query) {
    case AbductionQuery::solvable:
      return !all.solutions.empty();
    case AbductionQuery::relevance:
      return std::any_of(all.solutions.begin(), all.solutions.end(), has);
    case AbductionQuery::necessity:
      return std::all_of(all.solutions.begin(), all.solutions.end(), has);
    case AbductionQuery::subset_relevance:
      return std::any_of(all.minimal.begin(), all.minimal.end(), has);
    case AbductionQuery::subset_necessity:
      return std::all_of(all.minimal.begin(), all.minimal.end(), has);
  }
  return false;
}

}  // namespace twqbf
