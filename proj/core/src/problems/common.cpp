#include <algorithm>

#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"

namespace twqbf {

DomainResult solve_domain(const DomainQbf& q, const SolveOptions& options) {
  DomainResult out;
  const SolveResult r = chen_solve(q.qbf, options);
  out.value = q.negated ? !r.value : r.value;
  out.stats = r.stats;
  out.qbf_vars = q.qbf.matrix.num_vars();
  out.qbf_clauses = q.qbf.matrix.num_clauses();
  return out;
}

namespace {

class Dpll {
 public:
  Dpll(const CnfFormula& f, std::vector<std::int8_t> fixed) : f_(f), value_(std::move(fixed)) {
    value_.resize(f.num_vars() + 1, -1);
    watch_.resize(2 * (f.num_vars() + 1));
    for (ClauseId c = 0; c < f.num_clauses(); ++c)
      for (Lit l : f.clause(c)) watch_[index(l)].push_back(c);
  }

  bool run() {
    for (ClauseId c = 0; c < f_.num_clauses(); ++c)
      if (f_.clause(c).empty()) return false;
    std::vector<Var> trail;
    if (!propagate_all(trail)) return false;
    return search();
  }

 private:
  static std::size_t index(Lit l) { return 2 * l.var() + (l.negative() ? 1 : 0); }
  bool is_true(Lit l) const { return value_[l.var()] >= 0 && l.eval(value_[l.var()] == 1); }
  bool is_false(Lit l) const { return value_[l.var()] >= 0 && !l.eval(value_[l.var()] == 1); }

  // Returns false on a conflict; otherwise `unit` is the forced literal or Lit{}.
  bool status(ClauseId c, Lit& unit) const {
    unit = Lit{};
    std::size_t open = 0;
    for (Lit l : f_.clause(c)) {
      if (is_true(l)) {
        unit = Lit{};
        return true;
      }
      if (!is_false(l)) {
        ++open;
        unit = l;
      }
    }
    if (open == 0) return false;
    if (open > 1) unit = Lit{};
    return true;
  }

  bool assign(Lit l, std::vector<Var>& trail) {
    value_[l.var()] = l.negative() ? 0 : 1;
    trail.push_back(l.var());
    std::vector<Lit> queue{l};
    while (!queue.empty()) {
      const Lit x = queue.back();
      queue.pop_back();
      for (ClauseId c : watch_[index(~x)]) {
        Lit unit;
        if (!status(c, unit)) return false;
        if (unit != Lit{} && value_[unit.var()] < 0) {
          value_[unit.var()] = unit.negative() ? 0 : 1;
          trail.push_back(unit.var());
          queue.push_back(unit);
        }
      }
    }
    return true;
  }

  bool propagate_all(std::vector<Var>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (ClauseId c = 0; c < f_.num_clauses(); ++c) {
        Lit unit;
        if (!status(c, unit)) return false;
        if (unit != Lit{}) {
          if (!assign(unit, trail)) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    ClauseId pick = static_cast<ClauseId>(-1);
    std::size_t best = ~std::size_t{0};
    for (ClauseId c = 0; c < f_.num_clauses(); ++c) {
      bool sat = false;
      std::size_t open = 0;
      for (Lit l : f_.clause(c)) {
        if (is_true(l)) {
          sat = true;
          break;
        }
        if (!is_false(l)) ++open;
      }
      if (!sat && open < best) {
        best = open;
        pick = c;
      }
    }
    if (pick == static_cast<ClauseId>(-1)) return true;
    Var v = 0;
    for (Lit l : f_.clause(pick))
      if (value_[l.var()] < 0) {
        v = l.var();
        break;
      }
    for (bool b : {true, false}) {
      std::vector<Var> trail;
      if (assign(Lit::make(v, !b), trail) && search()) return true;
      for (Var u : trail) value_[u] = -1;
    }
    return false;
  }

  const CnfFormula& f_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<ClauseId>> watch_;
};

}  // namespace

bool satisfiable(const CnfFormula& f, std::vector<std::int8_t> fixed) {
  for (std::size_t v = 1; v < fixed.size() && v <= f.num_vars(); ++v)
    if (fixed[v] > 1) throw InvalidInput("satisfiable: assignment value out of range");
  return Dpll(f, std::move(fixed)).run();
}

std::pair<std::vector<Var>, std::vector<Var>> forall_exists_split(const QbfFormula& q) {
  q.check();
  QbfFormula n = q;
  n.normalize_prefix();
  std::vector<Var> xs, ys;
  const auto& p = n.prefix;
  if (p.size() > 2 || (p.size() == 2 && p[0].quantifier != Quantifier::forall))
    throw InvalidInput("expected a forall-exists prefix");
  for (const auto& b : p) {
    auto& dst = b.quantifier == Quantifier::forall ? xs : ys;
    dst.insert(dst.end(), b.vars.begin(), b.vars.end());
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  return {xs, ys};
}

}  // namespace twqbf
