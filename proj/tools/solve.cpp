#include <chrono>
#include <functional>
#include <iostream>
#include <optional>

#include "json.hpp"

#include "commands.hpp"
#include "io.hpp"
#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"
#include "twqbf/qbf.hpp"
#include "twqbf/solver.hpp"

namespace twqbf::cli {

namespace {

using json = nlohmann::ordered_json;

struct Route {
  bool value = false;
  SolveStats stats;
  std::size_t qbf_vars = 0;
  std::size_t qbf_clauses = 0;
  int input_width = -1;
};

// The oracle runs only when asked; it returns its verdict or throws CapExceeded.
struct Plan {
  std::function<Route()> route;
  std::function<bool()> oracle;
};

Route from_domain(const DomainQbf& dq, const SolveOptions& options, int input_width) {
  const DomainResult r = solve_domain(dq, options);
  return {r.value, r.stats, r.qbf_vars, r.qbf_clauses, input_width};
}

Plan plan_qbf(const SolveArgs& a, const SolveOptions& options) {
  auto q = std::make_shared<QbfFormula>(parse_qdimacs(read_text_file(a.input)));
  Plan p;
  p.route = [q, a, options]() {
    SolveResult r;
    if (a.td.empty()) {
      r = chen_solve(*q, options);
    } else {
      const PaceTd pace = parse_td(read_text_file(a.td));
      if (pace.num_vertices == q->matrix.num_vars()) {
        r = chen_solve(*q, pace.td, options);
      } else {
        q->incidence_hint = load_incidence(a.td, q->matrix);
        r = chen_solve(*q, options);
      }
    }
    return Route{r.value, r.stats, q->matrix.num_vars(), q->matrix.num_clauses(), r.stats.width};
  };
  p.oracle = [q, a]() { return brute_force_eval(*q, {.cap = a.max_oracle_vars}); };
  return p;
}

std::vector<Argument> af_set(const AfDocument& doc, const SolveArgs& a) {
  if (a.set.empty()) return doc.query;
  std::vector<Argument> s;
  for (const auto& name : a.set) {
    auto arg = doc.framework.find(name);
    if (!arg) throw InvalidInput("unknown argument: " + name);
    s.push_back(*arg);
  }
  return s;
}

Plan plan_af(const SolveArgs& a, const SolveOptions& options, bool skeptical_mode) {
  auto doc = std::make_shared<AfDocument>(parse_af(read_text_file(a.input)));
  const auto s = af_set(*doc, a);
  Plan p;
  p.route = [doc, s, a, options, skeptical_mode]() {
    const Graph g = doc->framework.graph();
    TreeDecomposition d;
    if (a.td.empty()) {
      d = decompose(g, options.strategy, options.decompose);
    } else {
      PaceTd pace = parse_td(read_text_file(a.td));
      if (pace.num_vertices != g.num_vertices())
        throw InvalidInput(a.td + ": expected " + std::to_string(g.num_vertices()) + " vertices");
      if (auto report = validate(pace.td, g); !report.ok())
        throw InvalidInput(a.td + ": not a decomposition of the attack graph: " + report.summary());
      d = std::move(pace.td);
    }
    const auto& f = doc->framework;
    const DomainQbf dq = skeptical_mode ? skeptical_qbf(f, s, d) : credulous_qbf(f, s, d);
    return from_domain(dq, options, width(d));
  };
  p.oracle = [doc, s, a, skeptical_mode]() {
    const OracleOptions o{.cap = a.max_oracle_vars};
    return skeptical_mode ? af_skeptical_oracle(doc->framework, s, o) : af_credulous_oracle(doc->framework, s, o);
  };
  return p;
}

AbductionQuery abduction_query(const SolveArgs& a, bool subset) {
  const std::string name = !a.query.empty() ? a.query : subset ? "subset-relevance" : "solvable";
  auto q = parse_abduction_query(name);
  if (!q) throw InvalidInput("unknown abduction query: " + name);
  if (subset && *q != AbductionQuery::subset_relevance && *q != AbductionQuery::subset_necessity)
    throw InvalidInput("abduction-subset takes subset-relevance or subset-necessity");
  return *q;
}

Plan plan_abduction(const SolveArgs& a, const SolveOptions& options, bool subset) {
  auto pap = std::make_shared<PapInstance>(parse_pap(read_text_file(a.input)));
  const AbductionQuery query = abduction_query(a, subset);
  Plan p;
  p.route = [pap, query, a, options]() {
    const auto d = incidence_for(pap->theory, a.td, options.strategy);
    return from_domain(abduction_qbf(*pap, query, a.hyp, d), options, d.width());
  };
  p.oracle = [pap, query, a]() {
    PapOracleOptions o;
    o.max_vars = a.max_oracle_vars;
    o.max_hypotheses = std::min(o.max_hypotheses, a.max_oracle_vars);
    return abduction_oracle(*pap, query, a.hyp, o);
  };
  return p;
}

Plan plan_circ(const SolveArgs& a, const SolveOptions& options) {
  auto c = std::make_shared<CircumscriptionInstance>(parse_circ(read_text_file(a.input)));
  Plan p;
  p.route = [c, a, options]() {
    CnfFormula both = c->theory;
    both.ensure_vars(c->num_vars());
    for (const auto& clause : c->query.clauses()) both.add_clause(clause);
    const auto d = incidence_for(both, a.td, options.strategy);
    return from_domain(circumscription_qbf(*c, d), options, d.width());
  };
  p.oracle = [c, a]() { return circumscription_oracle(*c, {.max_vars = a.max_oracle_vars}); };
  return p;
}

Plan plan_mus(const SolveArgs& a, const SolveOptions& options) {
  auto q = std::make_shared<MusQuery>();
  if (a.clause != 0) {
    q->formula = parse_dimacs(read_text_file(a.input));
    q->clause = a.clause - 1;
  } else {
    *q = parse_mus(read_text_file(a.input));
  }
  q->check();
  Plan p;
  p.route = [q, a, options]() {
    const auto d = incidence_for(q->formula, a.td, options.strategy);
    return from_domain(mus_qbf(*q, d), options, d.width());
  };
  p.oracle = [q, a]() {
    MusOracleOptions o;
    o.max_vars = a.max_oracle_vars;
    return mus_membership_oracle(*q, o);
  };
  return p;
}

Plan make_plan(const SolveArgs& a, const SolveOptions& options) {
  if (a.problem == "qbf") return plan_qbf(a, options);
  if (a.problem == "af-cred") return plan_af(a, options, false);
  if (a.problem == "af-skept") return plan_af(a, options, true);
  if (a.problem == "abduction") return plan_abduction(a, options, false);
  if (a.problem == "abduction-subset") return plan_abduction(a, options, true);
  if (a.problem == "circ") return plan_circ(a, options);
  if (a.problem == "mus") return plan_mus(a, options);
  throw InvalidInput("unknown problem: " + a.problem);
}

}  // namespace

int run_solve(const SolveArgs& a) {
  SolveOptions options;
  options.strategy = strategy_or_throw(a.strategy);
  options.reduce = !a.no_reduce;
  const Plan plan = make_plan(a, options);

  const auto start = std::chrono::steady_clock::now();
  const Route r = plan.route();
  const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json report{
      {"instance", instance_id(a.input)},
      {"problem", a.problem},
      {"verdict", r.value},
      {"width", r.stats.width},
      {"input_width", r.input_width},
      {"strategy", a.strategy},
      {"decomposition", r.stats.decomposition},
      {"counters",
       {{"joins", r.stats.choice.joins},
        {"normalizations", r.stats.choice.normalizations},
        {"forgets", r.stats.choice.forgets},
        {"ops", r.stats.choice.ops},
        {"forget_nodes", r.stats.forget_nodes},
        {"max_forget_ops", r.stats.max_forget_ops}}},
      {"qbf_vars", r.qbf_vars},
      {"qbf_clauses", r.qbf_clauses},
      {"wall_ms", wall_ms},
      {"oracle", nullptr},
  };

  int code = kOk;
  if (a.oracle) {
    try {
      const bool expected = plan.oracle();
      report["oracle"] = expected;
      if (expected != r.value) code = kDisagreement;
    } catch (const CapExceeded& e) {
      report["oracle"] = "cap";
      std::cerr << "twqbf: " << e.what() << '\n';
      code = kCap;
    }
  }

  std::cout << "RESULT " << a.problem << ' ' << (r.value ? "true" : "false") << '\n';
  const std::string line = report.dump();
  std::cout << line << '\n';
  append_line(a.report, line);
  if (code == kDisagreement) std::cerr << "twqbf: oracle disagrees with the solver\n";
  return code;
}

}  // namespace twqbf::cli
