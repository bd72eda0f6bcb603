#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twqbf/cnf.hpp"
#include "twqbf/graph.hpp"
#include "twqbf/qbf.hpp"
#include "twqbf/solver.hpp"
#include "twqbf/transform.hpp"
#include "twqbf/treedec.hpp"

namespace twqbf {

/// A QBF whose truth answers a domain question, possibly negated.
struct DomainQbf {
  QbfFormula qbf;
  bool negated = false;  // the answer is the negation of the QBF's value
};

struct DomainResult {
  bool value = false;
  SolveStats stats;
  std::size_t qbf_vars = 0;
  std::size_t qbf_clauses = 0;
};

DomainResult solve_domain(const DomainQbf& q, const SolveOptions& options = {});

// ---------------------------------------------------------------------------
// Abstract argumentation

using Argument = std::uint32_t;

class ArgumentationFramework {
 public:
  /// Throws InvalidInput on a duplicate name.
  Argument add_argument(std::string name);
  /// Throws InvalidInput on an unknown argument; duplicates are merged.
  void add_attack(Argument attacker, Argument target);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Argument a) const { return names_[a]; }
  std::optional<Argument> find(std::string_view name) const;
  /// Sorted, without duplicates.
  const std::vector<std::pair<Argument, Argument>>& attacks() const { return attacks_; }
  bool attacks(Argument a, Argument b) const;
  /// Attacks as undirected edges; self-attacks are dropped.
  Graph graph() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<Argument, Argument>> attacks_;
};

/// Line format: "arg <name>", "att <attacker> <target>", optional
/// "query <name>..." lines; '#' starts a comment line.
struct AfDocument {
  ArgumentationFramework framework;
  std::vector<Argument> query;
};
AfDocument parse_af(std::string_view text);
std::string write_af(const AfDocument& doc);

/// Variable of "a is in the set" and of "a is attacked by the set".
inline Var af_member_var(Argument a) { return a + 1; }
inline Var af_attacked_var(std::size_t num_args, Argument a) { return static_cast<Var>(num_args) + a + 1; }

/// Models restricted to the member variables are the admissible sets. The
/// decomposition is built from `d`, a decomposition of F.graph(): each
/// bag keeps x_a and P_a for its arguments and the clause defining P_a,
/// every other clause hangs below as a leaf. Width at most 3k+2.
DecomposedCnf encode_admissible(const ArgumentationFramework& f, const TreeDecomposition& d);
inline int admissible_width_bound(int k) { return 3 * k + 2; }

DomainQbf credulous_qbf(const ArgumentationFramework& f, const std::vector<Argument>& s,
                        const TreeDecomposition& d);
DomainQbf skeptical_qbf(const ArgumentationFramework& f, const std::vector<Argument>& s,
                        const TreeDecomposition& d);

/// Some admissible (equivalently, preferred) set contains s.
bool credulous(const ArgumentationFramework& f, const std::vector<Argument>& s, const SolveOptions& options = {});
/// Every preferred set contains s.
bool skeptical(const ArgumentationFramework& f, const std::vector<Argument>& s, const SolveOptions& options = {});

struct OracleOptions {
  std::size_t cap = 16;
};
using ArgumentSet = std::vector<Argument>;
/// Preferred extensions by enumeration, each sorted, in ascending order.
std::vector<ArgumentSet> af_oracle(const ArgumentationFramework& f, OracleOptions options = {});
bool af_admissible(const ArgumentationFramework& f, const ArgumentSet& s);
bool af_credulous_oracle(const ArgumentationFramework& f, const ArgumentSet& s, OracleOptions options = {});
bool af_skeptical_oracle(const ArgumentationFramework& f, const ArgumentSet& s, OracleOptions options = {});

// ---------------------------------------------------------------------------
// Propositional abduction

struct PapInstance {
  CnfFormula theory;          // over variables 1..theory.num_vars()
  std::vector<Var> hypotheses;     // ascending
  std::vector<Var> manifestations; // ascending

  /// Throws InvalidInput if H or M leave 1..num_vars or repeat.
  void check() const;
};

/// DIMACS with "c pap h <var>..." and "c pap m <var>..." lines before the
/// clauses; lines may repeat and accumulate.
PapInstance parse_pap(std::string_view text);
std::string write_pap(const PapInstance& p);

enum class AbductionQuery { solvable, relevance, necessity, subset_relevance, subset_necessity };
std::string_view to_string(AbductionQuery q);
std::optional<AbductionQuery> parse_abduction_query(std::string_view name);

/// A solution is S within H such that T and S are consistent and entail M.
/// relevance/necessity: h lies in some / every solution; the subset_ forms
/// ask the same about subset-minimal solutions. `h` is ignored for
/// solvability.
DomainQbf abduction_qbf(const PapInstance& p, AbductionQuery query, Var h,
                        const std::optional<IncidenceDecomposition>& d = std::nullopt);
bool abduction(const PapInstance& p, AbductionQuery query, Var h = 0, const SolveOptions& options = {});
/// Restricted to the subset_ queries.
bool abduction_subset(const PapInstance& p, AbductionQuery query, Var h, const SolveOptions& options = {});

struct PapOracleOptions {
  std::size_t max_hypotheses = 14;
  std::size_t max_vars = 24;
};
struct PapSolutions {
  std::vector<std::vector<Var>> solutions;  // each ascending, in mask order
  std::vector<std::vector<Var>> minimal;
};
PapSolutions pap_oracle(const PapInstance& p, PapOracleOptions options = {});
bool abduction_oracle(const PapInstance& p, AbductionQuery query, Var h, PapOracleOptions options = {});

// ---------------------------------------------------------------------------
// Circumscription

struct CircumscriptionInstance {
  CnfFormula theory;
  std::vector<Var> p, q, z;  // each ascending
  CnfFormula query;          // F

  Var num_vars() const { return std::max(theory.num_vars(), query.num_vars()); }
  /// Throws InvalidInput unless P, Q, Z are disjoint and cover every
  /// variable occurring in T or F.
  void check() const;
};

/// DIMACS for T with "c circ p|q|z <var>..." lines and one "c circ f
/// <lit>... 0" line per clause of F. Variables listed nowhere that occur in
/// no clause are ignored; unlisted occurring ones are an error.
CircumscriptionInstance parse_circ(std::string_view text);
std::string write_circ(const CircumscriptionInstance& c);

DomainQbf circumscription_qbf(const CircumscriptionInstance& c,
                              const std::optional<IncidenceDecomposition>& d = std::nullopt);
/// Every (P,Q,Z)-minimal model of T satisfies F.
bool circumscription_entails(const CircumscriptionInstance& c, const SolveOptions& options = {});

struct CircOracleOptions {
  std::size_t max_vars = 22;
};
/// Minimal models as masks (bit v-1 for variable v), ascending.
std::vector<std::uint64_t> circ_oracle(const CircumscriptionInstance& c, CircOracleOptions options = {});
bool circumscription_oracle(const CircumscriptionInstance& c, CircOracleOptions options = {});

// ---------------------------------------------------------------------------
// Minimal unsatisfiable subsets

struct MusQuery {
  CnfFormula formula;
  ClauseId clause = 0;  // 0-based

  void check() const;
};

/// DIMACS with a "c mus clause <id>" line naming the clause by its 1-based
/// position.
MusQuery parse_mus(std::string_view text);
std::string write_mus(const MusQuery& q);

DomainQbf mus_qbf(const MusQuery& q, const std::optional<IncidenceDecomposition>& d = std::nullopt);
/// Whether the clause belongs to some minimal unsatisfiable subset.
bool mus_membership(const MusQuery& q, const SolveOptions& options = {});

struct MusOracleOptions {
  std::size_t max_clauses = 16;
  std::size_t max_vars = 20;
};
/// Every MUS as ascending clause ids, ordered by subset mask.
std::vector<std::vector<ClauseId>> mus_oracle(const CnfFormula& f, MusOracleOptions options = {});
bool mus_membership_oracle(const MusQuery& q, MusOracleOptions options = {});

/// Satisfiability by DPLL with unit propagation; `fixed` (indexed by
/// variable, -1 free) pins values when non-empty.
bool satisfiable(const CnfFormula& f, std::vector<std::int8_t> fixed = {});

/// The negation of a CNF of any clause width as a projection onto
/// 1..f.num_vars(): wide clauses are split with defined variables first, so
/// every assignment of f's variables extends to a model exactly when it
/// falsifies f. Keeps the tree of `d`.
DecomposedCnf negate_formula(const CnfFormula& f, const IncidenceDecomposition& d);

// ---------------------------------------------------------------------------
// Instances from forall-exists QBFs

/// The forall and exists variables of a closed formula whose normalized
/// prefix is forall-exists, forall, exists or empty; throws InvalidInput
/// otherwise.
std::pair<std::vector<Var>, std::vector<Var>> forall_exists_split(const QbfFormula& q);

struct GeneratedAf {
  AfDocument doc;  // query = {phi}
  TreeDecomposition decomposition;  // of doc.framework.graph()
};
/// Every preferred set contains "phi" iff the QBF is true. From a primal
/// decomposition of width k the framework gets one of width at most 2k+3.
GeneratedAf generate_af_from_qbf(const QbfFormula& q, const TreeDecomposition& primal);
GeneratedAf generate_af_from_qbf(const QbfFormula& q);
inline int generated_af_width_bound(int k) { return std::max(2 * k + 3, 3); }

/// Solvable iff the QBF is false.
PapInstance generate_pap_from_qbf(const QbfFormula& q);
/// Every minimal model (P = all variables, Q = Z = empty) satisfies F = (-u)
/// iff the QBF is true.
CircumscriptionInstance generate_circ_from_qbf(const QbfFormula& q);

struct GeneratedMus {
  MusQuery query;  // the clause (w)
  TreeDecomposition decomposition;  // primal, of query.formula
};
/// The clause (w) lies in a MUS iff the QBF is false. Primal width at most k+1.
GeneratedMus generate_mus_from_qbf(const QbfFormula& q, const TreeDecomposition& primal);
GeneratedMus generate_mus_from_qbf(const QbfFormula& q);

}  // namespace twqbf
