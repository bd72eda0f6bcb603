#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twqbf/cnf.hpp"
#include "twqbf/treedec.hpp"

namespace twqbf {

/// Tree decomposition of an incidence graph with variables and clauses kept
/// in separate, sorted lists per node. Formulas that are combined with
/// conjoin share one RootedTree.
struct IncidenceDecomposition {
  RootedTree tree;
  std::vector<std::vector<Var>> vars;
  std::vector<std::vector<ClauseId>> clauses;

  std::size_t size() const { return vars.size(); }
  std::uint32_t add_node(std::uint32_t parent, std::vector<Var> node_vars, std::vector<ClauseId> node_clauses);
  /// Largest |vars| + |clauses| minus one.
  int width() const;

  /// Graph view with the numbering of incidence_graph.
  TreeDecomposition to_graph(Var num_vars) const;
  static IncidenceDecomposition from_graph(const TreeDecomposition& d, Var num_vars, std::size_t num_clauses);

  /// Each bag's variables plus the variables of its clauses; a tree
  /// decomposition of the primal graph.
  TreeDecomposition to_primal(const CnfFormula& f) const;

  friend bool operator==(const IncidenceDecomposition&, const IncidenceDecomposition&) = default;
};

/// Validity against incidence_graph(f); declared variables that occur in no
/// clause need not appear in any bag.
ValidationReport validate(const IncidenceDecomposition& d, const CnfFormula& f);

IncidenceDecomposition decompose_incidence(const CnfFormula& f, Strategy s, DecomposeOptions options = {});

/// Hangs each clause below a bag holding all its variables; width at most k+1
/// for a primal decomposition of width k.
IncidenceDecomposition incidence_from_primal(const TreeDecomposition& primal, const CnfFormula& f);

/// Nice form in which, between two bags, clauses leave before variables.
IncidenceDecomposition make_nice(const IncidenceDecomposition& d, const CnfFormula& f);

/// Every node has at most two children, joins repeat their bag, and each
/// tree edge adds or removes at most one element; the root holds at most one.
bool is_nice_shape(const IncidenceDecomposition& d);

IncidenceDecomposition binarize(const IncidenceDecomposition& d);

/// Allocates fresh variables above every index in use and records a name for
/// each. One session is shared by all transforms building one formula.
class FreshVars {
 public:
  explicit FreshVars(Var highest_used) : next_(highest_used + 1) {}

  Var make(std::string_view tag);
  Var next() const { return next_; }
  Var highest() const { return next_ - 1; }
  const std::vector<std::pair<Var, std::string>>& symbols() const { return symbols_; }
  std::string_view name(Var v) const;

 private:
  Var next_;
  std::vector<std::pair<Var, std::string>> symbols_;
};

struct DecomposedCnf {
  CnfFormula formula;
  IncidenceDecomposition td;
};

/// target has source_vars among its variables and its models restricted to
/// them are the intended source models.
struct ProjectionCertificate {
  std::vector<Var> source_vars;
  CnfFormula target;
  IncidenceDecomposition decomposition;
  std::vector<Var> fresh;  // variables introduced by the transform
  std::size_t work = 0;    // elementary steps, for scaling checks
  /// to_3cnf only: the target clause standing for each source clause; every
  /// other target clause defines a fresh variable.
  std::vector<ClauseId> image;

  DecomposedCnf decomposed() const { return {target, decomposition}; }
};

/// chain: each fresh variable only links two parts of a split clause.
/// defined: each fresh variable is defined as the disjunction of the two
/// literals it replaces, so every assignment of the source variables extends
/// uniquely to the fresh ones and the image clauses then carry the source
/// clauses' truth values.
enum class SplitStyle { chain, defined };

/// Splits clauses longer than 3 along the decomposition. Clauses of length at
/// most 3 are copied first, in order. A decomposition that is not of nice
/// shape is made nice first; for nice-shaped input the output keeps the tree
/// and its width is at most to_3cnf_width_bound(k, style).
ProjectionCertificate to_3cnf(const CnfFormula& f, const IncidenceDecomposition& d, FreshVars& fresh,
                              SplitStyle style = SplitStyle::chain);

/// A defined split emits three clauses over the variables of each chain clause.
inline int to_3cnf_width_bound(int k, SplitStyle style = SplitStyle::chain) {
  return style == SplitStyle::chain ? 4 * k + 7 : 3 * (4 * k + 8) - 1;
}

/// o <-> f for a 3CNF f: every assignment of f's variables extends to a
/// model and every model sets `output` to the truth value of f. Keeps the
/// tree; for binary trees the width is at most 15k+24.
struct Reified {
  CnfFormula formula;
  IncidenceDecomposition td;
  Lit output;
  std::vector<Var> fresh;
};
Reified reify(const CnfFormula& f3, const IncidenceDecomposition& d, FreshVars& fresh);

inline int reify_width_bound(int k) { return 15 * k + 24; }

/// The negation of f3 as a projection: reify plus the unit clause on the
/// negated output at the root.
ProjectionCertificate negate_projection(const CnfFormula& f3, const IncidenceDecomposition& d, FreshVars& fresh);

/// Conjunction over a shared tree. Every variable used by both sides must
/// share at least one node. Clauses of b follow those of a.
DecomposedCnf conjoin(const DecomposedCnf& a, const DecomposedCnf& b);

enum class SubsetMode { subseteq, strict };

/// X <= Y (or X < Y) pointwise as a projection. Bags come from `carrier`
/// restricted to X and Y; each pair must share a node of the carrier.
ProjectionCertificate subset_constraint(std::span<const Var> x, std::span<const Var> y, SubsetMode mode,
                                        const IncidenceDecomposition& carrier, FreshVars& fresh);

/// Adds `guard` to every clause and its variable to every bag.
DecomposedCnf disjoin_literal(const DecomposedCnf& d, Lit guard);

/// Adds v to every bag.
void spread_var(IncidenceDecomposition& d, Var v);

/// Appends a clause as a new leaf; variables missing near the leaf are routed
/// along the tree path to their nearest occurrence.
ClauseId attach_clause(DecomposedCnf& d, std::span<const Lit> clause);

/// Renames variables through `map` (map[v] is the image of v, 0 keeps v).
DecomposedCnf rename_vars(const DecomposedCnf& d, std::span<const Var> map);

/// The tree of d with bag variables filtered by `keep` and no clauses.
template <typename Keep>
IncidenceDecomposition restrict_vars(const IncidenceDecomposition& d, Keep keep) {
  IncidenceDecomposition out;
  out.tree = d.tree;
  out.vars.resize(d.size());
  out.clauses.resize(d.size());
  for (std::size_t t = 0; t < d.size(); ++t)
    for (Var v : d.vars[t])
      if (keep(v)) out.vars[t].push_back(v);
  return out;
}

}  // namespace twqbf
