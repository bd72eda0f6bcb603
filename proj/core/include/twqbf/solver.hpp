#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twqbf/choice.hpp"
#include "twqbf/qbf.hpp"
#include "twqbf/treedec.hpp"

namespace twqbf {

struct SolveOptions {
  Strategy strategy = Strategy::min_fill;
  DecomposeOptions decompose;
  /// Stop at the first constraint whose scope empties with value false.
  bool early_exit = true;
  /// Passed to ChoiceOptions::reduce.
  bool reduce = true;
  /// Consider decompositions carried by the formula.
  bool use_hints = true;
  unsigned max_arity = 24;
};

struct SolveStats {
  std::string decomposition;  // "strategy", "primal-hint", "incidence-hint" or "3cnf"
  int width = -1;             // primal width of the decomposition used
  std::size_t vars = 0;
  std::size_t clauses = 0;
  std::size_t blocks = 0;
  std::size_t aux_vars = 0;  // variables added by the 3CNF split
  std::uint64_t forget_nodes = 0;
  std::uint64_t max_forget_ops = 0;
  bool early_exit = false;
  ChoiceStats choice;
};

struct SolveResult {
  bool value = false;
  SolveStats stats;
};

/// Decides a closed QBF by dynamic programming over choice constraints along
/// a nice tree decomposition of the primal graph. Wide clauses may be split
/// first when that lowers the primal width; the split variables join the
/// innermost existential block.
SolveResult chen_solve(const QbfFormula& q, const SolveOptions& options = {});

/// Same, along the given decomposition of primal_graph(q.matrix).
SolveResult chen_solve(const QbfFormula& q, const TreeDecomposition& primal, const SolveOptions& options = {});

/// One choice constraint per clause, after checking that each clause lies in
/// a bag of `primal`.
std::vector<ChoiceConstraint> build_choice_constraints(const QbfFormula& q, const TreeDecomposition& primal,
                                                       ChoiceSystem& system);

ChoiceSystem make_choice_system(const QbfFormula& q, ChoiceOptions options = {});

}  // namespace twqbf
