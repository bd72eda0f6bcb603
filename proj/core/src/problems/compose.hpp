#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twqbf/cnf.hpp"
#include "twqbf/qbf.hpp"
#include "twqbf/transform.hpp"
#include "twqbf/treedec.hpp"

namespace twqbf::detail {

/// Tree with variable bags over the base variables of an encoding; clauses
/// are placed on it afterwards.
struct Carrier {
  RootedTree tree;
  std::vector<std::vector<Var>> vars;

  std::size_t size() const { return vars.size(); }
  std::uint32_t add_node(std::uint32_t parent, std::vector<Var> bag);
  /// Adds v to every bag holding `anchor`, or to the root if there is none.
  void shadow(Var anchor, Var v);
  int width() const;

  /// Incidence decomposition of f. Clause c goes to the nodes fixed[c] when
  /// that list is non-empty, else to a new leaf below the first bag holding
  /// all its variables, else to the smallest subtree touching each of them.
  IncidenceDecomposition place(const CnfFormula& f, std::span<const std::vector<std::uint32_t>> fixed = {}) const;
};

/// Carrier copied from an incidence decomposition: copy j maps variable v to
/// maps[j][v] (0 drops it) and clause c keeps its nodes.
struct CopiedCarrier {
  Carrier carrier;
  std::vector<std::vector<std::uint32_t>> clause_nodes;
};
CopiedCarrier copy_carrier(const IncidenceDecomposition& d, std::size_t num_clauses,
                           std::span<const std::vector<Var>> maps);

/// Boolean combinations of base clause sets over one tree. A term is a 3CNF
/// body whose variables are base variables or variables fixed by the
/// accumulated definitions; every base assignment extends uniquely (up to
/// auxiliaries that no body mentions) to the definitions, so a term denotes
/// a function of the base variables and can be negated again.
class Composer {
 public:
  using Term = DecomposedCnf;

  /// `base` is over variables 1..base_vars; `d` decomposes it.
  Composer(const CnfFormula& base, const IncidenceDecomposition& d, Var base_vars);

  Term clauses(std::span<const ClauseId> ids) const;
  Term truth() const;
  Term conj(const Term& a, const Term& b) const;
  Term conj(std::span<const Term> terms) const;
  Term neg(const Term& t);
  Term disj(const Term& a, const Term& b);

  /// Definitions plus body; the body is a projection of the result.
  DecomposedCnf finish(const Term& body) const;
  Var highest() const { return fresh_.highest(); }
  Var base_vars() const { return base_vars_; }

 private:
  Term empty() const;

  Var base_vars_;
  FreshVars fresh_;
  ProjectionCertificate split_;
  DecomposedCnf defs_;
};

struct SidecarLine {
  std::size_t line_no;
  std::vector<std::string_view> args;  // tokens after "c <tag>"
};
/// Comment lines of the form "c <tag> ..." in file order.
std::vector<SidecarLine> sidecar_lines(std::string_view text, std::string_view tag);
/// Drops comments starting with "<tag> " (as stored by parse_dimacs).
void strip_sidecar(CnfFormula& f, std::string_view tag);
/// Parses the variable list of a sidecar line; a trailing 0 is allowed.
std::vector<Var> sidecar_vars(const SidecarLine& line, std::size_t first, Var num_vars);

/// DIMACS text of f with the given sidecar lines just before the header.
std::string write_with_sidecar(const CnfFormula& f, std::string_view lines);
/// "c <tag> <field> v1 ... vk 0" followed by a newline.
std::string sidecar_var_line(std::string_view tag, std::string_view field, std::span<const Var> vars);

/// Closed QBF from a finished matrix: the given blocks for the base
/// variables, every other variable in the innermost existential block.
QbfFormula close_over(const DecomposedCnf& matrix, std::vector<QuantifierBlock> blocks);

}  // namespace twqbf::detail
