#pragma once

#include <string>
#include <vector>

#include "twqbf/cnf.hpp"
#include "twqbf/transform.hpp"
#include "twqbf/treedec.hpp"

namespace twqbf::cli {

std::string instance_id(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
/// Appends one line to `path` when non-empty.
void append_line(const std::string& path, const std::string& line);

/// A .td file read as a decomposition of the primal graph (one vertex per
/// variable) or of the incidence graph (variables, then clauses), told
/// apart by its vertex count.
IncidenceDecomposition load_incidence(const std::string& path, const CnfFormula& f);
IncidenceDecomposition incidence_for(const CnfFormula& f, const std::string& td, Strategy s);

Strategy strategy_or_throw(const std::string& name);

}  // namespace twqbf::cli
