#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "twqbf/error.hpp"
#include "twqbf/graph.hpp"

namespace twqbf::cli {

std::string instance_id(const std::string& path) { return std::filesystem::path(path).filename().string(); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void append_line(const std::string& path, const std::string& line) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + path + " for appending");
  out << line << '\n';
}

IncidenceDecomposition load_incidence(const std::string& path, const CnfFormula& f) {
  const PaceTd pace = parse_td(read_text_file(path));
  const std::size_t nv = f.num_vars();
  IncidenceDecomposition d;
  if (pace.num_vertices == nv) {
    if (auto report = validate(pace.td, primal_graph(f)); !report.ok())
      throw InvalidInput(path + ": not a decomposition of the primal graph: " + report.summary());
    d = incidence_from_primal(pace.td, f);
  } else if (pace.num_vertices == nv + f.num_clauses()) {
    d = IncidenceDecomposition::from_graph(pace.td, f.num_vars(), f.num_clauses());
  } else {
    throw InvalidInput(path + ": " + std::to_string(pace.num_vertices) + " vertices match neither the primal (" +
                       std::to_string(nv) + ") nor the incidence graph (" + std::to_string(nv + f.num_clauses()) +
                       ")");
  }
  if (auto report = validate(d, f); !report.ok())
    throw InvalidInput(path + ": not a decomposition of the formula: " + report.summary());
  return d;
}

IncidenceDecomposition incidence_for(const CnfFormula& f, const std::string& td, Strategy s) {
  return td.empty() ? decompose_incidence(f, s) : load_incidence(td, f);
}

Strategy strategy_or_throw(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) throw InvalidInput("unknown strategy: " + name);
  return *s;
}

}  // namespace twqbf::cli
