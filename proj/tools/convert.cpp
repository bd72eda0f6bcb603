#include <iostream>
#include <numeric>
#include <sstream>

#include "commands.hpp"
#include "io.hpp"
#include "twqbf/error.hpp"
#include "twqbf/graph.hpp"
#include "twqbf/problems.hpp"

namespace twqbf::cli {

namespace {

void emit(const ConvertArgs& a, const std::string& text) {
  if (a.output.empty())
    std::cout << text;
  else
    write_text_file(a.output, text);
}

std::string var_line(std::string_view field, const std::vector<Var>& vars) {
  std::ostringstream out;
  out << "c proj " << field;
  for (Var v : vars) out << ' ' << v;
  out << " 0\n";
  return out.str();
}

// Formula to -o, its incidence decomposition to <out>.td, the projection
// certificate to <out>.proj.
int emit_projection(const ConvertArgs& a, const CnfFormula& target, const IncidenceDecomposition& d,
                    Var source_vars) {
  if (a.output.empty()) throw InvalidInput("convert " + a.op + " needs -o");
  std::vector<Var> source(source_vars);
  std::iota(source.begin(), source.end(), Var{1});
  std::vector<Var> fresh;
  for (Var v = source_vars + 1; v <= target.num_vars(); ++v) fresh.push_back(v);
  write_text_file(a.output, write_dimacs(target));
  write_text_file(a.output + ".td", write_td(d.to_graph(target.num_vars()), target.num_vars() + target.num_clauses()));
  write_text_file(a.output + ".proj", var_line("source", source) + var_line("fresh", fresh));
  std::cerr << "width " << d.width() << '\n';
  return kOk;
}

SplitStyle split_style(const std::string& name) {
  if (name == "chain") return SplitStyle::chain;
  if (name == "defined") return SplitStyle::defined;
  throw InvalidInput("unknown split style: " + name);
}

bool looks_like_gr(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    return line.rfind("p tw", 0) == 0;
  }
  return false;
}

}  // namespace

int run_convert(const ConvertArgs& a) {
  const Strategy s = strategy_or_throw(a.strategy);
  if (a.op == "to3cnf") {
    const CnfFormula f = parse_dimacs(read_text_file(a.input));
    const auto d = incidence_for(f, a.td, s);
    FreshVars fresh(f.num_vars());
    const auto cert = to_3cnf(f, d, fresh, split_style(a.style));
    return emit_projection(a, cert.target, cert.decomposition, f.num_vars());
  }
  if (a.op == "negate") {
    const CnfFormula f = parse_dimacs(read_text_file(a.input));
    const auto d = incidence_for(f, a.td, s);
    if (f.max_clause_size() <= 3) {
      FreshVars fresh(f.num_vars());
      const auto cert = negate_projection(f, d, fresh);
      return emit_projection(a, cert.target, cert.decomposition, f.num_vars());
    }
    const DecomposedCnf out = negate_formula(f, d);
    return emit_projection(a, out.formula, out.td, f.num_vars());
  }
  if (a.op == "decompose") {
    const std::string text = read_text_file(a.input);
    Graph g;
    if (looks_like_gr(text)) {
      g = parse_gr(text);
    } else {
      const CnfFormula f = parse_dimacs(text);
      g = a.incidence ? incidence_graph(f) : primal_graph(f);
    }
    const TreeDecomposition d = decompose(g, s);
    emit(a, write_td(d, g.num_vertices()));
    std::cerr << "width " << width(d) << '\n';
    return kOk;
  }
  if (a.op == "nicety") {
    const PaceTd pace = parse_td(read_text_file(a.input));
    const NiceTreeDecomposition nice = make_nice(pace.td);
    if (auto problem = check_nice(nice); !problem.empty()) throw std::logic_error("make_nice: " + problem);
    emit(a, write_td(nice.as_tree_decomposition(), pace.num_vertices));
    std::cerr << "nodes " << nice.size() << " width " << width(pace.td) << '\n';
    return kOk;
  }
  throw InvalidInput("unknown conversion: " + a.op);
}

}  // namespace twqbf::cli
