#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "twqbf/error.hpp"

using namespace twqbf::cli;

namespace {

const std::vector<std::string> kStrategies{"min_fill", "min_degree", "exact_small"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-treewidth QBF solving and reductions"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Decide an instance through its QBF encoding");
  s->add_option("problem", solve.problem, "Problem")
      ->required()
      ->check(CLI::IsMember({"qbf", "af-cred", "af-skept", "abduction", "abduction-subset", "circ", "mus"}));
  s->add_option("input", solve.input, "Instance file")->required();
  s->add_option("--td", solve.td, "Tree decomposition (.td) of the primal or incidence graph");
  s->add_option("--strategy", solve.strategy, "Decomposition heuristic")->check(CLI::IsMember(kStrategies));
  s->add_flag("--oracle", solve.oracle, "Also run the brute-force oracle and compare");
  s->add_option("--max-oracle-vars", solve.max_oracle_vars, "Oracle size cap");
  s->add_option("--set", solve.set, "AF: query arguments (default: the file's query line)");
  s->add_option("--query", solve.query, "Abduction query")
      ->check(CLI::IsMember({"solvable", "relevance", "necessity", "subset-relevance", "subset-necessity"}));
  s->add_option("--hyp", solve.hyp, "Abduction: hypothesis variable");
  s->add_option("--clause", solve.clause, "MUS: 1-based clause of a plain DIMACS input");
  s->add_flag("--no-reduce", solve.no_reduce, "Normalize without dominance reduction");
  s->add_option("--report", solve.report, "Append the JSON report to this file");

  ConvertArgs convert;
  auto* c = app.add_subcommand("convert", "Transform formulas and decompositions");
  c->add_option("op", convert.op, "Conversion")
      ->required()
      ->check(CLI::IsMember({"to3cnf", "negate", "decompose", "nicety"}));
  c->add_option("input", convert.input, "Input file")->required();
  c->add_option("-o,--output", convert.output, "Output file (sidecars use it as prefix)");
  c->add_option("--td", convert.td, "Tree decomposition of the input formula");
  c->add_option("--strategy", convert.strategy, "Decomposition heuristic")->check(CLI::IsMember(kStrategies));
  c->add_option("--style", convert.style, "Clause split style")->check(CLI::IsMember({"chain", "defined"}));
  c->add_flag("--incidence", convert.incidence, "decompose: use the incidence graph of a CNF");

  GenerateArgs generate;
  auto* g = app.add_subcommand("generate", "Build a domain instance from a forall-exists QDIMACS formula");
  g->add_option("kind", generate.kind, "Instance kind")->required()->check(CLI::IsMember({"af", "pap", "circ", "mus"}));
  g->add_option("input", generate.input, "QDIMACS file")->required();
  g->add_option("-o,--output", generate.output, "Instance file")->required();
  g->add_option("--manifest", generate.manifest, "Manifest path (default: <output>.json)");
  g->add_option("--max-oracle-vars", generate.max_oracle_vars, "Brute-force cap for the expected verdict");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Operation counts on scaling families");
  b->add_option("family", bench.family, "Family")->required()->check(CLI::IsMember({"chain", "grid-width-capped"}));
  b->add_option("--sizes", bench.sizes, "Numbers of variables")->delimiter(',');
  b->add_option("--widths", bench.widths, "Widths k")->delimiter(',');
  b->add_option("--reps", bench.reps, "Repetitions per point");
  b->add_option("--seed", bench.seed, "Sign seed");
  b->add_flag("--no-reduce", bench.no_reduce, "Normalize without dominance reduction");
  b->add_option("--report", bench.report, "Append JSON rows to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }

  try {
    if (s->parsed()) return run_solve(solve);
    if (c->parsed()) return run_convert(convert);
    if (g->parsed()) return run_generate(generate);
    if (b->parsed()) return run_bench(bench);
  } catch (const twqbf::ParseError& e) {
    std::cerr << "twqbf: " << e.what() << '\n';
    return kParse;
  } catch (const twqbf::InvalidInput& e) {
    std::cerr << "twqbf: invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const twqbf::CapExceeded& e) {
    std::cerr << "twqbf: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "twqbf: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
