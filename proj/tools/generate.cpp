#include <iostream>

#include "commands.hpp"
#include "io.hpp"
#include "json.hpp"
#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"
#include "twqbf/qbf.hpp"

namespace twqbf::cli {

int run_generate(const GenerateArgs& a) {
  if (a.output.empty()) throw InvalidInput("generate needs -o");
  const QbfFormula q = parse_qdimacs(read_text_file(a.input));
  forall_exists_split(q);

  nlohmann::ordered_json psi = "unknown";
  if (q.matrix.num_vars() <= a.max_oracle_vars) psi = brute_force_eval(q, {.cap = a.max_oracle_vars});

  nlohmann::ordered_json manifest{{"source", instance_id(a.input)}, {"kind", a.kind}, {"instance", a.output}};
  // Whether the generated instance answers yes when psi is true.
  bool same = true;
  std::string td_path;
  if (a.kind == "af") {
    const GeneratedAf g = generate_af_from_qbf(q);
    write_text_file(a.output, write_af(g.doc));
    td_path = a.output + ".td";
    write_text_file(td_path, write_td(g.decomposition, g.doc.framework.size()));
    manifest["problem"] = "af-skept";
    manifest["query"] = "phi";
    manifest["arguments"] = g.doc.framework.size();
    manifest["width"] = width(g.decomposition);
  } else if (a.kind == "pap") {
    const PapInstance p = generate_pap_from_qbf(q);
    write_text_file(a.output, write_pap(p));
    manifest["problem"] = "abduction";
    manifest["query"] = "solvable";
    manifest["vars"] = p.theory.num_vars();
    same = false;
  } else if (a.kind == "circ") {
    const CircumscriptionInstance c = generate_circ_from_qbf(q);
    write_text_file(a.output, write_circ(c));
    manifest["problem"] = "circ";
    manifest["query"] = "entails";
    manifest["vars"] = c.num_vars();
  } else if (a.kind == "mus") {
    const GeneratedMus g = generate_mus_from_qbf(q);
    write_text_file(a.output, write_mus(g.query));
    td_path = a.output + ".td";
    write_text_file(td_path, write_td(g.decomposition, g.query.formula.num_vars()));
    manifest["problem"] = "mus";
    manifest["query"] = g.query.clause + 1;
    manifest["vars"] = g.query.formula.num_vars();
    manifest["width"] = width(g.decomposition);
    same = false;
  } else {
    throw InvalidInput("unknown generator: " + a.kind);
  }
  manifest["td"] = td_path.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(td_path);
  manifest["psi"] = psi;
  manifest["expected"] = psi.is_boolean() ? nlohmann::ordered_json(psi.get<bool>() == same) : psi;

  const std::string path = a.manifest.empty() ? a.output + ".json" : a.manifest;
  write_text_file(path, manifest.dump(2) + "\n");
  std::cout << manifest.dump() << '\n';
  return kOk;
}

}  // namespace twqbf::cli
