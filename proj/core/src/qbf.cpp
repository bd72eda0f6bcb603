#include "twqbf/qbf.hpp"

#include <algorithm>

#include "twqbf/error.hpp"

namespace twqbf {

std::string_view to_string(Quantifier q) { return q == Quantifier::exists ? "e" : "a"; }

std::vector<std::uint32_t> QbfFormula::level_of() const {
  Var hi = matrix.num_vars();
  for (const auto& block : prefix)
    for (Var v : block.vars) hi = std::max(hi, v);
  std::vector<std::uint32_t> level(hi + 1, kUnquantified);
  for (std::uint32_t i = 0; i < prefix.size(); ++i)
    for (Var v : prefix[i].vars) level[v] = i + 1;
  return level;
}

void QbfFormula::normalize_prefix() {
  std::vector<QuantifierBlock> merged;
  for (auto& block : prefix) {
    if (block.vars.empty()) continue;
    if (!merged.empty() && merged.back().quantifier == block.quantifier) {
      merged.back().vars.insert(merged.back().vars.end(), block.vars.begin(), block.vars.end());
    } else {
      merged.push_back(std::move(block));
    }
  }
  prefix = std::move(merged);
}

void QbfFormula::check() const {
  const Var n = matrix.num_vars();
  std::vector<std::uint8_t> bound(n + 1, 0);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const auto& block = prefix[i];
    if (block.vars.empty()) throw InvalidInput("empty quantifier block " + std::to_string(i + 1));
    if (i > 0 && prefix[i - 1].quantifier == block.quantifier)
      throw InvalidInput("adjacent blocks " + std::to_string(i) + " and " + std::to_string(i + 1) +
                         " share a quantifier");
    for (Var v : block.vars) {
      if (v == 0 || v > n) throw InvalidInput("quantified variable " + std::to_string(v) + " out of range");
      if (bound[v]) throw InvalidInput("variable " + std::to_string(v) + " is quantified twice");
      bound[v] = 1;
    }
  }
  for (const auto& clause : matrix.clauses())
    for (Lit l : clause)
      if (!bound[l.var()]) throw InvalidInput("free variable " + std::to_string(l.var()));
}

std::size_t QbfFormula::num_quantified() const {
  std::size_t total = 0;
  for (const auto& block : prefix) total += block.vars.size();
  return total;
}

QbfFormula parse_qdimacs(std::string_view text) {
  struct Pending {
    QuantifierBlock block;
    std::size_t line;
  };
  std::vector<Pending> blocks;
  auto hook = [&](std::string_view line, std::size_t line_no, bool clauses_started) {
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || (tokens[0] != "a" && tokens[0] != "e")) return false;
    if (clauses_started) throw ParseError(line_no, "quantifier line after clauses");
    if (tokens.size() < 2 || tokens.back() != "0")
      throw ParseError(line_no, "quantifier line is not terminated by 0");
    Pending p{{tokens[0] == "a" ? Quantifier::forall : Quantifier::exists, {}}, line_no};
    for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
      const long long v = detail::parse_int(tokens[i], line_no);
      if (v <= 0) throw ParseError(line_no, "quantified variables must be positive");
      p.block.vars.push_back(static_cast<Var>(v));
    }
    if (p.block.vars.empty()) throw ParseError(line_no, "empty quantifier block");
    blocks.push_back(std::move(p));
    return true;
  };
  QbfFormula q;
  q.matrix = detail::parse_dimacs_with(text, hook);
  const Var n = q.matrix.num_vars();
  std::vector<std::uint8_t> bound(n + 1, 0);
  for (const auto& p : blocks) {
    for (Var v : p.block.vars) {
      if (v > n)
        throw ParseError(p.line, "quantified variable " + std::to_string(v) + " exceeds declared variable count");
      if (bound[v]) throw ParseError(p.line, "variable " + std::to_string(v) + " is quantified twice");
      bound[v] = 1;
    }
    q.prefix.push_back(p.block);
  }
  for (const auto& clause : q.matrix.clauses())
    for (Lit l : clause)
      if (!bound[l.var()]) throw ParseError(0, "free variable " + std::to_string(l.var()) + " in the matrix");
  q.normalize_prefix();
  return q;
}

QbfFormula read_qdimacs_file(const std::string& path) { return parse_qdimacs(read_text_file(path)); }

std::string write_qdimacs(const QbfFormula& q, DimacsWriteOptions options) {
  const std::string body = write_dimacs(q.matrix, options);
  const auto header_end = body.find('\n', body.find("p cnf")) + 1;
  std::string out = body.substr(0, header_end);
  for (const auto& block : q.prefix) {
    out += to_string(block.quantifier);
    for (Var v : block.vars) out += ' ' + std::to_string(v);
    out += " 0\n";
  }
  out += body.substr(header_end);
  return out;
}

namespace {

class Expander {
 public:
  Expander(const QbfFormula& q) : q_(q), value_(q.matrix.num_vars() + 1, -1) {
    for (const auto& block : q.prefix)
      for (Var v : block.vars) order_.emplace_back(v, block.quantifier);
  }

  bool run(std::size_t i) {
    const int status = matrix_status();
    if (status >= 0) return status == 1;
    const auto [v, quant] = order_[i];
    for (std::int8_t b : {std::int8_t{0}, std::int8_t{1}}) {
      value_[v] = b;
      const bool r = run(i + 1);
      value_[v] = -1;
      if (quant == Quantifier::exists && r) return true;
      if (quant == Quantifier::forall && !r) return false;
    }
    return quant == Quantifier::forall;
  }

 private:
  // 1: every clause satisfied, 0: some clause falsified, -1: undecided.
  int matrix_status() const {
    bool open = false;
    for (const auto& clause : q_.matrix.clauses()) {
      bool sat = false, unknown = false;
      for (Lit l : clause) {
        const std::int8_t v = value_[l.var()];
        if (v < 0)
          unknown = true;
        else if (l.eval(v != 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (!unknown) return 0;
      open = true;
    }
    return open ? -1 : 1;
  }

  const QbfFormula& q_;
  std::vector<std::int8_t> value_;
  std::vector<std::pair<Var, Quantifier>> order_;
};

}  // namespace

bool brute_force_eval(const QbfFormula& q, BruteForceOptions options) {
  q.check();
  if (q.num_quantified() > options.cap)
    throw CapExceeded("brute force limited to " + std::to_string(options.cap) + " variables, formula has " +
                      std::to_string(q.num_quantified()));
  return Expander(q).run(0);
}

}  // namespace twqbf
