#include "twqbf/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "twqbf/error.hpp"

namespace twqbf {

OccurrenceLists::OccurrenceLists(std::size_t num_vars, std::span<const Clause> clauses)
    : by_var_(num_vars), by_clause_(clauses.size()) {
  for (ClauseId c = 0; c < clauses.size(); ++c) {
    auto& centries = by_clause_[c];
    centries.reserve(clauses[c].size());
    for (std::uint32_t p = 0; p < clauses[c].size(); ++p) {
      const Lit lit = clauses[c][p];
      auto& ventries = by_var_[lit.var()];
      centries.push_back({lit.var(), lit.negative(),
                          static_cast<std::uint32_t>(ventries.size()), p});
      ventries.push_back({c, lit.negative(), static_cast<std::uint32_t>(centries.size() - 1)});
      ++edges_;
    }
  }
}

// Swap-with-last removal; the moved entry's twin gets its mirror index fixed.
void OccurrenceLists::erase_from_var(Var v, std::uint32_t index) {
  auto& ventries = by_var_[v];
  const VarEntry victim = ventries[index];
  auto& centries = by_clause_[victim.clause];
  const std::uint32_t cindex = victim.mirror;

  if (index + 1 != ventries.size()) {
    ventries[index] = ventries.back();
    by_clause_[ventries[index].clause][ventries[index].mirror].mirror = index;
  }
  ventries.pop_back();

  if (cindex + 1 != centries.size()) {
    centries[cindex] = centries.back();
    by_var_[centries[cindex].var][centries[cindex].mirror].mirror = cindex;
  }
  centries.pop_back();
  --edges_;
}

void OccurrenceLists::erase_from_clause(ClauseId c, std::uint32_t index) {
  const ClauseEntry& e = by_clause_[c][index];
  erase_from_var(e.var, e.mirror);
}

bool OccurrenceLists::mirrors_consistent() const {
  std::size_t count = 0;
  for (Var v = 0; v < by_var_.size(); ++v) {
    for (std::uint32_t i = 0; i < by_var_[v].size(); ++i) {
      const auto& e = by_var_[v][i];
      if (e.clause >= by_clause_.size()) return false;
      const auto& twin_list = by_clause_[e.clause];
      if (e.mirror >= twin_list.size()) return false;
      const auto& twin = twin_list[e.mirror];
      if (twin.var != v || twin.mirror != i || twin.negative != e.negative) return false;
      ++count;
    }
  }
  std::size_t ccount = 0;
  for (const auto& list : by_clause_) ccount += list.size();
  return count == edges_ && ccount == edges_;
}

ClauseId CnfFormula::add_clause(std::span<const Lit> lits) {
  Clause merged;
  merged.reserve(lits.size());
  for (Lit lit : lits) {
    if (lit.var() == 0) throw std::invalid_argument("literal with variable index 0");
    bool seen = false;
    for (Lit other : merged) {
      if (other == lit) {
        seen = true;
        break;
      }
      if (other == ~lit) {
        throw std::invalid_argument("tautological clause (variable " +
                                    std::to_string(lit.var()) + " occurs in both polarities)");
      }
    }
    if (!seen) merged.push_back(lit);
    ensure_vars(lit.var());
  }
  clauses_.push_back(std::move(merged));
  return static_cast<ClauseId>(clauses_.size() - 1);
}

std::size_t CnfFormula::total_literals() const {
  std::size_t total = 0;
  for (const auto& c : clauses_) total += c.size();
  return total;
}

std::size_t CnfFormula::max_clause_size() const {
  std::size_t best = 0;
  for (const auto& c : clauses_) best = std::max(best, c.size());
  return best;
}

std::vector<Var> CnfFormula::occurring_vars() const {
  std::vector<std::uint8_t> seen(num_vars_ + 1, 0);
  for (const auto& c : clauses_)
    for (Lit l : c) seen[l.var()] = 1;
  std::vector<Var> out;
  for (Var v = 1; v <= num_vars_; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

bool CnfFormula::satisfied_by(std::span<const std::uint8_t> assignment) const {
  for (const auto& c : clauses_) {
    bool sat = false;
    for (Lit l : c) {
      if (l.eval(assignment[l.var()] != 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace detail {

bool LineCursor::next(std::string_view& line) {
  if (pos >= text.size()) return false;
  const std::size_t end = text.find('\n', pos);
  const std::size_t stop = end == std::string_view::npos ? text.size() : end;
  line = text.substr(pos, stop - pos);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  pos = stop + 1;
  ++line_no;
  return true;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view token, std::size_t line_no) {
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line_no, "expected an integer, found '" + std::string(token) + "'");
  }
  return value;
}

DimacsHeader parse_header(std::string_view line, std::size_t line_no) {
  const auto tokens = split_ws(line);
  if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf") {
    throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
  }
  const long long nv = parse_int(tokens[2], line_no);
  const long long nc = parse_int(tokens[3], line_no);
  if (nv < 0 || nc < 0 || nv > 0x7fffffffLL) {
    throw ParseError(line_no, "malformed header, negative or oversized counts");
  }
  return {static_cast<Var>(nv), static_cast<std::size_t>(nc)};
}

}  // namespace detail

namespace {

bool is_comment(std::string_view line) {
  return !line.empty() && line.front() == 'c' && (line.size() == 1 || line[1] == ' ' || line[1] == '\t');
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) { return detail::parse_dimacs_with(text, {}); }

CnfFormula detail::parse_dimacs_with(std::string_view text, const LineHook& hook) {
  detail::LineCursor cursor{text};
  std::string_view line;
  CnfFormula f;
  bool have_header = false;
  detail::DimacsHeader header;
  std::vector<Lit> pending;
  std::size_t pending_line = 0;

  while (cursor.next(line)) {
    if (is_comment(line)) {
      f.comments().emplace_back(line.size() > 2 ? line.substr(2) : std::string_view{});
      continue;
    }
    if (is_blank(line)) continue;
    if (!have_header) {
      header = detail::parse_header(line, cursor.line_no);
      f.ensure_vars(header.num_vars);
      have_header = true;
      continue;
    }
    if (line.front() == '%') break;  // SATLIB trailer
    if (hook && hook(line, cursor.line_no, f.num_clauses() > 0 || !pending.empty())) continue;
    for (auto token : detail::split_ws(line)) {
      const long long value = detail::parse_int(token, cursor.line_no);
      if (value == 0) {
        if (f.num_clauses() == header.num_clauses) {
          throw ParseError(cursor.line_no, "more clauses than declared (" +
                                               std::to_string(header.num_clauses) + ")");
        }
        try {
          f.add_clause(pending);
        } catch (const std::invalid_argument& e) {
          throw ParseError(pending_line, e.what());
        }
        pending.clear();
        continue;
      }
      const long long index = value < 0 ? -value : value;
      if (index > static_cast<long long>(header.num_vars)) {
        throw ParseError(cursor.line_no, "literal " + std::to_string(value) +
                                             " exceeds declared variable count " +
                                             std::to_string(header.num_vars));
      }
      if (pending.empty()) pending_line = cursor.line_no;
      pending.push_back(Lit::from_dimacs(static_cast<std::int32_t>(value)));
    }
  }
  if (!have_header) throw ParseError(0, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(0, "last clause is not terminated by 0");
  if (f.num_clauses() != header.num_clauses) {
    throw ParseError(0, "clause count mismatch: header declares " +
                            std::to_string(header.num_clauses) + ", found " +
                            std::to_string(f.num_clauses()));
  }
  return f;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CnfFormula read_dimacs_file(const std::string& path) { return parse_dimacs(read_text_file(path)); }

std::string write_dimacs(const CnfFormula& f, DimacsWriteOptions options) {
  std::string out;
  if (options.comments) {
    for (const auto& c : f.comments()) {
      out += c.empty() ? "c" : "c " + c;
      out += '\n';
    }
  }
  out += "p cnf " + std::to_string(f.num_vars()) + ' ' + std::to_string(f.num_clauses()) + '\n';
  for (const auto& clause : f.clauses()) {
    for (Lit l : clause) {
      out += std::to_string(l.dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

}  // namespace twqbf
