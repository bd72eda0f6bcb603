#include "random_instances.hpp"

#include <algorithm>
#include <stdexcept>

namespace twqbf::testing {

Clause random_clause(Rng& rng, Var num_vars, std::size_t size) {
  std::vector<Var> pool(num_vars);
  for (Var v = 0; v < num_vars; ++v) pool[v] = v + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  Clause c;
  for (std::size_t i = 0; i < size && i < pool.size(); ++i)
    c.push_back(Lit::make(pool[i], std::bernoulli_distribution(0.5)(rng)));
  return c;
}

CnfFormula random_cnf(Rng& rng, Var num_vars, std::size_t num_clauses, std::size_t min_size,
                      std::size_t max_size) {
  CnfFormula f(num_vars);
  std::uniform_int_distribution<std::size_t> size(min_size, max_size);
  for (std::size_t i = 0; i < num_clauses; ++i) f.add_clause(random_clause(rng, num_vars, size(rng)));
  return f;
}

CnfFormula random_banded_cnf(Rng& rng, Var num_vars, std::size_t num_clauses, std::size_t window,
                             std::size_t min_size, std::size_t max_size) {
  CnfFormula f(num_vars);
  window = std::min<std::size_t>(window, num_vars);
  std::uniform_int_distribution<Var> start(0, num_vars - static_cast<Var>(window));
  std::uniform_int_distribution<std::size_t> size(min_size, std::min(max_size, window));
  for (std::size_t i = 0; i < num_clauses; ++i) {
    const Var offset = start(rng);
    Clause c = random_clause(rng, static_cast<Var>(window), size(rng));
    for (Lit& l : c) l = Lit::make(l.var() + offset, l.negative());
    f.add_clause(c);
  }
  return f;
}

Graph random_graph(Rng& rng, std::size_t n, double edge_probability) {
  std::vector<Edge> edges;
  std::bernoulli_distribution coin(edge_probability);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

QbfFormula random_qbf(Rng& rng, Var num_vars, std::size_t num_clauses, std::size_t min_size,
                      std::size_t max_size, const std::vector<Quantifier>& pattern, std::size_t window) {
  QbfFormula q;
  q.matrix = window > 0 ? random_banded_cnf(rng, num_vars, num_clauses, window, min_size, max_size)
                        : random_cnf(rng, num_vars, num_clauses, min_size, max_size);
  std::vector<Var> order(num_vars);
  for (Var v = 0; v < num_vars; ++v) order[v] = v + 1;
  std::shuffle(order.begin(), order.end(), rng);
  q.prefix.clear();
  for (Quantifier quant : pattern) q.prefix.push_back({quant, {}});
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t b = i < pattern.size() ? i : rng() % pattern.size();
    q.prefix[b].vars.push_back(order[i]);
  }
  for (auto& block : q.prefix) std::sort(block.vars.begin(), block.vars.end());
  q.normalize_prefix();
  return q;
}

std::vector<Clause> all_clauses(Var n, std::size_t max_width) {
  std::vector<Clause> out;
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    std::vector<Var> vars;
    for (Var v = 1; v <= n; ++v)
      if (subset >> (v - 1) & 1u) vars.push_back(v);
    if (vars.size() > max_width) continue;
    for (std::uint32_t signs = 0; signs < (1u << vars.size()); ++signs) {
      Clause c;
      for (std::size_t i = 0; i < vars.size(); ++i) c.push_back(Lit::make(vars[i], (signs >> i) & 1u));
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::uint8_t> assignment_from_mask(std::uint64_t mask, Var num_vars) {
  std::vector<std::uint8_t> a(num_vars + 1, 0);
  for (Var v = 1; v <= num_vars; ++v) a[v] = (mask >> (v - 1)) & 1u;
  return a;
}

std::vector<std::uint64_t> models(const CnfFormula& f) {
  if (f.num_vars() > 26) throw std::invalid_argument("too many variables to enumerate");
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << f.num_vars();
  for (std::uint64_t m = 0; m < total; ++m) {
    bool ok = true;
    for (const auto& clause : f.clauses()) {
      bool sat = false;
      for (Lit l : clause) {
        if (l.eval(((m >> (l.var() - 1)) & 1u) != 0)) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(m);
  }
  return out;
}

std::vector<std::uint64_t> projected_models(const CnfFormula& target, Var source_vars) {
  const std::uint64_t keep = source_vars >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << source_vars) - 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t m : models(target)) out.push_back(m & keep);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool dpll(const CnfFormula& f, std::vector<std::int8_t>& a) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& clause : f.clauses()) {
      bool sat = false;
      std::size_t open = 0;
      Lit last{};
      for (Lit l : clause) {
        const std::int8_t v = a[l.var()];
        if (v < 0) {
          ++open;
          last = l;
        } else if (l.eval(v != 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (open == 0) return false;
      if (open == 1) {
        a[last.var()] = last.negative() ? 0 : 1;
        changed = true;
      }
    }
  }
  for (const auto& clause : f.clauses()) {
    bool sat = false;
    Lit pick{};
    for (Lit l : clause) {
      const std::int8_t v = a[l.var()];
      if (v < 0) {
        if (pick == Lit{}) pick = l;
      } else if (l.eval(v != 0)) {
        sat = true;
        break;
      }
    }
    if (sat) continue;
    for (std::int8_t value : {std::int8_t{1}, std::int8_t{0}}) {
      auto copy = a;
      copy[pick.var()] = value;
      if (dpll(f, copy)) return true;
    }
    return false;
  }
  return true;
}

}  // namespace

bool extendable(const CnfFormula& f, std::vector<std::int8_t> fixed) {
  fixed.resize(std::max<std::size_t>(fixed.size(), f.num_vars() + 1), -1);
  return dpll(f, fixed);
}

std::vector<std::uint64_t> projection(const CnfFormula& f, std::span<const Var> source) {
  if (source.size() > 24) throw std::invalid_argument("too many source variables to enumerate");
  Var hi = f.num_vars();
  for (Var v : source) hi = std::max(hi, v);
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << source.size()); ++m) {
    std::vector<std::int8_t> fixed(hi + 1, -1);
    for (std::size_t i = 0; i < source.size(); ++i) fixed[source[i]] = static_cast<std::int8_t>((m >> i) & 1u);
    if (extendable(f, std::move(fixed))) out.push_back(m);
  }
  return out;
}

}  // namespace twqbf::testing
