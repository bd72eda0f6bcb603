#include "twqbf/treedec.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <tuple>
#include <unordered_map>

#include "twqbf/error.hpp"

namespace twqbf {

std::vector<std::vector<std::uint32_t>> RootedTree::children() const {
  std::vector<std::vector<std::uint32_t>> out(parent.size());
  for (std::uint32_t t = 0; t < parent.size(); ++t)
    if (parent[t] != kNoNode) out[parent[t]].push_back(t);
  return out;
}

std::vector<std::uint32_t> RootedTree::postorder() const {
  std::vector<std::uint32_t> order;
  if (parent.empty()) return order;
  const auto kids = children();
  order.reserve(parent.size());
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [t, next] = stack.back();
    if (next < kids[t].size()) {
      const std::uint32_t c = kids[t][next++];
      stack.emplace_back(c, 0);
    } else {
      order.push_back(t);
      stack.pop_back();
    }
  }
  return order;
}

bool RootedTree::well_formed() const {
  if (parent.empty()) return false;
  if (root >= parent.size() || parent[root] != kNoNode) return false;
  for (std::uint32_t t = 0; t < parent.size(); ++t) {
    if (t != root && (parent[t] == kNoNode || parent[t] >= parent.size())) return false;
  }
  return postorder().size() == parent.size();
}

std::uint32_t TreeDecomposition::add_node(std::uint32_t parent, std::vector<Vertex> bag) {
  if (tree.parent.empty()) tree.root = 0;
  tree.parent.push_back(parent);
  bags.push_back(std::move(bag));
  return static_cast<std::uint32_t>(bags.size() - 1);
}

std::string Violation::describe() const {
  switch (kind) {
    case Kind::not_a_tree:
      return "decomposition is not a rooted tree";
    case Kind::unsorted_bag:
      return "bag of node " + std::to_string(u) + " is not sorted and duplicate-free";
    case Kind::vertex_out_of_range:
      return "node " + std::to_string(u) + " holds unknown vertex " + std::to_string(v);
    case Kind::missing_vertex:
      return "vertex " + std::to_string(u) + " occurs in no bag";
    case Kind::missing_edge:
      return "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag";
    case Kind::disconnected:
      return "bags containing vertex " + std::to_string(u) + " are not connected";
  }
  return {};
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.describe();
  }
  return out;
}

namespace {

bool sorted_unique(const std::vector<Vertex>& bag) {
  for (std::size_t i = 1; i < bag.size(); ++i)
    if (bag[i - 1] >= bag[i]) return false;
  return true;
}

bool contains(const std::vector<Vertex>& bag, Vertex v) {
  return std::binary_search(bag.begin(), bag.end(), v);
}

// Number of nodes containing v whose parent does not; 1 iff connected.
std::vector<std::uint32_t> top_counts(const TreeDecomposition& d, std::size_t n) {
  std::vector<std::uint32_t> tops(n, 0);
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    const std::uint32_t p = d.tree.parent[t];
    for (Vertex v : d.bags[t]) {
      if (v >= n) continue;
      if (p == kNoNode || !contains(d.bags[p], v)) ++tops[v];
    }
  }
  return tops;
}

}  // namespace

ValidationReport validate(const TreeDecomposition& d, const Graph& g) {
  ValidationReport report;
  using K = Violation::Kind;
  if (d.tree.parent.size() != d.bags.size() || !d.tree.well_formed()) {
    report.violations.push_back({K::not_a_tree});
    return report;
  }
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::uint32_t>> where(n);
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    if (!sorted_unique(d.bags[t])) {
      report.violations.push_back({K::unsorted_bag, t});
      return report;
    }
    for (Vertex v : d.bags[t]) {
      if (v >= n) {
        report.violations.push_back({K::vertex_out_of_range, t, v});
      } else {
        where[v].push_back(t);
      }
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (where[v].empty()) report.violations.push_back({K::missing_vertex, v});
  for (auto [u, v] : g.edges()) {
    const auto& a = where[u];
    const auto& b = where[v];
    std::size_t i = 0, j = 0;
    bool found = false;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) {
        found = true;
        break;
      }
      if (a[i] < b[j]) ++i; else ++j;
    }
    if (!found) report.violations.push_back({K::missing_edge, u, v});
  }
  const auto tops = top_counts(d, n);
  for (Vertex v = 0; v < n; ++v)
    if (tops[v] > 1) report.violations.push_back({K::disconnected, v});
  return report;
}

int width(const TreeDecomposition& d) {
  if (d.bags.empty()) throw InvalidInput("width of an empty decomposition");
  std::size_t best = 0;
  for (const auto& bag : d.bags) best = std::max(best, bag.size());
  return static_cast<int>(best) - 1;
}

void check_structure(const TreeDecomposition& d) {
  if (d.tree.parent.size() != d.bags.size() || !d.tree.well_formed())
    throw InvalidInput("decomposition is not a rooted tree");
  Vertex max_vertex = 0;
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    if (!sorted_unique(d.bags[t]))
      throw InvalidInput("bag of node " + std::to_string(t) + " is not sorted and duplicate-free");
    if (!d.bags[t].empty()) max_vertex = std::max(max_vertex, d.bags[t].back());
  }
  const auto tops = top_counts(d, static_cast<std::size_t>(max_vertex) + 1);
  for (Vertex v = 0; v < tops.size(); ++v)
    if (tops[v] > 1) throw InvalidInput("bags containing vertex " + std::to_string(v) + " are not connected");
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "min_fill") return Strategy::min_fill;
  if (name == "min_degree") return Strategy::min_degree;
  if (name == "exact_small") return Strategy::exact_small;
  return std::nullopt;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::min_fill: return "min_fill";
    case Strategy::min_degree: return "min_degree";
    case Strategy::exact_small: return "exact_small";
  }
  return "?";
}

namespace {

class EliminationGraph {
 public:
  explicit EliminationGraph(const Graph& g)
      : adj_(g.num_vertices()), gone_(g.num_vertices(), 0), mark_(g.num_vertices(), 0) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      auto nb = g.neighbors(v);
      adj_[v].assign(nb.begin(), nb.end());
    }
  }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  bool eliminated(Vertex v) const { return gone_[v] != 0; }

  std::size_t fill(Vertex v) const {
    const auto& nb = adj_[v];
    if (nb.size() < 2) return 0;
    ++mark_round_;
    for (Vertex u : nb) mark_[u] = mark_round_;
    std::size_t present = 0;
    for (Vertex u : nb)
      for (Vertex w : adj_[u])
        if (mark_[w] == mark_round_) ++present;
    return nb.size() * (nb.size() - 1) / 2 - present / 2;
  }

  void eliminate(Vertex v) {
    const std::vector<Vertex> nb = adj_[v];
    for (Vertex u : nb) {
      auto& list = adj_[u];
      list.erase(std::lower_bound(list.begin(), list.end(), v));
    }
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        auto& a = adj_[nb[i]];
        auto it = std::lower_bound(a.begin(), a.end(), nb[j]);
        if (it == a.end() || *it != nb[j]) {
          a.insert(it, nb[j]);
          auto& b = adj_[nb[j]];
          b.insert(std::lower_bound(b.begin(), b.end(), nb[i]), nb[i]);
        }
      }
    }
    adj_[v].clear();
    gone_[v] = 1;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint8_t> gone_;
  mutable std::vector<std::uint32_t> mark_;
  mutable std::uint32_t mark_round_ = 0;
};

std::vector<Vertex> greedy_order(const Graph& g, bool use_fill) {
  const std::size_t n = g.num_vertices();
  EliminationGraph eg(g);
  using Key = std::tuple<std::size_t, std::size_t, Vertex>;
  std::set<Key> queue;
  std::vector<Key> key(n);
  auto score = [&](Vertex v) {
    return Key{use_fill ? eg.fill(v) : eg.neighbors(v).size(), eg.neighbors(v).size(), v};
  };
  for (Vertex v = 0; v < n; ++v) {
    key[v] = score(v);
    queue.insert(key[v]);
  }
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t round = 0;
  while (!queue.empty()) {
    const Vertex v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    order.push_back(v);
    const std::vector<Vertex> nb = eg.neighbors(v);
    eg.eliminate(v);
    ++round;
    std::vector<Vertex> touched;
    auto touch = [&](Vertex u) {
      if (stamp[u] != round && !eg.eliminated(u)) {
        stamp[u] = round;
        touched.push_back(u);
      }
    };
    for (Vertex u : nb) {
      touch(u);
      if (use_fill)
        for (Vertex w : eg.neighbors(u)) touch(w);
    }
    for (Vertex u : touched) {
      queue.erase(key[u]);
      key[u] = score(u);
      queue.insert(key[u]);
    }
  }
  return order;
}

class ExactSearch {
 public:
  ExactSearch(const Graph& g, std::vector<Vertex> initial)
      : n_(g.num_vertices()), adj_(n_, 0), best_order_(std::move(initial)) {
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex u : g.neighbors(v)) adj_[v] |= 1u << u;
    best_ = order_width(best_order_);
  }

  std::vector<Vertex> run() {
    if (n_ == 0) return {};
    path_.clear();
    search(0, 0);
    return best_order_;
  }

 private:
  std::uint32_t reach(std::uint32_t eliminated, Vertex v) const {
    std::uint32_t seen = 1u << v, out = 0;
    std::uint32_t frontier = 1u << v;
    while (frontier != 0) {
      const Vertex x = static_cast<Vertex>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      const std::uint32_t m = adj_[x] & ~seen;
      seen |= m;
      out |= m & ~eliminated;
      frontier |= m & eliminated;
    }
    return out;
  }

  int order_width(const std::vector<Vertex>& order) const {
    std::uint32_t eliminated = 0;
    int w = 0;
    for (Vertex v : order) {
      w = std::max(w, std::popcount(reach(eliminated, v)));
      eliminated |= 1u << v;
    }
    return w;
  }

  void search(std::uint32_t eliminated, int current) {
    if (current >= best_) return;
    const int remaining = static_cast<int>(n_) - std::popcount(eliminated);
    if (remaining - 1 <= current) {
      best_ = current;
      best_order_ = path_;
      for (Vertex v = 0; v < n_; ++v)
        if (!(eliminated >> v & 1u)) best_order_.push_back(v);
      return;
    }
    auto [it, inserted] = memo_.try_emplace(eliminated, current);
    if (!inserted) {
      if (it->second <= current) return;
      it->second = current;
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (eliminated >> v & 1u) continue;
      const int degree = std::popcount(reach(eliminated, v));
      const int next = std::max(current, degree);
      if (next >= best_) continue;
      path_.push_back(v);
      search(eliminated | (1u << v), next);
      path_.pop_back();
    }
  }

  std::size_t n_;
  std::vector<std::uint32_t> adj_;
  std::vector<Vertex> best_order_;
  int best_ = 0;
  std::vector<Vertex> path_;
  std::unordered_map<std::uint32_t, int> memo_;
};

}  // namespace

std::vector<Vertex> elimination_order(const Graph& g, Strategy s, DecomposeOptions options) {
  switch (s) {
    case Strategy::min_fill:
      return greedy_order(g, true);
    case Strategy::min_degree:
      return greedy_order(g, false);
    case Strategy::exact_small: {
      const std::size_t cap = std::min<std::size_t>(options.exact_cap, 32);
      if (g.num_vertices() > cap)
        throw CapExceeded("exact_small supports at most " + std::to_string(cap) + " vertices, graph has " +
                          std::to_string(g.num_vertices()));
      ExactSearch search(g, greedy_order(g, true));
      return search.run();
    }
  }
  return {};
}

TreeDecomposition from_elimination_order(const Graph& g, std::span<const Vertex> order) {
  const std::size_t n = g.num_vertices();
  TreeDecomposition d;
  if (n == 0) {
    d.add_node(kNoNode, {});
    return d;
  }
  if (order.size() != n) throw InvalidInput("elimination order is not a permutation of the vertices");
  std::vector<std::uint32_t> position(n, kNoNode);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (order[i] >= n || position[order[i]] != kNoNode)
      throw InvalidInput("elimination order is not a permutation of the vertices");
    position[order[i]] = i;
  }
  EliminationGraph eg(g);
  d.bags.resize(n);
  d.tree.parent.assign(n, kNoNode);
  d.tree.root = static_cast<std::uint32_t>(n - 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Vertex v = order[i];
    std::vector<Vertex> bag = eg.neighbors(v);
    std::uint32_t parent = kNoNode;
    for (Vertex u : bag) parent = std::min(parent, position[u]);
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
    d.bags[i] = std::move(bag);
    if (i + 1 < n) d.tree.parent[i] = parent == kNoNode ? d.tree.root : parent;
    eg.eliminate(v);
  }
  return d;
}

TreeDecomposition decompose(const Graph& g, Strategy s, DecomposeOptions options) {
  const auto order = elimination_order(g, s, options);
  return simplify(from_elimination_order(g, order));
}

TreeDecomposition simplify(const TreeDecomposition& d) {
  check_structure(d);
  const auto kids = d.tree.children();
  std::vector<std::uint32_t> preorder{d.tree.root};
  for (std::size_t i = 0; i < preorder.size(); ++i)
    for (std::uint32_t c : kids[preorder[i]]) preorder.push_back(c);

  std::vector<std::vector<Vertex>> bags = d.bags;
  std::vector<std::uint32_t> rep(d.size(), kNoNode);
  rep[d.tree.root] = d.tree.root;
  for (std::size_t i = 1; i < preorder.size(); ++i) {
    const std::uint32_t c = preorder[i];
    const std::uint32_t p = rep[d.tree.parent[c]];
    if (std::includes(bags[p].begin(), bags[p].end(), bags[c].begin(), bags[c].end())) {
      rep[c] = p;
    } else if (std::includes(bags[c].begin(), bags[c].end(), bags[p].begin(), bags[p].end())) {
      bags[p] = bags[c];
      rep[c] = p;
    } else {
      rep[c] = c;
    }
  }
  TreeDecomposition out;
  std::vector<std::uint32_t> fresh(d.size(), kNoNode);
  for (std::uint32_t t : preorder) {
    if (rep[t] != t) continue;
    const std::uint32_t parent = t == d.tree.root ? kNoNode : fresh[rep[d.tree.parent[t]]];
    fresh[t] = out.add_node(parent, bags[t]);
  }
  out.tree.root = 0;
  return out;
}

TreeDecomposition binarize(const TreeDecomposition& d) {
  check_structure(d);
  TreeDecomposition out = d;
  const auto kids = d.tree.children();
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    const auto& cs = kids[t];
    if (cs.size() <= 2) continue;
    std::uint32_t attach = t;
    for (std::size_t i = 1; i + 1 < cs.size(); ++i) {
      const std::uint32_t copy = out.add_node(attach, d.bags[t]);
      out.tree.parent[cs[i]] = copy;
      attach = copy;
    }
    out.tree.parent[cs.back()] = attach;
  }
  return out;
}

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::leaf: return "leaf";
    case NodeKind::introduce: return "introduce";
    case NodeKind::forget: return "forget";
    case NodeKind::join: return "join";
  }
  return "?";
}

TreeDecomposition NiceTreeDecomposition::as_tree_decomposition() const {
  TreeDecomposition d;
  d.bags = bags;
  d.tree.parent.assign(nodes.size(), kNoNode);
  for (std::uint32_t t = 0; t < nodes.size(); ++t)
    for (std::uint32_t c : nodes[t].child)
      if (c != kNoNode) d.tree.parent[c] = t;
  d.tree.root = nodes.empty() ? 0 : root();
  return d;
}

namespace {

class NiceBuilder {
 public:
  std::uint32_t add(NodeKind kind, Vertex v, std::uint32_t c0, std::uint32_t c1, std::vector<Vertex> bag) {
    NiceNode node;
    node.kind = kind;
    node.vertex = v;
    node.child = {c0, c1};
    out.nodes.push_back(node);
    out.bags.push_back(std::move(bag));
    return static_cast<std::uint32_t>(out.nodes.size() - 1);
  }

  std::uint32_t leaf() { return add(NodeKind::leaf, 0, kNoNode, kNoNode, {}); }

  std::uint32_t transition(std::uint32_t from, const std::vector<Vertex>& target) {
    std::vector<Vertex> bag = out.bags[from];
    std::vector<Vertex> drop, gain;
    std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(), std::back_inserter(drop));
    std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(), std::back_inserter(gain));
    for (Vertex v : drop) {
      bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
      from = add(NodeKind::forget, v, from, kNoNode, bag);
    }
    for (Vertex v : gain) {
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      from = add(NodeKind::introduce, v, from, kNoNode, bag);
    }
    return from;
  }

  NiceTreeDecomposition out;
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& d) {
  check_structure(d);
  NiceBuilder b;
  const auto kids = d.tree.children();
  std::vector<std::uint32_t> top(d.size(), kNoNode);
  for (std::uint32_t t : d.tree.postorder()) {
    std::uint32_t acc = kNoNode;
    for (std::uint32_t c : kids[t]) {
      const std::uint32_t sub = b.transition(top[c], d.bags[t]);
      acc = acc == kNoNode ? sub : b.add(NodeKind::join, 0, acc, sub, d.bags[t]);
    }
    if (acc == kNoNode) acc = b.transition(b.leaf(), d.bags[t]);
    top[t] = acc;
  }
  b.transition(top[d.tree.root], {});
  return std::move(b.out);
}

std::string check_nice(const NiceTreeDecomposition& d) {
  if (d.nodes.empty()) return "empty decomposition";
  if (d.bags.size() != d.nodes.size()) return "bag count differs from node count";
  std::vector<std::uint32_t> parents(d.size(), 0);
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    const auto& node = d.nodes[t];
    const auto& bag = d.bags[t];
    if (!sorted_unique(bag)) return "node " + std::to_string(t) + " has an unsorted bag";
    const std::uint32_t c0 = node.child[0], c1 = node.child[1];
    for (std::uint32_t c : node.child) {
      if (c == kNoNode) continue;
      if (c >= t) return "node " + std::to_string(t) + " precedes its child";
      ++parents[c];
    }
    const std::string at = "node " + std::to_string(t) + " (" + std::string(to_string(node.kind)) + ")";
    switch (node.kind) {
      case NodeKind::leaf:
        if (c0 != kNoNode || c1 != kNoNode) return at + " has children";
        if (!bag.empty()) return at + " has a nonempty bag";
        break;
      case NodeKind::introduce:
      case NodeKind::forget: {
        if (c0 == kNoNode || c1 != kNoNode) return at + " needs exactly one child";
        std::vector<Vertex> expect = d.bags[c0];
        auto it = std::lower_bound(expect.begin(), expect.end(), node.vertex);
        const bool present = it != expect.end() && *it == node.vertex;
        if (node.kind == NodeKind::introduce) {
          if (present) return at + " introduces a vertex already present";
          expect.insert(it, node.vertex);
        } else {
          if (!present) return at + " forgets an absent vertex";
          expect.erase(it);
        }
        if (expect != bag) return at + " has an inconsistent bag";
        break;
      }
      case NodeKind::join:
        if (c0 == kNoNode || c1 == kNoNode) return at + " needs two children";
        if (d.bags[c0] != bag || d.bags[c1] != bag) return at + " has children with different bags";
        break;
    }
  }
  for (std::uint32_t t = 0; t + 1 < d.size(); ++t)
    if (parents[t] != 1) return "node " + std::to_string(t) + " does not have exactly one parent";
  if (parents.back() != 0) return "root has a parent";
  if (!d.bags.back().empty()) return "root bag is not empty";
  return {};
}

PaceTd parse_td(std::string_view text) {
  detail::LineCursor cursor{text};
  std::string_view line;
  bool have_header = false;
  std::size_t num_bags = 0, max_bag = 0;
  PaceTd out;
  std::vector<std::uint8_t> seen;
  std::vector<std::vector<std::uint32_t>> adj;
  std::size_t edge_count = 0;
  while (cursor.next(line)) {
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    const std::size_t ln = cursor.line_no;
    if (!have_header) {
      if (tokens.size() != 5 || tokens[0] != "s" || tokens[1] != "td")
        throw ParseError(ln, "malformed header, expected 's td <bags> <max bag> <vertices>'");
      const long long b = detail::parse_int(tokens[2], ln);
      const long long w = detail::parse_int(tokens[3], ln);
      const long long nv = detail::parse_int(tokens[4], ln);
      if (b < 0 || w < 0 || nv < 0) throw ParseError(ln, "negative counts in header");
      num_bags = static_cast<std::size_t>(b);
      max_bag = static_cast<std::size_t>(w);
      out.num_vertices = static_cast<std::size_t>(nv);
      out.td.bags.resize(num_bags);
      seen.assign(num_bags, 0);
      adj.resize(num_bags);
      have_header = true;
      continue;
    }
    if (tokens[0] == "b") {
      if (tokens.size() < 2) throw ParseError(ln, "bag line without id");
      const long long id = detail::parse_int(tokens[1], ln);
      if (id < 1 || id > static_cast<long long>(num_bags)) throw ParseError(ln, "bag id out of range");
      if (seen[id - 1]) throw ParseError(ln, "bag " + std::to_string(id) + " defined twice");
      seen[id - 1] = 1;
      auto& bag = out.td.bags[id - 1];
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        const long long v = detail::parse_int(tokens[i], ln);
        if (v < 1 || v > static_cast<long long>(out.num_vertices))
          throw ParseError(ln, "vertex " + std::to_string(v) + " out of range");
        bag.push_back(static_cast<Vertex>(v - 1));
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      continue;
    }
    if (tokens.size() != 2) throw ParseError(ln, "expected a tree edge '<id> <id>'");
    const long long a = detail::parse_int(tokens[0], ln);
    const long long b = detail::parse_int(tokens[1], ln);
    if (a < 1 || b < 1 || a > static_cast<long long>(num_bags) || b > static_cast<long long>(num_bags) || a == b)
      throw ParseError(ln, "tree edge endpoint out of range");
    adj[a - 1].push_back(static_cast<std::uint32_t>(b - 1));
    adj[b - 1].push_back(static_cast<std::uint32_t>(a - 1));
    ++edge_count;
  }
  if (!have_header) throw ParseError(0, "missing 's td' header");
  for (std::size_t i = 0; i < num_bags; ++i)
    if (!seen[i]) throw ParseError(0, "bag " + std::to_string(i + 1) + " is never defined");
  std::size_t actual_max = 0;
  for (const auto& bag : out.td.bags) actual_max = std::max(actual_max, bag.size());
  if (actual_max != max_bag)
    throw ParseError(0, "header declares max bag size " + std::to_string(max_bag) + ", found " +
                            std::to_string(actual_max));
  if (num_bags == 0) return out;
  if (edge_count != num_bags - 1) throw ParseError(0, "tree edges do not form a tree");
  auto& parent = out.td.tree.parent;
  parent.assign(num_bags, kNoNode);
  out.td.tree.root = 0;
  std::vector<std::uint8_t> visited(num_bags, 0);
  std::vector<std::uint32_t> queue{0};
  visited[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::uint32_t u : adj[queue[i]]) {
      if (visited[u]) continue;
      visited[u] = 1;
      parent[u] = queue[i];
      queue.push_back(u);
    }
  }
  if (queue.size() != num_bags) throw ParseError(0, "tree edges do not form a tree");
  return out;
}

std::string write_td(const TreeDecomposition& d, std::size_t num_vertices) {
  std::size_t max_bag = 0;
  for (const auto& bag : d.bags) max_bag = std::max(max_bag, bag.size());
  std::string out = "s td " + std::to_string(d.size()) + ' ' + std::to_string(max_bag) + ' ' +
                    std::to_string(num_vertices) + '\n';
  for (std::size_t t = 0; t < d.size(); ++t) {
    std::vector<Vertex> bag = d.bags[t];
    std::sort(bag.begin(), bag.end());
    out += "b " + std::to_string(t + 1);
    for (Vertex v : bag) out += ' ' + std::to_string(v + 1);
    out += '\n';
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t t = 0; t < d.size(); ++t) {
    const std::uint32_t p = d.tree.parent[t];
    if (p != kNoNode) edges.emplace_back(std::min(p, t) + 1, std::max(p, t) + 1);
  }
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) out += std::to_string(a) + ' ' + std::to_string(b) + '\n';
  return out;
}

}  // namespace twqbf
