#pragma once

// Reference implementations used as test oracles. None of these share code
// with the engine's matcher, interpreter or parser beyond the graph accessors.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gp2/graph.hpp"
#include "gp2/label.hpp"
#include "gp2/match.hpp"
#include "gp2/parser.hpp"
#include "gp2/program.hpp"
#include "gp2/rule.hpp"

namespace gp2::test {

using EdgeList = std::vector<std::pair<int, int>>;

struct Digraph {
  int n = 0;
  EdgeList edges;
};

inline Digraph random_digraph(std::mt19937_64& rng, int max_nodes, double edge_probability) {
  Digraph d;
  d.n = std::uniform_int_distribution<int>(1, max_nodes)(rng);
  std::bernoulli_distribution coin(edge_probability);
  for (int u = 0; u < d.n; ++u) {
    for (int v = 0; v < d.n; ++v) {
      if (coin(rng)) d.edges.emplace_back(u, v);
    }
  }
  return d;
}

/// Builds a host graph with nodes n0.. (created in order) and unlabelled edges.
inline Graph build(const Digraph& d, std::vector<NodeHandle>* handles = nullptr) {
  Graph g;
  std::vector<NodeHandle> nodes;
  for (int i = 0; i < d.n; ++i) nodes.push_back(g.add_node({}, NodeMark::none, false, "n" + std::to_string(i)));
  int k = 0;
  for (const auto& [u, v] : d.edges) g.add_edge(nodes[u], nodes[v], {}, EdgeMark::none, "e" + std::to_string(k++));
  g.reset_steps();
  if (handles != nullptr) *handles = nodes;
  return g;
}

/// Pairs (u, v) reachable by a path of length >= 1 (Warshall).
inline std::vector<std::vector<bool>> warshall(const Digraph& d) {
  std::vector<std::vector<bool>> r(d.n, std::vector<bool>(d.n, false));
  for (const auto& [u, v] : d.edges) r[u][v] = true;
  for (int k = 0; k < d.n; ++k)
    for (int i = 0; i < d.n; ++i)
      for (int j = 0; j < d.n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

inline bool acyclic(const Digraph& d) {
  std::vector<int> indeg(d.n, 0);
  for (const auto& e : d.edges) ++indeg[e.second];
  std::vector<int> ready;
  for (int i = 0; i < d.n; ++i)
    if (indeg[i] == 0) ready.push_back(i);
  int seen = 0;
  while (!ready.empty()) {
    const int u = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& [a, b] : d.edges) {
      if (a == u && --indeg[b] == 0) ready.push_back(b);
    }
  }
  return seen == d.n;
}

inline bool is_binary_dag(const Digraph& d) {
  std::vector<int> outdeg(d.n, 0);
  for (const auto& e : d.edges) ++outdeg[e.first];
  return std::all_of(outdeg.begin(), outdeg.end(), [](int k) { return k <= 2; }) && acyclic(d);
}

/// Directed rooted tree: n >= 1, n - 1 edges, weakly connected, exactly one
/// node of indegree 0 and all others of indegree 1.
inline bool is_rooted_tree(const Digraph& d) {
  if (d.n < 1 || static_cast<int>(d.edges.size()) != d.n - 1) return false;
  std::vector<int> parent(d.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> indeg(d.n, 0);
  for (const auto& [u, v] : d.edges) {
    ++indeg[v];
    parent[find(u)] = find(v);
  }
  int sources = 0;
  for (int i = 0; i < d.n; ++i) {
    if (find(i) != find(0)) return false;
    if (indeg[i] == 0) ++sources;
    if (indeg[i] > 1) return false;
  }
  return sources == 1;
}

/// Reads back a graph as node index -> name order plus a set of (src, tgt) name pairs.
inline std::multiset<std::pair<std::string, std::string>> edge_pairs(const Graph& g) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (NodeHandle n : g.nodes()) {
    for (EdgeHandle e : g.out_edges(n)) out.emplace(g.node(g.edge(e).source).name, g.node(g.edge(e).target).name);
  }
  return out;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Program load_program(const std::string& name) {
  auto parsed = parse_program(read_text(std::string(GP2_PROGRAMS_DIR) + "/" + name));
  if (!parsed.ok()) {
    std::string message = name + ":";
    for (const auto& d : parsed.diagnostics) message += " " + d.to_string();
    throw std::runtime_error(message);
  }
  return std::move(*parsed.value);
}

inline Program program_from(const std::string& text) {
  auto parsed = parse_program(text);
  if (!parsed.ok()) throw std::runtime_error("bad test program: " + parsed.diagnostics.front().to_string());
  return std::move(*parsed.value);
}

inline Graph host_from(const std::string& text) {
  auto parsed = parse_host_graph(text);
  if (!parsed.ok()) throw std::runtime_error("bad test host: " + parsed.diagnostics.front().to_string());
  return std::move(*parsed.value);
}

// ---------------------------------------------------------------------------
// Morphism oracle

inline std::vector<NodeHandle> live_nodes(const Graph& g) {
  std::vector<NodeHandle> out;
  for (NodeHandle n : g.nodes()) out.push_back(n);
  return out;
}

inline std::vector<EdgeHandle> live_edges(const Graph& g) {
  std::vector<EdgeHandle> out;
  for (NodeHandle n : g.nodes())
    for (EdgeHandle e : g.out_edges(n)) out.push_back(e);
  return out;
}

/// Whether `c` holds, evaluated by scanning every host edge.
inline bool condition_holds(const Graph& g, const Rule& r, const Condition& c, const std::vector<NodeHandle>& image,
                            const Binding& env) {
  switch (c.kind) {
    case Condition::Kind::edge: {
      const NodeHandle s = image[r.lhs.index_of(c.from)];
      const NodeHandle t = image[r.lhs.index_of(c.to)];
      for (EdgeHandle e : live_edges(g))
        if (g.edge(e).source == s && g.edge(e).target == t) return true;
      return false;
    }
    case Condition::Kind::negation: return !condition_holds(g, r, c.operands[0], image, env);
    case Condition::Kind::conjunction:
      return condition_holds(g, r, c.operands[0], image, env) && condition_holds(g, r, c.operands[1], image, env);
    case Condition::Kind::disjunction:
      return condition_holds(g, r, c.operands[0], image, env) || condition_holds(g, r, c.operands[1], image, env);
    case Condition::Kind::list_equal: return instantiate(c.left, env) == instantiate(c.right, env);
    case Condition::Kind::list_not_equal: return instantiate(c.left, env) != instantiate(c.right, env);
  }
  return false;
}

/// Independent validity check of a match against every rule-application
/// requirement: injectivity, incidence, marks, labels, roots, dangling and
/// the condition.
inline bool valid_match(const Graph& g, const Rule& r, const Match& m, MatchMode mode) {
  if (m.nodes.size() != r.lhs.nodes.size() || m.edges.size() != r.lhs.edges.size()) return false;
  std::set<NodeHandle> ns(m.nodes.begin(), m.nodes.end());
  std::set<EdgeHandle> es(m.edges.begin(), m.edges.end());
  if (ns.size() != m.nodes.size() || es.size() != m.edges.size()) return false;
  Binding env;
  for (std::size_t i = 0; i < r.lhs.nodes.size(); ++i) {
    if (!g.contains(m.nodes[i])) return false;
    const Node& n = g.node(m.nodes[i]);
    const RuleNode& p = r.lhs.nodes[i];
    if (n.mark != p.mark) return false;
    if (p.root && !n.is_root) return false;
    if (mode == MatchMode::reflecting && !p.root && n.is_root) return false;
    if (!match_label_into(p.label, n.label, env)) return false;
  }
  for (std::size_t j = 0; j < r.lhs.edges.size(); ++j) {
    if (!g.contains(m.edges[j])) return false;
    const Edge& e = g.edge(m.edges[j]);
    const RuleEdge& p = r.lhs.edges[j];
    if (e.source != m.nodes[r.lhs.index_of(p.source)] || e.target != m.nodes[r.lhs.index_of(p.target)]) return false;
    if (e.mark != p.mark) return false;
    if (!match_label_into(p.label, e.label, env)) return false;
  }
  for (std::size_t i = 0; i < r.lhs.nodes.size(); ++i) {
    if (r.rhs.index_of(r.lhs.nodes[i].id) != kNoIndex &&
        std::find(r.interface.begin(), r.interface.end(), r.lhs.nodes[i].id) != r.interface.end()) {
      continue;
    }
    for (EdgeHandle e : live_edges(g)) {
      const Edge& edge = g.edge(e);
      if ((edge.source == m.nodes[i] || edge.target == m.nodes[i]) && !es.contains(e)) return false;
    }
  }
  if (r.condition && !condition_holds(g, r, *r.condition, m.nodes, env)) return false;
  return true;
}

/// Brute force: tries every injective node assignment and every injective
/// edge assignment. Returns whether some match exists.
inline bool match_exists_brute_force(const Graph& g, const Rule& r, MatchMode mode) {
  const auto hosts = live_nodes(g);
  const auto host_edges = live_edges(g);
  const std::size_t k = r.lhs.nodes.size();
  if (k > hosts.size()) return false;
  Match m;
  m.nodes.assign(k, NodeHandle{});
  m.edges.assign(r.lhs.edges.size(), EdgeHandle{});
  std::vector<bool> used(hosts.size(), false);
  std::vector<bool> used_edge(host_edges.size(), false);

  auto assign_edges = [&](auto&& self, std::size_t j) -> bool {
    if (j == r.lhs.edges.size()) return valid_match(g, r, m, mode);
    const RuleEdge& p = r.lhs.edges[j];
    for (std::size_t h = 0; h < host_edges.size(); ++h) {
      if (used_edge[h]) continue;
      const Edge& e = g.edge(host_edges[h]);
      if (e.source != m.nodes[r.lhs.index_of(p.source)] || e.target != m.nodes[r.lhs.index_of(p.target)]) continue;
      used_edge[h] = true;
      m.edges[j] = host_edges[h];
      if (self(self, j + 1)) return true;
      used_edge[h] = false;
    }
    return false;
  };
  auto assign_nodes = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) return assign_edges(assign_edges, 0);
    for (std::size_t h = 0; h < hosts.size(); ++h) {
      if (used[h]) continue;
      used[h] = true;
      m.nodes[i] = hosts[h];
      if (self(self, i + 1)) return true;
      used[h] = false;
    }
    return false;
  };
  return assign_nodes(assign_nodes, 0);
}

// ---------------------------------------------------------------------------
// Isomorphism of small labelled graphs (names ignored).

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  const auto an = live_nodes(a);
  const auto bn = live_nodes(b);
  using EdgeKey = std::tuple<std::size_t, std::size_t, std::string, int>;
  auto edges_of = [](const Graph& g, const std::vector<NodeHandle>& order, const std::vector<std::size_t>& perm) {
    std::multiset<EdgeKey> out;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (EdgeHandle e : g.out_edges(order[i])) {
        const Edge& edge = g.edge(e);
        const auto t = std::find(order.begin(), order.end(), edge.target) - order.begin();
        out.emplace(perm[i], perm[t], format_label(edge.label), static_cast<int>(edge.mark));
      }
    }
    return out;
  };
  std::vector<std::size_t> identity(an.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  const auto b_edges = edges_of(b, bn, identity);
  std::vector<std::size_t> perm = identity;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < an.size() && ok; ++i) {
      const Node& x = a.node(an[i]);
      const Node& y = b.node(bn[perm[i]]);
      ok = x.label == y.label && x.mark == y.mark && x.is_root == y.is_root;
    }
    if (ok && edges_of(a, an, perm) == b_edges) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace gp2::test
