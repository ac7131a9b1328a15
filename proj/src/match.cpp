#include "gp2/match.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gp2/error.hpp"

namespace gp2 {

std::string_view to_string(MatchMode mode) noexcept {
  return mode == MatchMode::preserving ? "preserving" : "reflecting";
}

std::optional<MatchMode> parse_match_mode(std::string_view name) noexcept {
  if (name == "preserving") return MatchMode::preserving;
  if (name == "reflecting") return MatchMode::reflecting;
  return std::nullopt;
}

SearchPlan build_search_plan(const Rule& rule, MatchMode mode) {
  GP2_CHECK(rule.resolved, "build_search_plan: rule " + rule.name + " is not resolved");
  const auto& lhs = rule.lhs;
  const std::size_t n = lhs.nodes.size();

  std::vector<std::size_t> component(n);
  std::iota(component.begin(), component.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return component[x] == x ? x : component[x] = find(component[x]);
  };
  for (const auto& e : lhs.edges) component[find(e.source_index)] = find(e.target_index);

  SearchPlan plan;
  plan.mode = mode;
  std::vector<bool> bound(n, false);
  std::vector<bool> planned(lhs.edges.size(), false);

  for (std::size_t seed = 0; seed < n; ++seed) {
    if (bound[seed]) continue;
    std::size_t start = seed;
    for (std::size_t i = seed; i < n; ++i) {
      if (find(i) == find(seed) && lhs.nodes[i].root) {
        start = i;
        break;
      }
    }
    plan.steps.push_back({lhs.nodes[start].root ? Instruction::Op::match_root : Instruction::Op::match_any_node,
                          start, kNoIndex, kNoIndex});
    bound[start] = true;

    for (;;) {
      auto pick = [&](auto&& usable) {
        for (std::size_t j = 0; j < lhs.edges.size(); ++j) {
          if (!planned[j] && usable(lhs.edges[j])) return j;
        }
        return kNoIndex;
      };
      if (const auto j = pick([&](const RuleEdge& e) { return bound[e.source_index] && bound[e.target_index]; });
          j != kNoIndex) {
        planned[j] = true;
        plan.steps.push_back(
            {Instruction::Op::match_edge_between, lhs.edges[j].target_index, lhs.edges[j].source_index, j});
      } else if (const auto k = pick([&](const RuleEdge& e) { return bound[e.source_index]; }); k != kNoIndex) {
        planned[k] = true;
        bound[lhs.edges[k].target_index] = true;
        plan.steps.push_back({Instruction::Op::extend_out, lhs.edges[k].target_index, lhs.edges[k].source_index, k});
      } else if (const auto m = pick([&](const RuleEdge& e) { return bound[e.target_index]; }); m != kNoIndex) {
        planned[m] = true;
        bound[lhs.edges[m].source_index] = true;
        plan.steps.push_back({Instruction::Op::extend_in, lhs.edges[m].source_index, lhs.edges[m].target_index, m});
      } else {
        break;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (rule.rhs_of_lhs[i] != kNoIndex) continue;
    SearchPlan::DeletedNode d{i, 0, 0};
    for (const auto& e : lhs.edges) {
      if (e.source_index == i) ++d.outdegree;
      if (e.target_index == i) ++d.indegree;
    }
    plan.deleted_nodes.push_back(d);
  }
  if (!plan.deleted_nodes.empty()) plan.steps.push_back({Instruction::Op::check_dangling});
  if (rule.condition) plan.steps.push_back({Instruction::Op::check_condition});
  return plan;
}

bool evaluate_condition(const Graph& graph, const Condition& c, const Match& match) {
  switch (c.kind) {
    case Condition::Kind::edge: {
      const NodeHandle target = match.nodes[c.to_index];
      for (EdgeHandle e : graph.out_edges(match.nodes[c.from_index])) {
        if (graph.edge(e).target == target) return true;
      }
      return false;
    }
    case Condition::Kind::negation: return !evaluate_condition(graph, c.operands[0], match);
    case Condition::Kind::conjunction:
      return evaluate_condition(graph, c.operands[0], match) && evaluate_condition(graph, c.operands[1], match);
    case Condition::Kind::disjunction:
      return evaluate_condition(graph, c.operands[0], match) || evaluate_condition(graph, c.operands[1], match);
    case Condition::Kind::list_equal: return instantiate(c.left, match.env) == instantiate(c.right, match.env);
    case Condition::Kind::list_not_equal: return instantiate(c.left, match.env) != instantiate(c.right, match.env);
  }
  return false;
}

namespace {

class Matcher {
 public:
  Matcher(const Graph& graph, const Rule& rule, const SearchPlan& plan)
      : graph_(graph), rule_(rule), plan_(plan) {
    match_.nodes.assign(rule.lhs.nodes.size(), NodeHandle{});
    match_.edges.assign(rule.lhs.edges.size(), EdgeHandle{});
  }

  std::optional<Match> run() {
    if (search(0)) return std::move(match_);
    return std::nullopt;
  }

 private:
  bool search(std::size_t pc) {
    if (pc == plan_.steps.size()) return true;
    const Instruction& ins = plan_.steps[pc];
    switch (ins.op) {
      case Instruction::Op::match_root:
        for (NodeHandle h : graph_.roots()) {
          if (bind_node_and_continue(ins.node, h, pc)) return true;
        }
        return false;
      case Instruction::Op::match_any_node:
        for (NodeHandle h : graph_.nodes()) {
          if (bind_node_and_continue(ins.node, h, pc)) return true;
        }
        return false;
      case Instruction::Op::extend_out:
        for (EdgeHandle e : graph_.out_edges(match_.nodes[ins.from])) {
          if (bind_edge_and_node(ins, e, graph_.edge(e).target, pc)) return true;
        }
        return false;
      case Instruction::Op::extend_in:
        for (EdgeHandle e : graph_.in_edges(match_.nodes[ins.from])) {
          if (bind_edge_and_node(ins, e, graph_.edge(e).source, pc)) return true;
        }
        return false;
      case Instruction::Op::match_edge_between: {
        const NodeHandle target = match_.nodes[ins.node];
        for (EdgeHandle e : graph_.out_edges(match_.nodes[ins.from])) {
          graph_.tick();
          if (graph_.edge(e).target != target) continue;
          const std::size_t saved = match_.env.size();
          if (!try_edge(ins.edge, e)) continue;
          if (search(pc + 1)) return true;
          unbind_edge(ins.edge, saved);
        }
        return false;
      }
      case Instruction::Op::check_dangling:
        for (const auto& d : plan_.deleted_nodes) {
          graph_.tick();
          const Node& n = graph_.node(match_.nodes[d.node]);
          if (n.outdegree != d.outdegree || n.indegree != d.indegree) return false;
        }
        return search(pc + 1);
      case Instruction::Op::check_condition:
        graph_.tick();
        if (!evaluate_condition(graph_, *rule_.condition, match_)) return false;
        return search(pc + 1);
    }
    return false;
  }

  bool bind_node_and_continue(std::size_t index, NodeHandle h, std::size_t pc) {
    const std::size_t saved = match_.env.size();
    if (!try_node(index, h)) return false;
    if (search(pc + 1)) return true;
    unbind_node(index, saved);
    return false;
  }

  bool bind_edge_and_node(const Instruction& ins, EdgeHandle e, NodeHandle other, std::size_t pc) {
    const std::size_t saved = match_.env.size();
    if (!try_edge(ins.edge, e)) return false;
    if (try_node(ins.node, other)) {
      if (search(pc + 1)) return true;
      match_.nodes[ins.node] = NodeHandle{};
    }
    unbind_edge(ins.edge, saved);
    return false;
  }

  bool try_node(std::size_t index, NodeHandle h) {
    graph_.tick();
    const RuleNode& pattern = rule_.lhs.nodes[index];
    const Node& n = graph_.node(h);
    if (n.mark != pattern.mark) return false;
    if (pattern.root && !n.is_root) return false;
    if (plan_.mode == MatchMode::reflecting && !pattern.root && n.is_root) return false;
    if (std::find(match_.nodes.begin(), match_.nodes.end(), h) != match_.nodes.end()) return false;
    if (!match_label_into(pattern.label, n.label, match_.env)) return false;
    match_.nodes[index] = h;
    return true;
  }

  void unbind_node(std::size_t index, std::size_t saved_env) {
    match_.nodes[index] = NodeHandle{};
    match_.env.truncate(saved_env);
  }

  bool try_edge(std::size_t index, EdgeHandle e) {
    graph_.tick();
    const RuleEdge& pattern = rule_.lhs.edges[index];
    const Edge& edge = graph_.edge(e);
    if (edge.mark != pattern.mark) return false;
    if (std::find(match_.edges.begin(), match_.edges.end(), e) != match_.edges.end()) return false;
    if (!match_label_into(pattern.label, edge.label, match_.env)) return false;
    match_.edges[index] = e;
    return true;
  }

  void unbind_edge(std::size_t index, std::size_t saved_env) {
    match_.edges[index] = EdgeHandle{};
    match_.env.truncate(saved_env);
  }

  const Graph& graph_;
  const Rule& rule_;
  const SearchPlan& plan_;
  Match match_;
};

}  // namespace

std::optional<Match> find_match(const Graph& graph, const Rule& rule, const SearchPlan& plan) {
  GP2_CHECK(rule.resolved, "find_match: rule " + rule.name + " is not resolved");
  return Matcher(graph, rule, plan).run();
}

Match apply(Graph& graph, const Rule& rule, const Match& match, UndoLog& log) {
  GP2_CHECK(match.nodes.size() == rule.lhs.nodes.size() && match.edges.size() == rule.lhs.edges.size(),
            "apply: match does not fit rule " + rule.name);
  Match co;
  co.nodes.assign(rule.rhs.nodes.size(), NodeHandle{});
  co.edges.assign(rule.rhs.edges.size(), EdgeHandle{});
  co.env = match.env;

  std::vector<std::string> edge_names(rule.lhs.edges.size());
  for (std::size_t k = 0; k < rule.rhs.edges.size(); ++k) {
    if (const std::size_t j = rule.lhs_edge_of_rhs[k]; j != kNoIndex) edge_names[j] = graph.edge(match.edges[j]).name;
  }
  for (EdgeHandle e : match.edges) log.delete_edge(graph, e);
  for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
    if (rule.rhs_of_lhs[i] == kNoIndex) log.delete_node(graph, match.nodes[i]);
  }

  for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
    const std::size_t r = rule.rhs_of_lhs[i];
    if (r == kNoIndex) continue;
    const NodeHandle h = match.nodes[i];
    const RuleNode& target = rule.rhs.nodes[r];
    const Node& current = graph.node(h);
    HostLabel label = instantiate(target.label, match.env);
    if (label != current.label) log.relabel_node(graph, h, std::move(label));
    if (target.mark != current.mark) log.set_node_mark(graph, h, target.mark);
    if (target.root && !current.is_root) {
      log.set_root(graph, h, true);
    } else if (!target.root && rule.lhs.nodes[i].root && current.is_root) {
      log.set_root(graph, h, false);
    }
    co.nodes[r] = h;
  }

  for (std::size_t r = 0; r < rule.rhs.nodes.size(); ++r) {
    if (rule.lhs_of_rhs[r] != kNoIndex) continue;
    const RuleNode& created = rule.rhs.nodes[r];
    co.nodes[r] = log.add_node(graph, instantiate(created.label, match.env), created.mark, created.root);
  }

  for (std::size_t k = 0; k < rule.rhs.edges.size(); ++k) {
    const RuleEdge& e = rule.rhs.edges[k];
    co.edges[k] = log.add_edge(graph, co.nodes[e.source_index], co.nodes[e.target_index],
                               instantiate(e.label, match.env), e.mark,
                               rule.lhs_edge_of_rhs[k] == kNoIndex ? std::string{}
                                                                   : std::move(edge_names[rule.lhs_edge_of_rhs[k]]));
  }
  return co;
}

}  // namespace gp2
