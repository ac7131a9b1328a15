#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gp2/graph.hpp"
#include "gp2/label.hpp"
#include "gp2/rule.hpp"
#include "gp2/undo_log.hpp"

namespace gp2 {

/// preserving: rooted lhs nodes must map to host roots.
/// reflecting: additionally, unrooted lhs nodes must map to unrooted host nodes.
enum class MatchMode { preserving, reflecting };

std::string_view to_string(MatchMode mode) noexcept;
std::optional<MatchMode> parse_match_mode(std::string_view name) noexcept;

struct Instruction {
  enum class Op {
    match_root,          // bind `node` to a host root
    match_any_node,      // bind `node` by scanning the node list
    extend_out,          // follow an outgoing edge of `from`, binding `edge` and its target `node`
    extend_in,           // follow an incoming edge of `from`, binding `edge` and its source `node`
    match_edge_between,  // bind `edge` between already bound `from` and `node`
    check_dangling,
    check_condition,
  };

  Op op;
  std::size_t node = kNoIndex;
  std::size_t from = kNoIndex;
  std::size_t edge = kNoIndex;

  bool operator==(const Instruction&) const = default;
};

struct SearchPlan {
  MatchMode mode = MatchMode::reflecting;
  std::vector<Instruction> steps;

  // Lhs nodes the rule deletes, with the degrees their host images must have.
  struct DeletedNode {
    std::size_t node;
    std::size_t outdegree;
    std::size_t indegree;
  };
  std::vector<DeletedNode> deleted_nodes;
};

/// An injective morphism from a rule side into the host graph. Nodes and
/// edges are indexed by their position in the rule graph.
struct Match {
  std::vector<NodeHandle> nodes;
  std::vector<EdgeHandle> edges;
  Binding env;

  bool operator==(const Match&) const = default;
};

/// Components are anchored at a root node when they have one; extension
/// follows outgoing edges of matched sources before incoming edges of matched
/// targets. Requires a resolved rule.
SearchPlan build_search_plan(const Rule& rule, MatchMode mode);

/// First match in deterministic order (root list, node list, edge lists).
std::optional<Match> find_match(const Graph& graph, const Rule& rule, const SearchPlan& plan);

/// Whether the rule's condition holds for a complete match.
bool evaluate_condition(const Graph& graph, const Condition& condition, const Match& match);

/// Double-pushout step: delete matched edges, delete non-interface nodes,
/// update interface nodes, add new nodes, add rhs edges. Every mutation goes
/// through `log`. Returns the co-match (indexed by rhs positions).
Match apply(Graph& graph, const Rule& rule, const Match& match, UndoLog& log);

}  // namespace gp2
