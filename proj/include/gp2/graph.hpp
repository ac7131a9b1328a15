#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gp2/bigarray.hpp"
#include "gp2/label.hpp"
#include "gp2/list_pool.hpp"

namespace gp2 {

template <typename Tag>
struct Handle {
  SlotIndex slot = kNoSlot;

  constexpr bool valid() const noexcept { return slot != kNoSlot; }
  constexpr auto operator<=>(const Handle&) const = default;
};

struct NodeTag;
struct EdgeTag;
using NodeHandle = Handle<NodeTag>;
using EdgeHandle = Handle<EdgeTag>;

struct Node {
  HostLabel label;
  NodeMark mark = NodeMark::none;
  bool is_root = false;
  bool in_graph = true;
  bool in_log = false;
  std::size_t outdegree = 0;
  std::size_t indegree = 0;
  ListLinks out_links;
  ListLinks in_links;
  ListPool<EdgeHandle> edge_entries;
  SlotIndex list_entry = kNoSlot;
  SlotIndex root_entry = kNoSlot;
  std::string name;
};

struct Edge {
  HostLabel label;
  EdgeMark mark = EdgeMark::none;
  NodeHandle source;
  NodeHandle target;
  SlotIndex out_entry = kNoSlot;  // in source's edge_entries
  SlotIndex in_entry = kNoSlot;   // in target's edge_entries
  bool in_out_list = false;
  bool in_in_list = false;
  bool in_log = false;
  std::string name;
};

// Where a removed element sat in its lists, so it can be relinked exactly.
struct NodeRemoval {
  NodeHandle next_node;
  NodeHandle next_root;
};

struct EdgeRemoval {
  EdgeHandle next_out;
  EdgeHandle next_in;
};

struct RootChange {
  bool old = false;
  NodeHandle next_root;
};

/// Mutable host graph.
///
/// Nodes and edges live in BigArrays so handles stay valid for an element's
/// whole lifetime. Live nodes are threaded on a node list (newest first),
/// roots on a root list, and each node keeps separate outgoing and incoming
/// edge lists whose entries live in the node's own pool.
///
/// A deleted element stays dereferenceable while the undo log retains it
/// (in_log); its slot is reclaimed once it is neither in the graph nor
/// retained.
class Graph {
 public:
  using NodeRange = ListPool<NodeHandle>::Range;
  using EdgeRange = ListPool<EdgeHandle>::Range;

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  Graph(Graph&&) noexcept = default;
  Graph& operator=(Graph&&) noexcept = default;

  NodeHandle add_node(HostLabel label, NodeMark mark = NodeMark::none, bool root = false,
                      std::string name = {});
  /// Precondition: the node has no incident edges.
  NodeRemoval delete_node(NodeHandle node);
  void restore_node(NodeHandle node, const NodeRemoval& removal);

  EdgeHandle add_edge(NodeHandle source, NodeHandle target, HostLabel label,
                      EdgeMark mark = EdgeMark::none, std::string name = {});
  EdgeRemoval delete_edge(EdgeHandle edge);
  void restore_edge(EdgeHandle edge, const EdgeRemoval& removal);

  HostLabel relabel_node(NodeHandle node, HostLabel label);
  HostLabel relabel_edge(EdgeHandle edge, HostLabel label);
  NodeMark set_node_mark(NodeHandle node, NodeMark mark);
  EdgeMark set_edge_mark(EdgeHandle edge, EdgeMark mark);
  RootChange set_root(NodeHandle node, bool root);
  void restore_root(NodeHandle node, const RootChange& change);

  void retain_node(NodeHandle node);
  void release_node(NodeHandle node);
  void retain_edge(EdgeHandle edge);
  void release_edge(EdgeHandle edge);

  /// Live in the graph.
  bool contains(NodeHandle node) const noexcept;
  bool contains(EdgeHandle edge) const noexcept;
  /// Slot still holds the element (live, or deleted but retained).
  bool allocated(NodeHandle node) const noexcept { return nodes_.occupied(node.slot); }
  bool allocated(EdgeHandle edge) const noexcept { return edges_.occupied(edge.slot); }

  const Node& node(NodeHandle node) const { return nodes_[node.slot]; }
  const Edge& edge(EdgeHandle edge) const { return edges_[edge.slot]; }

  /// Live nodes, newest first.
  NodeRange nodes() const { return node_list_.items(node_links_, &steps_); }
  /// Live nodes, oldest first.
  NodeRange nodes_oldest_first() const { return node_list_.reversed(node_links_, &steps_); }
  NodeRange roots() const { return root_list_.items(root_links_, &steps_); }
  EdgeRange out_edges(NodeHandle node) const;
  EdgeRange in_edges(NodeHandle node) const;

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t root_count() const noexcept { return root_links_.length; }
  bool empty() const noexcept { return node_count_ == 0; }

  /// Slot storage, exposed for reclamation checks.
  const BigArray<Node>& node_storage() const noexcept { return nodes_; }
  const BigArray<Edge>& edge_storage() const noexcept { return edges_; }

  /// Instrumented cost: one step per list advance and per mutation.
  std::uint64_t steps() const noexcept { return steps_; }
  void tick(std::uint64_t n = 1) const noexcept { steps_ += n; }
  void reset_steps() noexcept { steps_ = 0; }
  void restore_steps(std::uint64_t value) const noexcept { steps_ = value; }

 private:
  Node& live_node(NodeHandle node, const char* op);
  Edge& live_edge(EdgeHandle edge, const char* op);
  void reclaim_node_if_unreferenced(NodeHandle node);
  void reclaim_edge_if_unreferenced(EdgeHandle edge);
  void link_root(Node& n, NodeHandle node, NodeHandle before);
  void link_edge(EdgeHandle edge, const EdgeRemoval& removal);

  BigArray<Node> nodes_;
  BigArray<Edge> edges_;
  ListPool<NodeHandle> node_list_;
  ListLinks node_links_;
  ListPool<NodeHandle> root_list_;
  ListLinks root_links_;
  std::size_t node_count_ = 0;
  std::size_t edge_count_ = 0;
  mutable std::uint64_t steps_ = 0;
};

/// Order-sensitive deep view of a graph, used to compare states exactly.
struct GraphSnapshot {
  struct NodeState {
    SlotIndex handle;
    HostLabel label;
    NodeMark mark;
    bool root;
    std::vector<SlotIndex> out;
    std::vector<SlotIndex> in;
    std::string name;
    bool operator==(const NodeState&) const = default;
  };
  struct EdgeState {
    SlotIndex handle;
    HostLabel label;
    EdgeMark mark;
    SlotIndex source;
    SlotIndex target;
    std::string name;
    bool operator==(const EdgeState&) const = default;
  };

  std::vector<NodeState> nodes;
  std::vector<EdgeState> edges;
  std::vector<SlotIndex> roots;
  bool operator==(const GraphSnapshot&) const = default;
};

GraphSnapshot snapshot(const Graph& graph);

/// Recomputes degrees, endpoint liveness and root bookkeeping from scratch.
/// Returns one message per violated invariant; empty when consistent.
std::vector<std::string> check_consistency(const Graph& graph);

}  // namespace gp2

template <typename Tag>
struct std::hash<gp2::Handle<Tag>> {
  std::size_t operator()(const gp2::Handle<Tag>& h) const noexcept { return std::hash<gp2::SlotIndex>{}(h.slot); }
};
