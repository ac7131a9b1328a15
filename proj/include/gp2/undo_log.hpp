#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "gp2/graph.hpp"

namespace gp2 {

/// Change log used for backtracking.
///
/// Every graph mutation made through the log is recorded while at least one
/// frame is open. Rolling a frame back undoes its entries in reverse order and
/// restores the graph exactly (same handles, list positions, labels, marks and
/// roots). Deleted elements are retained by the graph until the entry that
/// references them is undone or released. With no frame open nothing is
/// recorded, so straight-line execution keeps no history.
class UndoLog {
 public:
  using Frame = std::size_t;

  Frame open();
  /// Merges the topmost frame into its parent, or releases its entries when
  /// it is the outermost frame.
  void commit(Graph& graph, Frame frame);
  /// Undoes every entry recorded since `frame` was opened and closes it along
  /// with any frames nested inside it.
  void rollback(Graph& graph, Frame frame);

  bool recording() const noexcept { return !frames_.empty(); }
  std::size_t depth() const noexcept { return frames_.size(); }
  std::size_t size() const noexcept { return entries_.size(); }

  NodeHandle add_node(Graph& graph, HostLabel label, NodeMark mark = NodeMark::none, bool root = false);
  void delete_node(Graph& graph, NodeHandle node);
  EdgeHandle add_edge(Graph& graph, NodeHandle source, NodeHandle target, HostLabel label,
                      EdgeMark mark = EdgeMark::none, std::string name = {});
  void delete_edge(Graph& graph, EdgeHandle edge);
  void relabel_node(Graph& graph, NodeHandle node, HostLabel label);
  void relabel_edge(Graph& graph, EdgeHandle edge, HostLabel label);
  void set_node_mark(Graph& graph, NodeHandle node, NodeMark mark);
  void set_edge_mark(Graph& graph, EdgeHandle edge, EdgeMark mark);
  void set_root(Graph& graph, NodeHandle node, bool root);

 private:
  struct AddedNode { NodeHandle node; };
  struct AddedEdge { EdgeHandle edge; };
  struct DeletedNode { NodeHandle node; NodeRemoval removal; };
  struct DeletedEdge { EdgeHandle edge; EdgeRemoval removal; };
  struct NodeRelabeled { NodeHandle node; HostLabel old; };
  struct EdgeRelabeled { EdgeHandle edge; HostLabel old; };
  struct NodeRemarked { NodeHandle node; NodeMark old; };
  struct EdgeRemarked { EdgeHandle edge; EdgeMark old; };
  struct RootChanged { NodeHandle node; RootChange change; };

  using Entry = std::variant<AddedNode, AddedEdge, DeletedNode, DeletedEdge, NodeRelabeled, EdgeRelabeled,
                             NodeRemarked, EdgeRemarked, RootChanged>;

  static void undo(Graph& graph, Entry& entry);
  static void release(Graph& graph, const Entry& entry);

  std::vector<Entry> entries_;
  std::vector<std::size_t> frames_;
};

}  // namespace gp2
