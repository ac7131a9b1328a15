#include "gp2/undo_log.hpp"

#include <utility>

#include "gp2/error.hpp"

namespace gp2 {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

UndoLog::Frame UndoLog::open() {
  frames_.push_back(entries_.size());
  return frames_.size() - 1;
}

void UndoLog::commit(Graph& graph, Frame frame) {
  if (frame + 1 != frames_.size()) contract_failure("UndoLog::commit: frame is not the topmost frame");
  frames_.pop_back();
  if (!frames_.empty()) return;
  for (const Entry& entry : entries_) release(graph, entry);
  entries_.clear();
}

void UndoLog::rollback(Graph& graph, Frame frame) {
  if (frame >= frames_.size() || frames_[frame] > entries_.size()) {
    contract_failure("UndoLog::rollback: corrupted log or unknown frame");
  }
  const std::size_t mark = frames_[frame];
  while (entries_.size() > mark) {
    undo(graph, entries_.back());
    entries_.pop_back();
  }
  frames_.resize(frame);
}

void UndoLog::undo(Graph& graph, Entry& entry) {
  std::visit(Overloaded{
                 [&](AddedNode& e) { graph.delete_node(e.node); },
                 [&](AddedEdge& e) { graph.delete_edge(e.edge); },
                 [&](DeletedNode& e) {
                   graph.restore_node(e.node, e.removal);
                   graph.release_node(e.node);
                 },
                 [&](DeletedEdge& e) {
                   graph.restore_edge(e.edge, e.removal);
                   graph.release_edge(e.edge);
                 },
                 [&](NodeRelabeled& e) { graph.relabel_node(e.node, std::move(e.old)); },
                 [&](EdgeRelabeled& e) { graph.relabel_edge(e.edge, std::move(e.old)); },
                 [&](NodeRemarked& e) { graph.set_node_mark(e.node, e.old); },
                 [&](EdgeRemarked& e) { graph.set_edge_mark(e.edge, e.old); },
                 [&](RootChanged& e) { graph.restore_root(e.node, e.change); },
             },
             entry);
}

void UndoLog::release(Graph& graph, const Entry& entry) {
  if (const auto* e = std::get_if<DeletedNode>(&entry)) {
    graph.release_node(e->node);
  } else if (const auto* e = std::get_if<DeletedEdge>(&entry)) {
    graph.release_edge(e->edge);
  }
}

NodeHandle UndoLog::add_node(Graph& graph, HostLabel label, NodeMark mark, bool root) {
  const NodeHandle node = graph.add_node(std::move(label), mark, root);
  if (recording()) entries_.emplace_back(AddedNode{node});
  return node;
}

void UndoLog::delete_node(Graph& graph, NodeHandle node) {
  if (!recording()) {
    graph.delete_node(node);
    return;
  }
  graph.retain_node(node);
  entries_.emplace_back(DeletedNode{node, graph.delete_node(node)});
}

EdgeHandle UndoLog::add_edge(Graph& graph, NodeHandle source, NodeHandle target, HostLabel label, EdgeMark mark,
                             std::string name) {
  const EdgeHandle edge = graph.add_edge(source, target, std::move(label), mark, std::move(name));
  if (recording()) entries_.emplace_back(AddedEdge{edge});
  return edge;
}

void UndoLog::delete_edge(Graph& graph, EdgeHandle edge) {
  if (!recording()) {
    graph.delete_edge(edge);
    return;
  }
  graph.retain_edge(edge);
  entries_.emplace_back(DeletedEdge{edge, graph.delete_edge(edge)});
}

void UndoLog::relabel_node(Graph& graph, NodeHandle node, HostLabel label) {
  HostLabel old = graph.relabel_node(node, std::move(label));
  if (recording()) entries_.emplace_back(NodeRelabeled{node, std::move(old)});
}

void UndoLog::relabel_edge(Graph& graph, EdgeHandle edge, HostLabel label) {
  HostLabel old = graph.relabel_edge(edge, std::move(label));
  if (recording()) entries_.emplace_back(EdgeRelabeled{edge, std::move(old)});
}

void UndoLog::set_node_mark(Graph& graph, NodeHandle node, NodeMark mark) {
  const NodeMark old = graph.set_node_mark(node, mark);
  if (recording()) entries_.emplace_back(NodeRemarked{node, old});
}

void UndoLog::set_edge_mark(Graph& graph, EdgeHandle edge, EdgeMark mark) {
  const EdgeMark old = graph.set_edge_mark(edge, mark);
  if (recording()) entries_.emplace_back(EdgeRemarked{edge, old});
}

void UndoLog::set_root(Graph& graph, NodeHandle node, bool root) {
  const RootChange change = graph.set_root(node, root);
  if (recording()) entries_.emplace_back(RootChanged{node, change});
}

}  // namespace gp2
