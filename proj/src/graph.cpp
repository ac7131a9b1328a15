#include "gp2/graph.hpp"

#include <string>
#include <unordered_set>
#include <utility>

#include "gp2/error.hpp"

namespace gp2 {

Node& Graph::live_node(NodeHandle node, [[maybe_unused]] const char* op) {
  GP2_CHECK(contains(node), std::string(op) + ": node is not live");
  return nodes_[node.slot];
}

Edge& Graph::live_edge(EdgeHandle edge, [[maybe_unused]] const char* op) {
  GP2_CHECK(contains(edge), std::string(op) + ": edge is not live");
  return edges_[edge.slot];
}

bool Graph::contains(NodeHandle node) const noexcept {
  return nodes_.occupied(node.slot) && nodes_[node.slot].in_graph;
}

bool Graph::contains(EdgeHandle edge) const noexcept {
  return edges_.occupied(edge.slot) && edges_[edge.slot].in_out_list;
}

void Graph::link_root(Node& n, NodeHandle node, NodeHandle before) {
  const SlotIndex position = before.valid() ? nodes_[before.slot].root_entry : kNoSlot;
  n.root_entry = root_list_.insert_before(root_links_, position, node);
}

NodeHandle Graph::add_node(HostLabel label, NodeMark mark, bool root, std::string name) {
  tick();
  Node fresh;
  fresh.label = std::move(label);
  fresh.mark = mark;
  fresh.name = std::move(name);
  const NodeHandle handle{nodes_.emplace(std::move(fresh))};
  Node& n = nodes_[handle.slot];
  n.list_entry = node_list_.push_front(node_links_, handle);
  if (root) {
    n.is_root = true;
    link_root(n, handle, NodeHandle{});
  }
  ++node_count_;
  return handle;
}

NodeRemoval Graph::delete_node(NodeHandle node) {
  tick();
  Node& n = live_node(node, "delete_node");
  GP2_CHECK(n.outdegree == 0 && n.indegree == 0, "delete_node: node has incident edges");
  NodeRemoval removal;
  const SlotIndex next = node_list_.entry(n.list_entry).next;
  if (next != kNoSlot) removal.next_node = node_list_.value(next);
  node_list_.erase(node_links_, n.list_entry);
  n.list_entry = kNoSlot;
  if (n.is_root) {
    const SlotIndex next_root = root_list_.entry(n.root_entry).next;
    if (next_root != kNoSlot) removal.next_root = root_list_.value(next_root);
    root_list_.erase(root_links_, n.root_entry);
    n.root_entry = kNoSlot;
  }
  n.in_graph = false;
  --node_count_;
  reclaim_node_if_unreferenced(node);
  return removal;
}

void Graph::restore_node(NodeHandle node, const NodeRemoval& removal) {
  tick();
  GP2_CHECK(allocated(node) && !nodes_[node.slot].in_graph, "restore_node: node is not a retained deleted node");
  Node& n = nodes_[node.slot];
  const SlotIndex position = removal.next_node.valid() ? nodes_[removal.next_node.slot].list_entry : kNoSlot;
  n.list_entry = node_list_.insert_before(node_links_, position, node);
  if (n.is_root) link_root(n, node, removal.next_root);
  n.in_graph = true;
  ++node_count_;
}

EdgeHandle Graph::add_edge(NodeHandle source, NodeHandle target, HostLabel label, EdgeMark mark,
                           std::string name) {
  tick();
  GP2_CHECK(contains(source), "add_edge: source is not live");
  GP2_CHECK(contains(target), "add_edge: target is not live");
  Edge fresh;
  fresh.label = std::move(label);
  fresh.mark = mark;
  fresh.source = source;
  fresh.target = target;
  fresh.name = std::move(name);
  const EdgeHandle handle{edges_.emplace(std::move(fresh))};
  link_edge(handle, EdgeRemoval{});
  return handle;
}

EdgeRemoval Graph::delete_edge(EdgeHandle edge) {
  tick();
  Edge& e = live_edge(edge, "delete_edge");
  Node& src = nodes_[e.source.slot];
  Node& tgt = nodes_[e.target.slot];
  EdgeRemoval removal;
  if (const SlotIndex next = src.edge_entries.entry(e.out_entry).next; next != kNoSlot) {
    removal.next_out = src.edge_entries.value(next);
  }
  if (const SlotIndex next = tgt.edge_entries.entry(e.in_entry).next; next != kNoSlot) {
    removal.next_in = tgt.edge_entries.value(next);
  }
  src.edge_entries.erase(src.out_links, e.out_entry);
  tgt.edge_entries.erase(tgt.in_links, e.in_entry);
  --src.outdegree;
  --tgt.indegree;
  e.out_entry = e.in_entry = kNoSlot;
  e.in_out_list = e.in_in_list = false;
  --edge_count_;
  reclaim_edge_if_unreferenced(edge);
  return removal;
}

void Graph::restore_edge(EdgeHandle edge, const EdgeRemoval& removal) {
  tick();
  GP2_CHECK(allocated(edge) && !edges_[edge.slot].in_out_list, "restore_edge: edge is already linked");
  link_edge(edge, removal);
}

void Graph::link_edge(EdgeHandle edge, const EdgeRemoval& removal) {
  Edge& e = edges_[edge.slot];
  GP2_CHECK(contains(e.source) && contains(e.target), "restore_edge: endpoint is not live");
  Node& src = nodes_[e.source.slot];
  Node& tgt = nodes_[e.target.slot];
  const SlotIndex out_pos = removal.next_out.valid() ? edges_[removal.next_out.slot].out_entry : kNoSlot;
  const SlotIndex in_pos = removal.next_in.valid() ? edges_[removal.next_in.slot].in_entry : kNoSlot;
  e.out_entry = src.edge_entries.insert_before(src.out_links, out_pos, edge);
  e.in_entry = tgt.edge_entries.insert_before(tgt.in_links, in_pos, edge);
  ++src.outdegree;
  ++tgt.indegree;
  e.in_out_list = e.in_in_list = true;
  ++edge_count_;
}

HostLabel Graph::relabel_node(NodeHandle node, HostLabel label) {
  tick();
  return std::exchange(live_node(node, "relabel_node").label, std::move(label));
}

HostLabel Graph::relabel_edge(EdgeHandle edge, HostLabel label) {
  tick();
  return std::exchange(live_edge(edge, "relabel_edge").label, std::move(label));
}

NodeMark Graph::set_node_mark(NodeHandle node, NodeMark mark) {
  tick();
  return std::exchange(live_node(node, "set_node_mark").mark, mark);
}

EdgeMark Graph::set_edge_mark(EdgeHandle edge, EdgeMark mark) {
  tick();
  return std::exchange(live_edge(edge, "set_edge_mark").mark, mark);
}

RootChange Graph::set_root(NodeHandle node, bool root) {
  tick();
  Node& n = live_node(node, "set_root");
  RootChange change{n.is_root, NodeHandle{}};
  if (n.is_root == root) return change;
  if (root) {
    link_root(n, node, NodeHandle{});
  } else {
    const SlotIndex next = root_list_.entry(n.root_entry).next;
    if (next != kNoSlot) change.next_root = root_list_.value(next);
    root_list_.erase(root_links_, n.root_entry);
    n.root_entry = kNoSlot;
  }
  n.is_root = root;
  return change;
}

void Graph::restore_root(NodeHandle node, const RootChange& change) {
  tick();
  Node& n = live_node(node, "restore_root");
  if (n.is_root == change.old) return;
  if (change.old) {
    link_root(n, node, change.next_root);
  } else {
    root_list_.erase(root_links_, n.root_entry);
    n.root_entry = kNoSlot;
  }
  n.is_root = change.old;
}

void Graph::retain_node(NodeHandle node) {
  GP2_CHECK(allocated(node), "retain_node: slot is free");
  nodes_[node.slot].in_log = true;
}

void Graph::release_node(NodeHandle node) {
  GP2_CHECK(allocated(node), "release_node: slot is free");
  nodes_[node.slot].in_log = false;
  reclaim_node_if_unreferenced(node);
}

void Graph::retain_edge(EdgeHandle edge) {
  GP2_CHECK(allocated(edge), "retain_edge: slot is free");
  edges_[edge.slot].in_log = true;
}

void Graph::release_edge(EdgeHandle edge) {
  GP2_CHECK(allocated(edge), "release_edge: slot is free");
  edges_[edge.slot].in_log = false;
  reclaim_edge_if_unreferenced(edge);
}

void Graph::reclaim_node_if_unreferenced(NodeHandle node) {
  const Node& n = nodes_[node.slot];
  if (!n.in_graph && !n.in_log) nodes_.free(node.slot);
}

void Graph::reclaim_edge_if_unreferenced(EdgeHandle edge) {
  const Edge& e = edges_[edge.slot];
  if (!e.in_out_list && !e.in_in_list && !e.in_log) edges_.free(edge.slot);
}

Graph::EdgeRange Graph::out_edges(NodeHandle node) const {
  const Node& n = nodes_[node.slot];
  return n.edge_entries.items(n.out_links, &steps_);
}

Graph::EdgeRange Graph::in_edges(NodeHandle node) const {
  const Node& n = nodes_[node.slot];
  return n.edge_entries.items(n.in_links, &steps_);
}

GraphSnapshot snapshot(const Graph& graph) {
  GraphSnapshot snap;
  const std::uint64_t steps = graph.steps();
  for (NodeHandle h : graph.nodes()) {
    const Node& n = graph.node(h);
    GraphSnapshot::NodeState state{h.slot, n.label, n.mark, n.is_root, {}, {}, n.name};
    for (EdgeHandle e : graph.out_edges(h)) {
      state.out.push_back(e.slot);
      const Edge& edge = graph.edge(e);
      snap.edges.push_back({e.slot, edge.label, edge.mark, edge.source.slot, edge.target.slot, edge.name});
    }
    for (EdgeHandle e : graph.in_edges(h)) state.in.push_back(e.slot);
    snap.nodes.push_back(std::move(state));
  }
  for (NodeHandle h : graph.roots()) snap.roots.push_back(h.slot);
  // Observation only; leave the cost counter untouched.
  graph.restore_steps(steps);
  return snap;
}

std::vector<std::string> check_consistency(const Graph& graph) {
  std::vector<std::string> problems;
  const std::uint64_t steps = graph.steps();
  std::unordered_set<NodeHandle> seen;
  std::size_t out_total = 0;
  std::size_t in_total = 0;
  std::size_t flagged_roots = 0;
  for (NodeHandle h : graph.nodes()) {
    const std::string where = "node " + std::to_string(h.slot);
    if (!seen.insert(h).second) problems.push_back(where + " appears twice in node list");
    if (!graph.contains(h)) {
      problems.push_back(where + " in node list but not live");
      continue;
    }
    const Node& n = graph.node(h);
    std::size_t out = 0;
    for (EdgeHandle e : graph.out_edges(h)) {
      ++out;
      if (!graph.contains(e)) problems.push_back(where + " lists a dead outgoing edge");
      else if (graph.edge(e).source != h) problems.push_back(where + " lists an outgoing edge it is not the source of");
      else if (!graph.contains(graph.edge(e).target)) problems.push_back(where + " has an edge to a dead node");
    }
    std::size_t in = 0;
    for (EdgeHandle e : graph.in_edges(h)) {
      ++in;
      if (!graph.contains(e)) problems.push_back(where + " lists a dead incoming edge");
      else if (graph.edge(e).target != h) problems.push_back(where + " lists an incoming edge it is not the target of");
    }
    if (out != n.outdegree) problems.push_back(where + " outdegree mismatch");
    if (in != n.indegree) problems.push_back(where + " indegree mismatch");
    out_total += out;
    in_total += in;
    if (n.is_root) ++flagged_roots;
  }
  if (seen.size() != graph.node_count()) problems.push_back("node_count does not match node list");
  if (out_total != graph.edge_count() || in_total != graph.edge_count()) {
    problems.push_back("edge_count does not match degree sums");
  }
  std::unordered_set<NodeHandle> root_seen;
  for (NodeHandle h : graph.roots()) {
    if (!root_seen.insert(h).second) problems.push_back("root listed twice");
    if (!graph.contains(h) || !graph.node(h).is_root) problems.push_back("root list entry is not a live root");
  }
  if (root_seen.size() != flagged_roots) problems.push_back("root list does not match root flags");
  graph.restore_steps(steps);
  return problems;
}

}  // namespace gp2
