#include "gp2/rule.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "gp2/error.hpp"

namespace gp2 {

std::size_t RuleGraph::index_of(std::string_view id) const noexcept {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  return kNoIndex;
}

Condition Condition::edge(std::string from, std::string to) {
  Condition c;
  c.kind = Kind::edge;
  c.from = std::move(from);
  c.to = std::move(to);
  return c;
}

Condition Condition::negation(Condition operand) {
  Condition c;
  c.kind = Kind::negation;
  c.operands.push_back(std::move(operand));
  return c;
}

Condition Condition::conjunction(Condition a, Condition b) {
  Condition c;
  c.kind = Kind::conjunction;
  c.operands.push_back(std::move(a));
  c.operands.push_back(std::move(b));
  return c;
}

Condition Condition::disjunction(Condition a, Condition b) {
  Condition c = conjunction(std::move(a), std::move(b));
  c.kind = Kind::disjunction;
  return c;
}

Condition Condition::list_equal(RuleLabel a, RuleLabel b) {
  Condition c;
  c.kind = Kind::list_equal;
  c.left = std::move(a);
  c.right = std::move(b);
  return c;
}

Condition Condition::list_not_equal(RuleLabel a, RuleLabel b) {
  Condition c = list_equal(std::move(a), std::move(b));
  c.kind = Kind::list_not_equal;
  return c;
}

namespace {

void collect_variables(const RuleLabel& label, std::set<std::string>& out) {
  for (const auto& item : label.items) {
    if (const auto* var = std::get_if<Variable>(&item)) out.insert(var->name);
  }
}

void collect_variables(const RuleGraph& graph, std::set<std::string>& out) {
  for (const auto& n : graph.nodes) collect_variables(n.label, out);
  for (const auto& e : graph.edges) collect_variables(e.label, out);
}

void collect_variables(const Condition& c, std::set<std::string>& out) {
  collect_variables(c.left, out);
  collect_variables(c.right, out);
  for (const auto& op : c.operands) collect_variables(op, out);
}

class Validator {
 public:
  explicit Validator(const Rule& rule) : rule_(rule) {}

  std::vector<RuleDiagnostic> run() {
    check_declarations();
    check_graph(rule_.lhs, "left-hand side");
    check_graph(rule_.rhs, "right-hand side");
    check_interface();
    check_completeness();
    if (rule_.condition) check_condition(*rule_.condition);
    return std::move(out_);
  }

 private:
  void report(std::string message) { out_.push_back({rule_.name, std::move(message)}); }

  void check_declarations() {
    std::set<std::string> seen;
    for (const auto& v : rule_.variables) {
      if (!seen.insert(v.name).second) report("duplicate variable declaration " + v.name);
    }
  }

  void check_label(const RuleLabel& label, const std::string& where) {
    if (label.list_variable_count() > 1) report(where + " has more than one list variable");
    for (const auto& item : label.items) {
      const auto* var = std::get_if<Variable>(&item);
      if (var == nullptr) continue;
      const auto decl = std::find_if(rule_.variables.begin(), rule_.variables.end(),
                                     [&](const Variable& v) { return v.name == var->name; });
      if (decl == rule_.variables.end()) {
        report(where + " uses undeclared variable " + var->name);
      } else if (decl->type != var->type) {
        report(where + " uses variable " + var->name + " with a type other than its declaration");
      }
    }
  }

  void check_graph(const RuleGraph& graph, const std::string& side) {
    std::set<std::string> node_ids;
    for (const auto& n : graph.nodes) {
      if (!node_ids.insert(n.id).second) report(side + " has duplicate node id " + n.id);
      check_label(n.label, side + " node " + n.id);
    }
    std::set<std::string> edge_ids;
    for (const auto& e : graph.edges) {
      if (!edge_ids.insert(e.id).second) report(side + " has duplicate edge id " + e.id);
      if (!node_ids.contains(e.source)) report(side + " edge " + e.id + " has unknown source " + e.source);
      if (!node_ids.contains(e.target)) report(side + " edge " + e.id + " has unknown target " + e.target);
      check_label(e.label, side + " edge " + e.id);
    }
  }

  void check_interface() {
    std::set<std::string> seen;
    for (const auto& id : rule_.interface) {
      if (!seen.insert(id).second) report("interface lists node " + id + " twice");
      if (rule_.lhs.index_of(id) == kNoIndex) report("interface node " + id + " is missing from the left-hand side");
      if (rule_.rhs.index_of(id) == kNoIndex) report("interface node " + id + " is missing from the right-hand side");
    }
    for (const auto& n : rule_.rhs.nodes) {
      if (!seen.contains(n.id) && rule_.lhs.index_of(n.id) != kNoIndex) {
        report("node " + n.id + " occurs on both sides but is not in the interface");
      }
    }
  }

  void check_completeness() {
    std::set<std::string> lhs_vars;
    collect_variables(rule_.lhs, lhs_vars);
    std::set<std::string> used;
    collect_variables(rule_.rhs, used);
    if (rule_.condition) collect_variables(*rule_.condition, used);
    for (const auto& name : used) {
      if (!lhs_vars.contains(name)) report("unbound variable " + name + " (not used in the left-hand side)");
    }
  }

  void check_condition(const Condition& c) {
    switch (c.kind) {
      case Condition::Kind::edge:
        if (rule_.lhs.index_of(c.from) == kNoIndex) report("condition refers to unknown node " + c.from);
        if (rule_.lhs.index_of(c.to) == kNoIndex) report("condition refers to unknown node " + c.to);
        break;
      case Condition::Kind::list_equal:
      case Condition::Kind::list_not_equal:
        check_label(c.left, "condition");
        check_label(c.right, "condition");
        break;
      default:
        for (const auto& op : c.operands) check_condition(op);
    }
  }

  const Rule& rule_;
  std::vector<RuleDiagnostic> out_;
};

void resolve_edges(RuleGraph& graph) {
  for (auto& e : graph.edges) {
    e.source_index = graph.index_of(e.source);
    e.target_index = graph.index_of(e.target);
  }
}

void resolve_condition(Condition& c, const RuleGraph& lhs) {
  if (c.kind == Condition::Kind::edge) {
    c.from_index = lhs.index_of(c.from);
    c.to_index = lhs.index_of(c.to);
  }
  for (auto& op : c.operands) resolve_condition(op, lhs);
}

}  // namespace

std::vector<RuleDiagnostic> validate_rule(const Rule& rule) { return Validator(rule).run(); }

void resolve_rule(Rule& rule) {
  if (const auto problems = validate_rule(rule); !problems.empty()) {
    contract_failure("resolve_rule: " + problems.front().to_string());
  }
  resolve_edges(rule.lhs);
  resolve_edges(rule.rhs);
  rule.rhs_of_lhs.assign(rule.lhs.nodes.size(), kNoIndex);
  rule.lhs_of_rhs.assign(rule.rhs.nodes.size(), kNoIndex);
  for (const auto& id : rule.interface) {
    const std::size_t l = rule.lhs.index_of(id);
    const std::size_t r = rule.rhs.index_of(id);
    rule.rhs_of_lhs[l] = r;
    rule.lhs_of_rhs[r] = l;
  }
  rule.lhs_edge_of_rhs.assign(rule.rhs.edges.size(), kNoIndex);
  for (std::size_t k = 0; k < rule.rhs.edges.size(); ++k) {
    const RuleEdge& r = rule.rhs.edges[k];
    for (std::size_t j = 0; j < rule.lhs.edges.size(); ++j) {
      const RuleEdge& l = rule.lhs.edges[j];
      if (l.id == r.id && rule.rhs_of_lhs[l.source_index] == r.source_index &&
          rule.rhs_of_lhs[l.target_index] == r.target_index) {
        rule.lhs_edge_of_rhs[k] = j;
      }
    }
  }
  if (rule.condition) resolve_condition(*rule.condition, rule.lhs);
  rule.resolved = true;
}

RuleSpeed classify_rule(const Rule& rule) {
  const auto& lhs = rule.lhs;
  std::vector<std::size_t> parent(lhs.nodes.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : lhs.edges) {
    const std::size_t s = lhs.index_of(e.source);
    const std::size_t t = lhs.index_of(e.target);
    if (s != kNoIndex && t != kNoIndex) parent[find(s)] = find(t);
  }
  std::vector<bool> rooted(lhs.nodes.size(), false);
  for (std::size_t i = 0; i < lhs.nodes.size(); ++i) {
    if (lhs.nodes[i].root) rooted[find(i)] = true;
  }
  for (std::size_t i = 0; i < lhs.nodes.size(); ++i) {
    if (!rooted[find(i)]) return RuleSpeed::slow;
  }
  return RuleSpeed::fast;
}

Rule inverse_rule(const Rule& rule) {
  Rule inv;
  inv.name = rule.name + "_inverse";
  inv.variables = rule.variables;
  inv.lhs = rule.rhs;
  inv.rhs = rule.lhs;
  inv.interface = rule.interface;
  return inv;
}

}  // namespace gp2
