#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gp2/label.hpp"

namespace gp2 {

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

struct RuleNode {
  std::string id;
  RuleLabel label;
  NodeMark mark = NodeMark::none;
  bool root = false;
};

struct RuleEdge {
  std::string id;
  std::string source;
  std::string target;
  RuleLabel label;
  EdgeMark mark = EdgeMark::none;
  // Filled by resolve_rule.
  std::size_t source_index = kNoIndex;
  std::size_t target_index = kNoIndex;
};

struct RuleGraph {
  std::vector<RuleNode> nodes;
  std::vector<RuleEdge> edges;

  std::size_t index_of(std::string_view id) const noexcept;
};

/// Application condition over the left-hand side.
struct Condition {
  enum class Kind { edge, negation, conjunction, disjunction, list_equal, list_not_equal };

  Kind kind = Kind::edge;
  std::string from;  // edge(from, to), lhs node ids
  std::string to;
  std::size_t from_index = kNoIndex;
  std::size_t to_index = kNoIndex;
  RuleLabel left;  // list comparisons
  RuleLabel right;
  std::vector<Condition> operands;

  static Condition edge(std::string from, std::string to);
  static Condition negation(Condition operand);
  static Condition conjunction(Condition a, Condition b);
  static Condition disjunction(Condition a, Condition b);
  static Condition list_equal(RuleLabel a, RuleLabel b);
  static Condition list_not_equal(RuleLabel a, RuleLabel b);
};

/// A rule L <- K -> R. The interface K is the set of node ids shared by both
/// sides; edges are never preserved, so every lhs edge is deleted and every
/// rhs edge created.
struct Rule {
  std::string name;
  std::vector<Variable> variables;
  RuleGraph lhs;
  RuleGraph rhs;
  std::vector<std::string> interface;
  std::optional<Condition> condition;

  // Filled by resolve_rule: kNoIndex marks deleted lhs / created rhs nodes.
  std::vector<std::size_t> rhs_of_lhs;
  std::vector<std::size_t> lhs_of_rhs;
  // Rhs edge -> lhs edge with the same id and corresponding endpoints. The
  // recreated host edge inherits the deleted one's name.
  std::vector<std::size_t> lhs_edge_of_rhs;
  bool resolved = false;
};

struct RuleDiagnostic {
  std::string rule;
  std::string message;

  std::string to_string() const { return "rule " + rule + ": " + message; }
};

std::vector<RuleDiagnostic> validate_rule(const Rule& rule);

/// Computes index cross references. Throws ContractViolation when the rule
/// does not validate.
void resolve_rule(Rule& rule);

enum class RuleSpeed { fast, slow };

/// Fast iff every connected component of the lhs contains a root node.
RuleSpeed classify_rule(const Rule& rule);

/// Swaps the two sides. The condition is dropped.
Rule inverse_rule(const Rule& rule);

}  // namespace gp2
