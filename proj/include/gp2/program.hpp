#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gp2/rule.hpp"

namespace gp2 {

struct Command {
  enum class Kind { call, rule_set, sequence, loop, if_then_else, try_then_else, break_loop, fail, skip };

  Kind kind = Kind::skip;
  // call: one name (rule or procedure); rule_set: the rule names in order.
  std::vector<std::string> names;
  // Filled by validate_program for call / rule_set once names resolve to rules.
  std::vector<std::size_t> rules;
  // sequence: the commands; loop: body; if / try: condition, then, else.
  std::vector<Command> children;

  static Command call(std::string name);
  static Command rule_set(std::vector<std::string> names);
  static Command sequence(std::vector<Command> commands);
  static Command loop(Command body);
  static Command if_then_else(Command condition, Command then_branch, Command else_branch);
  static Command try_then_else(Command condition, Command then_branch, Command else_branch);
  static Command break_loop();
  static Command fail();
  static Command skip();

  bool operator==(const Command& other) const {
    return kind == other.kind && names == other.names && children == other.children;
  }
};

struct Program {
  std::vector<Rule> rules;
  std::map<std::string, Command> procedures;  // must contain "Main"

  // Filled by validate_program: Main with every procedure call expanded.
  Command main;
  bool validated = false;

  std::size_t rule_index(const std::string& name) const noexcept;
};

/// Resolves names, expands procedure calls and resolves every rule. Reports
/// invalid rules, unknown names, recursive procedures, a missing Main, and
/// break outside a loop. The program is usable only when the result is empty.
std::vector<std::string> validate_program(Program& program);

}  // namespace gp2
