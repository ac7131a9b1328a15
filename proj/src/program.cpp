#include "gp2/program.hpp"

#include <set>

namespace gp2 {

Command Command::call(std::string name) {
  Command c;
  c.kind = Kind::call;
  c.names.push_back(std::move(name));
  return c;
}

Command Command::rule_set(std::vector<std::string> names) {
  Command c;
  c.kind = Kind::rule_set;
  c.names = std::move(names);
  return c;
}

Command Command::sequence(std::vector<Command> commands) {
  Command c;
  c.kind = Kind::sequence;
  c.children = std::move(commands);
  return c;
}

Command Command::loop(Command body) {
  Command c;
  c.kind = Kind::loop;
  c.children.push_back(std::move(body));
  return c;
}

Command Command::if_then_else(Command condition, Command then_branch, Command else_branch) {
  Command c;
  c.kind = Kind::if_then_else;
  c.children.push_back(std::move(condition));
  c.children.push_back(std::move(then_branch));
  c.children.push_back(std::move(else_branch));
  return c;
}

Command Command::try_then_else(Command condition, Command then_branch, Command else_branch) {
  Command c = if_then_else(std::move(condition), std::move(then_branch), std::move(else_branch));
  c.kind = Kind::try_then_else;
  return c;
}

Command Command::break_loop() {
  Command c;
  c.kind = Kind::break_loop;
  return c;
}

Command Command::fail() {
  Command c;
  c.kind = Kind::fail;
  return c;
}

Command Command::skip() { return Command{}; }

std::size_t Program::rule_index(const std::string& name) const noexcept {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].name == name) return i;
  }
  return kNoIndex;
}

namespace {

class Expander {
 public:
  Expander(Program& program, std::vector<std::string>& errors) : program_(program), errors_(errors) {}

  // Returns false once an error makes further expansion pointless.
  bool expand(Command& c, bool in_loop) {
    switch (c.kind) {
      case Command::Kind::call: return expand_call(c, in_loop);
      case Command::Kind::rule_set:
        c.rules.clear();
        for (const auto& name : c.names) {
          const std::size_t index = program_.rule_index(name);
          if (index == kNoIndex) {
            errors_.push_back("rule set refers to unknown rule " + name);
            return false;
          }
          c.rules.push_back(index);
        }
        return true;
      case Command::Kind::loop: return expand(c.children[0], true);
      case Command::Kind::if_then_else:
      case Command::Kind::try_then_else:
      case Command::Kind::sequence:
        for (auto& child : c.children) {
          if (!expand(child, in_loop)) return false;
        }
        return true;
      case Command::Kind::break_loop:
        if (!in_loop) {
          errors_.push_back("break outside a loop");
          return false;
        }
        return true;
      case Command::Kind::fail:
      case Command::Kind::skip: return true;
    }
    return true;
  }

 private:
  bool expand_call(Command& c, bool in_loop) {
    const std::string name = c.names.front();
    if (const std::size_t index = program_.rule_index(name); index != kNoIndex) {
      c.rules.assign(1, index);
      return true;
    }
    const auto proc = program_.procedures.find(name);
    if (proc == program_.procedures.end()) {
      errors_.push_back("call to unknown rule or procedure " + name);
      return false;
    }
    if (!active_.insert(name).second) {
      errors_.push_back("procedure " + name + " is recursive");
      return false;
    }
    Command body = proc->second;
    const bool ok = expand(body, in_loop);
    active_.erase(name);
    c = std::move(body);
    return ok;
  }

  Program& program_;
  std::vector<std::string>& errors_;
  std::set<std::string> active_;
};

}  // namespace

std::vector<std::string> validate_program(Program& program) {
  std::vector<std::string> errors;
  program.validated = false;

  std::set<std::string> names;
  for (const auto& r : program.rules) {
    if (!names.insert(r.name).second) errors.push_back("duplicate declaration " + r.name);
  }
  for (const auto& [name, body] : program.procedures) {
    if (!names.insert(name).second) errors.push_back("duplicate declaration " + name);
  }
  for (auto& r : program.rules) {
    const auto problems = validate_rule(r);
    for (const auto& p : problems) errors.push_back(p.to_string());
    if (problems.empty()) resolve_rule(r);
  }
  if (!errors.empty()) return errors;

  const auto main = program.procedures.find("Main");
  if (main == program.procedures.end()) {
    errors.push_back("program has no Main procedure");
    return errors;
  }
  Command expanded = Command::call("Main");
  Expander(program, errors).expand(expanded, false);
  if (errors.empty()) {
    program.main = std::move(expanded);
    program.validated = true;
  }
  return errors;
}

}  // namespace gp2
