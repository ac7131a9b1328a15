#include "gp2/interpreter.hpp"

#include <string>

#include "gp2/error.hpp"

namespace gp2 {

namespace {

// A command that either succeeds or leaves the graph untouched.
bool atomic(const Command& c) {
  switch (c.kind) {
    case Command::Kind::call:
    case Command::Kind::rule_set:
    case Command::Kind::fail:
    case Command::Kind::skip: return true;
    default: return false;
  }
}

}  // namespace

Interpreter::Interpreter(const Program& program, ExecOptions options) : program_(program), options_(options) {
  GP2_CHECK(program.validated, "Interpreter: program is not validated");
  plans_.reserve(program.rules.size());
  for (const auto& rule : program.rules) plans_.push_back(build_search_plan(rule, options_.mode));
}

ExecStatus Interpreter::run(Graph& graph) {
  UndoLog log;
  const ExecStatus status = exec(program_.main, graph, log);
  return status == ExecStatus::fail ? ExecStatus::fail : ExecStatus::success;
}

void Interpreter::check_limit(const Graph& graph) const {
  if (options_.step_limit && graph.steps() > *options_.step_limit) {
    throw StepLimitExceeded("step limit of " + std::to_string(*options_.step_limit) + " exceeded");
  }
}

ExecStatus Interpreter::apply_first(const Command& c, Graph& graph, UndoLog& log) {
  for (const std::size_t index : c.rules) {
    const Rule& rule = program_.rules[index];
    if (auto match = find_match(graph, rule, plans_[index])) {
      apply(graph, rule, *match, log);
      ++applications_;
      return ExecStatus::success;
    }
  }
  return ExecStatus::fail;
}

bool Interpreter::has_match(const Command& c, const Graph& graph) {
  check_limit(graph);
  for (const std::size_t index : c.rules) {
    if (find_match(graph, program_.rules[index], plans_[index])) return true;
  }
  return false;
}

ExecStatus Interpreter::exec(const Command& c, Graph& graph, UndoLog& log) {
  graph.tick();
  check_limit(graph);
  switch (c.kind) {
    case Command::Kind::call:
    case Command::Kind::rule_set:
      GP2_CHECK(!c.rules.empty(), "exec: unresolved call " + (c.names.empty() ? std::string{} : c.names.front()));
      return apply_first(c, graph, log);

    case Command::Kind::sequence:
      for (const auto& child : c.children) {
        if (const ExecStatus s = exec(child, graph, log); s != ExecStatus::success) return s;
      }
      return ExecStatus::success;

    case Command::Kind::loop: {
      const Command& body = c.children[0];
      if (atomic(body)) {
        while (exec(body, graph, log) == ExecStatus::success) {
        }
        return ExecStatus::success;
      }
      for (;;) {
        const UndoLog::Frame frame = log.open();
        const ExecStatus s = exec(body, graph, log);
        if (s == ExecStatus::fail) {
          log.rollback(graph, frame);
          return ExecStatus::success;
        }
        log.commit(graph, frame);
        if (s == ExecStatus::break_loop) return ExecStatus::success;
      }
    }

    case Command::Kind::if_then_else: {
      const Command& cond = c.children[0];
      bool holds;
      if (cond.kind == Command::Kind::call || cond.kind == Command::Kind::rule_set) {
        // The condition's effect is discarded anyway, so finding a match suffices.
        holds = has_match(cond, graph);
      } else {
        const UndoLog::Frame frame = log.open();
        holds = exec(cond, graph, log) == ExecStatus::success;
        log.rollback(graph, frame);
      }
      return exec(c.children[holds ? 1 : 2], graph, log);
    }

    case Command::Kind::try_then_else: {
      const Command& cond = c.children[0];
      if (atomic(cond)) {
        const bool holds = exec(cond, graph, log) == ExecStatus::success;
        return exec(c.children[holds ? 1 : 2], graph, log);
      }
      const UndoLog::Frame frame = log.open();
      if (exec(cond, graph, log) == ExecStatus::success) {
        log.commit(graph, frame);
        return exec(c.children[1], graph, log);
      }
      log.rollback(graph, frame);
      return exec(c.children[2], graph, log);
    }

    case Command::Kind::break_loop: return ExecStatus::break_loop;
    case Command::Kind::fail: return ExecStatus::fail;
    case Command::Kind::skip: return ExecStatus::success;
  }
  return ExecStatus::fail;
}

}  // namespace gp2
