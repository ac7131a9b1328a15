#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gp2/graph.hpp"
#include "gp2/match.hpp"
#include "gp2/program.hpp"
#include "gp2/undo_log.hpp"

namespace gp2 {

enum class ExecStatus { success, fail, break_loop };

class StepLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExecOptions {
  MatchMode mode = MatchMode::reflecting;
  // Abort with StepLimitExceeded once the graph step counter passes this.
  std::optional<std::uint64_t> step_limit;
};

class Interpreter {
 public:
  /// `program` must be validated and outlive the interpreter.
  explicit Interpreter(const Program& program, ExecOptions options = {});

  /// Runs Main. The graph is left in the final state; on failure that is the
  /// state reached when the failing command gave up.
  ExecStatus run(Graph& graph);

  ExecStatus exec(const Command& command, Graph& graph, UndoLog& log);

  std::uint64_t rule_applications() const noexcept { return applications_; }
  const SearchPlan& plan(std::size_t rule) const { return plans_.at(rule); }

 private:
  ExecStatus apply_first(const Command& command, Graph& graph, UndoLog& log);
  bool has_match(const Command& command, const Graph& graph);
  void check_limit(const Graph& graph) const;

  const Program& program_;
  ExecOptions options_;
  std::vector<SearchPlan> plans_;
  std::uint64_t applications_ = 0;
};

}  // namespace gp2
