#include "gp2/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

namespace gp2 {

RunOutcome run_program(const Program& program, Graph& graph, const ExecOptions& options) {
  Interpreter interpreter(program, options);
  graph.reset_steps();
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  outcome.status = interpreter.run(graph);
  const auto stop = std::chrono::steady_clock::now();
  outcome.ms = std::chrono::duration<double, std::milli>(stop - start).count();
  outcome.steps = graph.steps();
  return outcome;
}

std::vector<BenchRecord> bench(const Program& program, const std::string& program_name, GeneratorKind kind,
                               const std::vector<std::size_t>& parameters, const BenchOptions& options) {
  std::vector<BenchRecord> records;
  for (const std::size_t parameter : parameters) {
    BenchRecord record;
    record.program = program_name;
    record.kind = std::string(to_string(kind));
    try {
      record.size = generated_node_count(kind, parameter);
      const std::size_t repeats = std::max<std::size_t>(options.repeats, 1);
      for (std::size_t r = 0; r < repeats; ++r) {
        Graph g = generate(kind, parameter);
        const RunOutcome outcome = run_program(program, g, options.exec);
        record.ms = r == 0 ? outcome.ms : std::min(record.ms, outcome.ms);
        record.steps = outcome.steps;
        if (outcome.status == ExecStatus::fail) {
          record.failed = true;
          record.error = "program failed";
        }
      }
    } catch (const std::exception& e) {
      record.failed = true;
      record.error = e.what();
    }
    records.push_back(std::move(record));
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : records) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.ms);
    out << r.program << ',' << r.kind << ',' << r.size << ',' << ms << ',' << r.steps << '\n';
  }
}

}  // namespace gp2
