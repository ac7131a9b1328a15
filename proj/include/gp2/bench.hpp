#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gp2/generators.hpp"
#include "gp2/interpreter.hpp"
#include "gp2/program.hpp"

namespace gp2 {

struct RunOutcome {
  ExecStatus status = ExecStatus::success;
  std::uint64_t steps = 0;  // matching work plus mutations during execution
  double ms = 0.0;          // wall time of execution only
};

/// Executes a validated program on `graph` with a fresh step count.
RunOutcome run_program(const Program& program, Graph& graph, const ExecOptions& options = {});

struct BenchRecord {
  std::string program;
  std::string kind;
  std::size_t size = 0;  // node count of the generated input
  double ms = 0.0;
  std::uint64_t steps = 0;
  bool failed = false;   // program failed or aborted on this input
  std::string error;
};

struct BenchOptions {
  ExecOptions exec;
  std::size_t repeats = 3;
};

/// One record per generator parameter, each the fastest of `repeats` runs.
/// Failures are recorded in the row; later sizes still run.
std::vector<BenchRecord> bench(const Program& program, const std::string& program_name, GeneratorKind kind,
                               const std::vector<std::size_t>& parameters, const BenchOptions& options = {});

inline constexpr const char* kBenchCsvHeader = "program,kind,size,ms,steps";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace gp2
