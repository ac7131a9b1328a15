#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gp2/bench.hpp"
#include "gp2/generators.hpp"
#include "gp2/parser.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

void report(const std::string& path, const std::vector<gp2::SourceDiagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << path << ':' << d.to_string() << '\n';
}

std::optional<gp2::Program> load_program(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "gp2: cannot read " << path << '\n';
    return std::nullopt;
  }
  auto parsed = gp2::parse_program(text);
  if (!parsed.ok()) {
    report(path, parsed.diagnostics);
    return std::nullopt;
  }
  return std::move(parsed.value);
}

std::string program_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  if (const auto dot = name.rfind(".gp2"); dot != std::string::npos && dot + 4 == name.size()) name.resize(dot);
  return name;
}

int run_command(const std::string& program_path, const std::string& host_path, gp2::MatchMode mode,
                const std::string& output, bool time) {
  auto program = load_program(program_path);
  if (!program) return kExitInvalid;
  std::string text;
  if (!read_file(host_path, text)) {
    std::cerr << "gp2: cannot read " << host_path << '\n';
    return kExitInvalid;
  }
  auto host = gp2::parse_host_graph(text);
  if (!host.ok()) {
    report(host_path, host.diagnostics);
    return kExitInvalid;
  }

  gp2::ExecOptions options;
  options.mode = mode;
  gp2::RunOutcome outcome;
  try {
    outcome = gp2::run_program(*program, *host.value, options);
  } catch (const std::exception& e) {
    std::cerr << "gp2: " << e.what() << '\n';
    return kExitRuntime;
  }
  if (time) std::cerr << "time: " << outcome.ms << " ms, steps: " << outcome.steps << '\n';
  if (outcome.status == gp2::ExecStatus::fail) {
    std::cout << "Fail\n";
    return kExitFail;
  }
  if (!write_output(output, gp2::serialize_graph(*host.value) + "\n")) {
    std::cerr << "gp2: cannot write " << output << '\n';
    return kExitRuntime;
  }
  return 0;
}

int gen_command(const std::string& kind_name, std::size_t size, const std::string& out) {
  const auto kind = gp2::parse_generator_kind(kind_name);
  if (!kind) {
    std::cerr << "gp2: unknown generator kind " << kind_name << '\n';
    return kExitInvalid;
  }
  try {
    const gp2::Graph g = gp2::generate(*kind, size);
    if (!write_output(out, gp2::serialize_graph(g) + "\n")) {
      std::cerr << "gp2: cannot write " << out << '\n';
      return kExitRuntime;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "gp2: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}

int bench_command(const std::string& program_path, const std::string& kind_name,
                  const std::vector<std::size_t>& sizes, std::size_t repeats, gp2::MatchMode mode,
                  const std::string& csv) {
  auto program = load_program(program_path);
  if (!program) return kExitInvalid;
  const auto kind = gp2::parse_generator_kind(kind_name);
  if (!kind) {
    std::cerr << "gp2: unknown generator kind " << kind_name << '\n';
    return kExitInvalid;
  }
  gp2::BenchOptions options;
  options.exec.mode = mode;
  options.repeats = repeats;
  const auto records = gp2::bench(*program, program_name(program_path), *kind, sizes, options);
  for (const auto& r : records) {
    if (r.failed) std::cerr << "gp2: " << r.program << " on " << r.kind << " size " << r.size << ": " << r.error << '\n';
  }
  std::ostringstream text;
  gp2::write_csv(text, records);
  if (!write_output(csv, text.str())) {
    std::cerr << "gp2: cannot write " << csv << '\n';
    return kExitRuntime;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GP 2 graph program interpreter"};
  app.require_subcommand(1);

  const auto modes = CLI::IsMember({"preserving", "reflecting"});

  std::string program_path, host_path, output;
  std::string mode = "reflecting";
  bool time = false;
  auto* run = app.add_subcommand("run", "Run a program on a host graph");
  run->add_option("PROGRAM", program_path, "Program file")->required();
  run->add_option("HOST", host_path, "Host graph file")->required();
  run->add_option("--mode", mode, "Matching semantics")->check(modes);
  run->add_option("--output", output, "Write the result graph here instead of stdout");
  run->add_flag("--time", time, "Print execution time and step count to stderr");

  std::string kind;
  std::size_t size = 0;
  std::string out;
  auto* gen = app.add_subcommand("gen", "Generate a host graph");
  gen->add_option("KIND", kind, "discrete, btree, grid, path or cycle")->required();
  gen->add_option("SIZE", size, "Node count, or depth for btree, or side length for grid")->required();
  gen->add_option("--out", out, "Output file");

  std::string bench_program, bench_kind, csv;
  std::vector<std::size_t> sizes;
  std::size_t repeats = 3;
  std::string bench_mode = "reflecting";
  auto* bench = app.add_subcommand("bench", "Time a program on generated graphs");
  bench->add_option("PROGRAM", bench_program, "Program file")->required();
  bench->add_option("--kind", bench_kind, "Generator kind")->required();
  bench->add_option("--sizes", sizes, "Generator parameters, comma separated")->delimiter(',');
  bench->add_option("--repeats", repeats, "Runs per size; the fastest is reported")->check(CLI::PositiveNumber);
  bench->add_option("--mode", bench_mode, "Matching semantics")->check(modes);
  bench->add_option("--csv", csv, "CSV output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (*run) return run_command(program_path, host_path, *gp2::parse_match_mode(mode), output, time);
  if (*gen) return gen_command(kind, size, out);
  return bench_command(bench_program, bench_kind, sizes, repeats, *gp2::parse_match_mode(bench_mode), csv);
}
