#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gp2/graph.hpp"
#include "gp2/program.hpp"

namespace gp2 {

struct SourceDiagnostic {
  std::size_t line = 0;  // 1-based
  std::size_t column = 0;
  std::string message;

  std::string to_string() const;
};

template <class T>
struct ParseResult {
  std::optional<T> value;
  std::vector<SourceDiagnostic> diagnostics;

  bool ok() const noexcept { return value.has_value(); }
};

/// Host graph text:
///   [ (id(R), label # mark) ... | (eid, source, target, label # mark) ... ]
/// Node and edge ids are kept as element names. Malformed input yields
/// diagnostics and no graph.
ParseResult<Graph> parse_host_graph(std::string_view text);

/// Rule and procedure declarations. The result is already validated.
ParseResult<Program> parse_program(std::string_view text);

/// Writes the graph in host syntax with nodes oldest first and edges grouped
/// by source. Elements without a name get a fresh id. An empty graph is `[ | ]`.
std::string serialize_graph(const Graph& graph);

}  // namespace gp2
