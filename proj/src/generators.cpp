#include "gp2/generators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gp2 {

std::string_view to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::discrete: return "discrete";
    case GeneratorKind::btree: return "btree";
    case GeneratorKind::grid: return "grid";
    case GeneratorKind::path: return "path";
    case GeneratorKind::cycle: return "cycle";
  }
  return "discrete";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) noexcept {
  for (const auto kind : {GeneratorKind::discrete, GeneratorKind::btree, GeneratorKind::grid, GeneratorKind::path,
                          GeneratorKind::cycle}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::size_t generated_node_count(GeneratorKind kind, std::size_t size) {
  if (kind == GeneratorKind::btree) {
    if (size > 40) throw std::invalid_argument("btree depth must be at most 40");
    return (std::size_t{1} << (size + 1)) - 1;
  }
  if (size == 0) throw std::invalid_argument(std::string(to_string(kind)) + " size must be positive");
  if (kind == GeneratorKind::grid) return size * size;
  return size;
}

Graph generate(GeneratorKind kind, std::size_t size) {
  const std::size_t n = generated_node_count(kind, size);
  Graph g;
  std::vector<NodeHandle> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(g.add_node({}, NodeMark::none, false, "n" + std::to_string(i)));

  std::size_t edge_id = 0;
  auto connect = [&](std::size_t from, std::size_t to) {
    g.add_edge(nodes[from], nodes[to], {}, EdgeMark::none, "e" + std::to_string(edge_id++));
  };
  switch (kind) {
    case GeneratorKind::discrete: break;
    case GeneratorKind::btree:
      for (std::size_t i = 0; 2 * i + 2 < n; ++i) {
        connect(i, 2 * i + 1);
        connect(i, 2 * i + 2);
      }
      break;
    case GeneratorKind::grid:
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
          if (c + 1 < size) connect(r * size + c, r * size + c + 1);
          if (r + 1 < size) connect(r * size + c, (r + 1) * size + c);
        }
      }
      break;
    case GeneratorKind::path:
    case GeneratorKind::cycle:
      for (std::size_t i = 0; i + 1 < n; ++i) connect(i, i + 1);
      if (kind == GeneratorKind::cycle) connect(n - 1, 0);
      break;
  }
  g.reset_steps();
  return g;
}

}  // namespace gp2
