#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "gp2/graph.hpp"

namespace gp2 {

/// discrete(n): n isolated nodes. btree(d): full binary tree of depth d with
/// parent-to-child edges. grid(k): k*k nodes with edges right and down.
/// path(n): n0 -> n1 -> ... -> n(n-1). cycle(n): path(n) plus n(n-1) -> n0.
enum class GeneratorKind { discrete, btree, grid, path, cycle };

std::string_view to_string(GeneratorKind kind) noexcept;
std::optional<GeneratorKind> parse_generator_kind(std::string_view name) noexcept;

/// Nodes are named n0, n1, ... in creation order and edges e0, e1, ...; all
/// labels are empty. Throws std::invalid_argument for a size the kind does not
/// accept (zero, except btree depth 0, or a btree deeper than 40).
Graph generate(GeneratorKind kind, std::size_t size);

/// Node count of generate(kind, size) without building it.
std::size_t generated_node_count(GeneratorKind kind, std::size_t size);

}  // namespace gp2
