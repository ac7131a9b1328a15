#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gp2 {

using Atom = std::variant<std::int64_t, std::string>;

/// A host label: a possibly empty list of integer/string atoms.
struct HostLabel {
  std::vector<Atom> items;

  HostLabel() = default;
  HostLabel(std::initializer_list<Atom> atoms) : items(atoms) {}
  explicit HostLabel(std::vector<Atom> atoms) : items(std::move(atoms)) {}

  bool empty() const noexcept { return items.empty(); }
  std::size_t size() const noexcept { return items.size(); }
  bool operator==(const HostLabel&) const = default;
};

enum class NodeMark : std::uint8_t { none, red, green, blue, grey };
enum class EdgeMark : std::uint8_t { none, red, green, blue, dashed };

std::string_view to_string(NodeMark mark) noexcept;
std::string_view to_string(EdgeMark mark) noexcept;
std::optional<NodeMark> parse_node_mark(std::string_view name) noexcept;
std::optional<EdgeMark> parse_edge_mark(std::string_view name) noexcept;

enum class VarType : std::uint8_t { integer, string, atom, list };

std::string_view to_string(VarType type) noexcept;
std::optional<VarType> parse_var_type(std::string_view name) noexcept;

/// Whether a single atom is a legal value for a non-list variable of `type`.
bool conforms(VarType type, const Atom& atom) noexcept;

struct Variable {
  std::string name;
  VarType type = VarType::list;
  bool operator==(const Variable&) const = default;
};

using RuleItem = std::variant<Atom, Variable>;

/// A rule label: constants and typed variables. At most one list variable.
struct RuleLabel {
  std::vector<RuleItem> items;

  RuleLabel() = default;
  RuleLabel(std::initializer_list<RuleItem> list) : items(list) {}
  explicit RuleLabel(std::vector<RuleItem> list) : items(std::move(list)) {}

  std::size_t list_variable_count() const noexcept;
  bool operator==(const RuleLabel&) const = default;
};

/// Variable assignment accumulated while matching. Values are atom lists;
/// non-list variables are bound to singletons.
class Binding {
 public:
  using Entry = std::pair<std::string, std::vector<Atom>>;

  const std::vector<Atom>* find(std::string_view name) const noexcept;
  void bind(std::string name, std::vector<Atom> value);

  std::size_t size() const noexcept { return entries_.size(); }
  void truncate(std::size_t size) { entries_.resize(size); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  bool operator==(const Binding&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// Extends `env` so that instantiate(pattern, env) == value. On failure env is
/// left exactly as it was and false is returned.
bool match_label_into(const RuleLabel& pattern, const HostLabel& value, Binding& env);

std::optional<Binding> match_label(const RuleLabel& pattern, const HostLabel& value, const Binding& env);

/// Throws ContractViolation if a variable of `pattern` is unbound.
HostLabel instantiate(const RuleLabel& pattern, const Binding& env);

std::string format_atom(const Atom& atom);
std::string format_label(const HostLabel& label);
std::string format_label(const RuleLabel& label);

}  // namespace gp2
