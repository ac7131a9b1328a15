#include "gp2/label.hpp"

#include <algorithm>
#include <span>

#include "gp2/error.hpp"

namespace gp2 {

std::string_view to_string(NodeMark mark) noexcept {
  switch (mark) {
    case NodeMark::none: return "none";
    case NodeMark::red: return "red";
    case NodeMark::green: return "green";
    case NodeMark::blue: return "blue";
    case NodeMark::grey: return "grey";
  }
  return "none";
}

std::string_view to_string(EdgeMark mark) noexcept {
  switch (mark) {
    case EdgeMark::none: return "none";
    case EdgeMark::red: return "red";
    case EdgeMark::green: return "green";
    case EdgeMark::blue: return "blue";
    case EdgeMark::dashed: return "dashed";
  }
  return "none";
}

std::optional<NodeMark> parse_node_mark(std::string_view name) noexcept {
  if (name == "red") return NodeMark::red;
  if (name == "green") return NodeMark::green;
  if (name == "blue") return NodeMark::blue;
  if (name == "grey") return NodeMark::grey;
  return std::nullopt;
}

std::optional<EdgeMark> parse_edge_mark(std::string_view name) noexcept {
  if (name == "red") return EdgeMark::red;
  if (name == "green") return EdgeMark::green;
  if (name == "blue") return EdgeMark::blue;
  if (name == "dashed") return EdgeMark::dashed;
  return std::nullopt;
}

std::string_view to_string(VarType type) noexcept {
  switch (type) {
    case VarType::integer: return "int";
    case VarType::string: return "string";
    case VarType::atom: return "atom";
    case VarType::list: return "list";
  }
  return "list";
}

std::optional<VarType> parse_var_type(std::string_view name) noexcept {
  if (name == "int") return VarType::integer;
  if (name == "string") return VarType::string;
  if (name == "atom") return VarType::atom;
  if (name == "list") return VarType::list;
  return std::nullopt;
}

bool conforms(VarType type, const Atom& atom) noexcept {
  switch (type) {
    case VarType::integer: return std::holds_alternative<std::int64_t>(atom);
    case VarType::string: return std::holds_alternative<std::string>(atom);
    case VarType::atom:
    case VarType::list: return true;
  }
  return false;
}

std::size_t RuleLabel::list_variable_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const RuleItem& item) {
    const auto* var = std::get_if<Variable>(&item);
    return var != nullptr && var->type == VarType::list;
  }));
}

const std::vector<Atom>* Binding::find(std::string_view name) const noexcept {
  for (const auto& [key, value] : entries_) {
    if (key == name) return &value;
  }
  return nullptr;
}

void Binding::bind(std::string name, std::vector<Atom> value) {
  GP2_CHECK(find(name) == nullptr, "Binding: variable bound twice: " + name);
  entries_.emplace_back(std::move(name), std::move(value));
}

namespace {

bool match_item(const RuleItem& item, const Atom& value, Binding& env) {
  if (const auto* constant = std::get_if<Atom>(&item)) return *constant == value;
  const auto& var = std::get<Variable>(item);
  if (!conforms(var.type, value)) return false;
  if (const auto* bound = env.find(var.name)) return bound->size() == 1 && bound->front() == value;
  env.bind(var.name, {value});
  return true;
}

bool match_fragment(const Variable& var, std::span<const Atom> fragment, Binding& env) {
  if (const auto* bound = env.find(var.name)) {
    return std::equal(bound->begin(), bound->end(), fragment.begin(), fragment.end());
  }
  env.bind(var.name, std::vector<Atom>(fragment.begin(), fragment.end()));
  return true;
}

bool match_items(const RuleLabel& pattern, const HostLabel& value, Binding& env) {
  const auto& items = pattern.items;
  const auto& atoms = value.items;
  const auto list_pos = std::find_if(items.begin(), items.end(), [](const RuleItem& item) {
    const auto* var = std::get_if<Variable>(&item);
    return var != nullptr && var->type == VarType::list;
  });

  if (list_pos == items.end()) {
    if (items.size() != atoms.size()) return false;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!match_item(items[i], atoms[i], env)) return false;
    }
    return true;
  }

  // The fixed-length prefix and suffix force a unique split for the list variable.
  const auto prefix = static_cast<std::size_t>(list_pos - items.begin());
  const std::size_t suffix = items.size() - prefix - 1;
  if (atoms.size() < prefix + suffix) return false;
  for (std::size_t i = 0; i < prefix; ++i) {
    if (!match_item(items[i], atoms[i], env)) return false;
  }
  for (std::size_t i = 0; i < suffix; ++i) {
    if (!match_item(items[prefix + 1 + i], atoms[atoms.size() - suffix + i], env)) return false;
  }
  const std::span<const Atom> middle(atoms.data() + prefix, atoms.size() - prefix - suffix);
  return match_fragment(std::get<Variable>(*list_pos), middle, env);
}

void append_escaped(std::string& out, const std::string& text) {
  out.push_back('"');
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

bool match_label_into(const RuleLabel& pattern, const HostLabel& value, Binding& env) {
  const std::size_t mark = env.size();
  if (match_items(pattern, value, env)) return true;
  env.truncate(mark);
  return false;
}

std::optional<Binding> match_label(const RuleLabel& pattern, const HostLabel& value, const Binding& env) {
  Binding extended = env;
  if (!match_label_into(pattern, value, extended)) return std::nullopt;
  return extended;
}

HostLabel instantiate(const RuleLabel& pattern, const Binding& env) {
  HostLabel out;
  out.items.reserve(pattern.items.size());
  for (const auto& item : pattern.items) {
    if (const auto* constant = std::get_if<Atom>(&item)) {
      out.items.push_back(*constant);
      continue;
    }
    const auto& var = std::get<Variable>(item);
    const auto* bound = env.find(var.name);
    GP2_CHECK(bound != nullptr, "instantiate: unbound variable " + var.name);
    out.items.insert(out.items.end(), bound->begin(), bound->end());
  }
  return out;
}

std::string format_atom(const Atom& atom) {
  if (const auto* n = std::get_if<std::int64_t>(&atom)) return std::to_string(*n);
  std::string out;
  append_escaped(out, std::get<std::string>(atom));
  return out;
}

std::string format_label(const HostLabel& label) {
  if (label.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < label.items.size(); ++i) {
    if (i != 0) out += ':';
    out += format_atom(label.items[i]);
  }
  return out;
}

std::string format_label(const RuleLabel& label) {
  if (label.items.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < label.items.size(); ++i) {
    if (i != 0) out += ':';
    if (const auto* constant = std::get_if<Atom>(&label.items[i])) {
      out += format_atom(*constant);
    } else {
      out += std::get<Variable>(label.items[i]).name;
    }
  }
  return out;
}

}  // namespace gp2
