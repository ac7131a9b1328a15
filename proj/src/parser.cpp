#include "gp2/parser.hpp"

#include <charconv>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace gp2 {

std::string SourceDiagnostic::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {

struct SyntaxError {
  std::size_t line;
  std::size_t column;
  std::string message;
};

enum class Tok {
  lbrack, rbrack, lparen, rparen, lbrace, rbrace, bar, comma, colon, semicolon,
  hash, equals, not_equals, bang, arrow, string, integer, ident, end
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::lbrack: return "'['";
    case Tok::rbrack: return "']'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::bar: return "'|'";
    case Tok::comma: return "','";
    case Tok::colon: return "':'";
    case Tok::semicolon: return "';'";
    case Tok::hash: return "'#'";
    case Tok::equals: return "'='";
    case Tok::not_equals: return "'!='";
    case Tok::bang: return "'!'";
    case Tok::arrow: return "'=>'";
    case Tok::string: return "string";
    case Tok::integer: return "integer";
    case Tok::ident: return "identifier";
    case Tok::end: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::end;
  std::string_view text;  // raw lexeme; string tokens exclude the quotes
  bool escaped = false;   // string contains backslash escapes
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const noexcept { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  char at(std::size_t i) const noexcept { return i < text_.size() ? text_[i] : '\0'; }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError{line_, col_, message}; }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        bump();
      } else if (c == '/' && at(pos_ + 1) == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (c == '/' && at(pos_ + 1) == '*') {
        const std::size_t line = line_, col = col_;
        bump();
        bump();
        while (pos_ < text_.size() && !(text_[pos_] == '*' && at(pos_ + 1) == '/')) bump();
        if (pos_ >= text_.size()) throw SyntaxError{line, col, "unterminated comment"};
        bump();
        bump();
      } else {
        break;
      }
    }
  }

  static bool ident_start(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool digit(char c) noexcept { return c >= '0' && c <= '9'; }

  void advance() {
    skip_trivia();
    current_ = Token{};
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= text_.size()) return;

    const std::size_t start = pos_;
    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      bump();
      current_.kind = kind;
      current_.text = text_.substr(start, 1);
    };
    switch (c) {
      case '[': return single(Tok::lbrack);
      case ']': return single(Tok::rbrack);
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case '{': return single(Tok::lbrace);
      case '}': return single(Tok::rbrace);
      case '|': return single(Tok::bar);
      case ',': return single(Tok::comma);
      case ':': return single(Tok::colon);
      case ';': return single(Tok::semicolon);
      case '#': return single(Tok::hash);
      case '=':
        if (at(pos_ + 1) == '>') {
          bump();
          bump();
          current_.kind = Tok::arrow;
          current_.text = text_.substr(start, 2);
          return;
        }
        return single(Tok::equals);
      case '!':
        if (at(pos_ + 1) == '=') {
          bump();
          bump();
          current_.kind = Tok::not_equals;
          current_.text = text_.substr(start, 2);
          return;
        }
        return single(Tok::bang);
      case '"': {
        bump();
        const std::size_t body = pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
          if (text_[pos_] == '\\') {
            current_.escaped = true;
            bump();
            if (pos_ >= text_.size()) break;
            if (text_[pos_] != '"' && text_[pos_] != '\\') fail("unknown escape sequence in string");
          }
          bump();
        }
        if (pos_ >= text_.size()) throw SyntaxError{current_.line, current_.column, "unterminated string"};
        current_.kind = Tok::string;
        current_.text = text_.substr(body, pos_ - body);
        bump();
        return;
      }
      default: break;
    }
    if (digit(c) || (c == '-' && digit(at(pos_ + 1)))) {
      bump();
      while (pos_ < text_.size() && digit(text_[pos_])) bump();
      current_.kind = Tok::integer;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (ident_start(c)) {
      while (pos_ < text_.size() && (ident_start(text_[pos_]) || digit(text_[pos_]))) bump();
      current_.kind = Tok::ident;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

std::string unescape(const Token& t) {
  if (!t.escaped) return std::string(t.text);
  std::string out;
  out.reserve(t.text.size());
  for (std::size_t i = 0; i < t.text.size(); ++i) {
    if (t.text[i] == '\\' && i + 1 < t.text.size()) ++i;
    out += t.text[i];
  }
  return out;
}

const std::set<std::string_view>& keywords() {
  static const std::set<std::string_view> words{"if", "then", "else", "try", "break", "fail", "skip",
                                                "interface", "where", "empty", "not", "and", "or"};
  return words;
}

// Shared helpers for both grammars.
class ParserBase {
 public:
  explicit ParserBase(std::string_view text) : lex_(text) {}

 protected:
  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    throw SyntaxError{t.line, t.column, message};
  }

  bool at(Tok kind) const noexcept { return lex_.peek().kind == kind; }

  bool at_word(std::string_view word) const noexcept {
    return lex_.peek().kind == Tok::ident && lex_.peek().text == word;
  }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    lex_.next();
    return true;
  }

  Token expect(Tok kind, const char* context) {
    if (!at(kind)) {
      fail_at(lex_.peek(), std::string("expected ") + describe(kind) + " " + context + ", found " +
                               describe(lex_.peek().kind));
    }
    return lex_.next();
  }

  void expect_word(std::string_view word, const char* context) {
    if (!at_word(word)) fail_at(lex_.peek(), "expected '" + std::string(word) + "' " + context);
    lex_.next();
  }

  // Node and edge ids: identifiers or integer literals, kept verbatim.
  Token expect_id(const char* context) {
    if (at(Tok::ident) || at(Tok::integer)) return lex_.next();
    fail_at(lex_.peek(), std::string("expected an id ") + context + ", found " + describe(lex_.peek().kind));
  }

  Atom parse_atom() {
    const Token t = lex_.next();
    if (t.kind == Tok::string) return unescape(t);
    std::int64_t value = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) fail_at(t, "integer " + std::string(t.text) + " is out of range");
    return value;
  }

  template <class Mark, class ParseMark>
  Mark parse_mark(ParseMark parse, const char* what) {
    if (!accept(Tok::hash)) return Mark::none;
    const Token t = expect(Tok::ident, "after '#'");
    const auto mark = parse(t.text);
    if (!mark) fail_at(t, "bad mark name '" + std::string(t.text) + "' for " + what);
    return *mark;
  }

  Lexer lex_;
};

class HostParser : ParserBase {
 public:
  using ParserBase::ParserBase;

  Graph parse() {
    Graph g;
    expect(Tok::lbrack, "at start of graph");
    while (at(Tok::lparen)) parse_node(g);
    expect(Tok::bar, "between nodes and edges");
    while (at(Tok::lparen)) parse_edge(g);
    expect(Tok::rbrack, "at end of graph");
    if (!at(Tok::end)) fail_at(lex_.peek(), "unexpected input after graph");
    g.reset_steps();
    return g;
  }

 private:
  HostLabel parse_list() {
    HostLabel label;
    if (at_word("empty")) {
      lex_.next();
      return label;
    }
    for (;;) {
      if (!at(Tok::integer) && !at(Tok::string)) {
        fail_at(lex_.peek(), std::string("expected an integer or string in label, found ") +
                                 describe(lex_.peek().kind));
      }
      label.items.push_back(parse_atom());
      if (!accept(Tok::colon)) return label;
    }
  }

  void parse_node(Graph& g) {
    expect(Tok::lparen, "at start of node");
    const Token id = expect_id("for node");
    bool root = false;
    if (accept(Tok::lparen)) {
      const Token r = expect(Tok::ident, "in root tag");
      if (r.text != "R") fail_at(r, "expected root tag (R)");
      expect(Tok::rparen, "after root tag");
      root = true;
    }
    expect(Tok::comma, "after node id");
    HostLabel label = parse_list();
    const NodeMark mark = parse_mark<NodeMark>(parse_node_mark, "a node");
    expect(Tok::rparen, "at end of node");
    if (nodes_.contains(id.text)) fail_at(id, "duplicate node id " + std::string(id.text));
    nodes_.emplace(id.text, g.add_node(std::move(label), mark, root, std::string(id.text)));
  }

  NodeHandle endpoint(const char* what) {
    const Token t = expect_id(what);
    const auto it = nodes_.find(t.text);
    if (it == nodes_.end()) fail_at(t, "edge refers to unknown node " + std::string(t.text));
    return it->second;
  }

  void parse_edge(Graph& g) {
    expect(Tok::lparen, "at start of edge");
    const Token id = expect_id("for edge");
    expect(Tok::comma, "after edge id");
    const NodeHandle source = endpoint("for edge source");
    expect(Tok::comma, "after edge source");
    const NodeHandle target = endpoint("for edge target");
    expect(Tok::comma, "after edge target");
    HostLabel label = parse_list();
    const EdgeMark mark = parse_mark<EdgeMark>(parse_edge_mark, "an edge");
    expect(Tok::rparen, "at end of edge");
    if (!edges_.insert(id.text).second) fail_at(id, "duplicate edge id " + std::string(id.text));
    g.add_edge(source, target, std::move(label), mark, std::string(id.text));
  }

  std::unordered_map<std::string_view, NodeHandle> nodes_;
  std::unordered_set<std::string_view> edges_;
};

class ProgramParser : ParserBase {
 public:
  using ParserBase::ParserBase;

  Program parse(std::vector<SourceDiagnostic>& diagnostics) {
    Program program;
    std::size_t main_line = 1, main_column = 1;
    while (!at(Tok::end)) {
      const Token name = expect(Tok::ident, "at start of declaration");
      check_name(name);
      if (!declared_.insert(std::string(name.text)).second) {
        fail_at(name, "duplicate declaration " + std::string(name.text));
      }
      if (accept(Tok::equals)) {
        if (name.text == "Main") {
          main_line = name.line;
          main_column = name.column;
        }
        program.procedures.emplace(std::string(name.text), parse_comseq());
      } else if (at(Tok::lparen)) {
        program.rules.push_back(parse_rule(name, diagnostics));
      } else {
        fail_at(lex_.peek(), "expected '=' or '(' after " + std::string(name.text));
      }
    }
    if (!diagnostics.empty()) return program;

    for (const Token& ref : references_) {
      if (!declared_.contains(std::string(ref.text))) {
        diagnostics.push_back({ref.line, ref.column, "unknown rule or procedure " + std::string(ref.text)});
      }
    }
    for (const Token& ref : set_members_) {
      if (program.rule_index(std::string(ref.text)) == kNoIndex) {
        diagnostics.push_back({ref.line, ref.column, "rule set member " + std::string(ref.text) + " is not a rule"});
      }
    }
    if (!diagnostics.empty()) return program;
    if (!program.procedures.contains("Main")) {
      diagnostics.push_back({1, 1, "program has no Main procedure"});
      return program;
    }
    for (auto& message : validate_program(program)) {
      diagnostics.push_back({main_line, main_column, std::move(message)});
    }
    return program;
  }

 private:
  void check_name(const Token& t) {
    if (keywords().contains(t.text)) fail_at(t, "'" + std::string(t.text) + "' is a reserved word");
  }

  // Commands.
  Command parse_comseq() {
    std::vector<Command> commands;
    commands.push_back(parse_command());
    while (accept(Tok::semicolon)) commands.push_back(parse_command());
    if (commands.size() == 1) return std::move(commands.front());
    return Command::sequence(std::move(commands));
  }

  Command parse_command() {
    if (at_word("if")) {
      lex_.next();
      Command cond = parse_block();
      expect_word("then", "after if condition");
      Command then_branch = parse_block();
      Command else_branch = Command::skip();
      if (at_word("else")) {
        lex_.next();
        else_branch = parse_block();
      }
      return Command::if_then_else(std::move(cond), std::move(then_branch), std::move(else_branch));
    }
    if (at_word("try")) {
      lex_.next();
      Command cond = parse_block();
      Command then_branch = Command::skip();
      Command else_branch = Command::skip();
      if (at_word("then")) {
        lex_.next();
        then_branch = parse_block();
      }
      if (at_word("else")) {
        lex_.next();
        else_branch = parse_block();
      }
      return Command::try_then_else(std::move(cond), std::move(then_branch), std::move(else_branch));
    }
    return parse_block();
  }

  Command parse_block() {
    Command c;
    if (accept(Tok::lparen)) {
      c = parse_comseq();
      expect(Tok::rparen, "to close command group");
    } else if (accept(Tok::lbrace)) {
      std::vector<std::string> names;
      do {
        const Token t = expect(Tok::ident, "in rule set");
        set_members_.push_back(t);
        names.emplace_back(t.text);
      } while (accept(Tok::comma));
      expect(Tok::rbrace, "to close rule set");
      c = Command::rule_set(std::move(names));
    } else if (at_word("break")) {
      lex_.next();
      c = Command::break_loop();
    } else if (at_word("fail")) {
      lex_.next();
      c = Command::fail();
    } else if (at_word("skip")) {
      lex_.next();
      c = Command::skip();
    } else if (at(Tok::ident) && !keywords().contains(lex_.peek().text)) {
      const Token t = lex_.next();
      references_.push_back(t);
      c = Command::call(std::string(t.text));
    } else {
      fail_at(lex_.peek(), std::string("expected a command, found ") + describe(lex_.peek().kind) +
                               (at(Tok::ident) ? " '" + std::string(lex_.peek().text) + "'" : std::string{}));
    }
    if (accept(Tok::bang)) return Command::loop(std::move(c));
    return c;
  }

  // Rules.
  Rule parse_rule(const Token& name, std::vector<SourceDiagnostic>& diagnostics) {
    Rule rule;
    rule.name = std::string(name.text);
    expect(Tok::lparen, "before variable declarations");
    if (!at(Tok::rparen)) {
      do {
        std::vector<Token> group;
        do {
          group.push_back(expect(Tok::ident, "in variable declaration"));
          check_name(group.back());
        } while (accept(Tok::comma));
        expect(Tok::colon, "before variable type");
        const Token type_token = expect(Tok::ident, "for variable type");
        const auto type = parse_var_type(type_token.text);
        if (!type) fail_at(type_token, "unknown type " + std::string(type_token.text));
        for (const Token& v : group) rule.variables.push_back({std::string(v.text), *type});
      } while (accept(Tok::semicolon));
    }
    expect(Tok::rparen, "after variable declarations");
    variables_ = &rule.variables;

    rule.lhs = parse_rule_graph();
    expect(Tok::arrow, "between rule sides");
    rule.rhs = parse_rule_graph();
    expect_word("interface", "after right-hand side");
    expect(Tok::equals, "after 'interface'");
    expect(Tok::lbrace, "to open interface");
    while (!at(Tok::rbrace)) {
      rule.interface.emplace_back(expect_id("in interface").text);
      accept(Tok::comma);
    }
    expect(Tok::rbrace, "to close interface");
    if (at_word("where")) {
      lex_.next();
      rule.condition = parse_condition();
    }
    variables_ = nullptr;

    for (const auto& problem : validate_rule(rule)) {
      diagnostics.push_back({name.line, name.column, problem.to_string()});
    }
    return rule;
  }

  RuleItem parse_rule_item() {
    if (at(Tok::integer) || at(Tok::string)) return parse_atom();
    const Token t = expect(Tok::ident, "in label");
    for (const auto& v : *variables_) {
      if (v.name == t.text) return v;
    }
    fail_at(t, "undeclared variable " + std::string(t.text));
  }

  RuleLabel parse_rule_list() {
    RuleLabel label;
    if (at_word("empty")) {
      lex_.next();
      return label;
    }
    label.items.push_back(parse_rule_item());
    while (accept(Tok::colon)) label.items.push_back(parse_rule_item());
    return label;
  }

  RuleGraph parse_rule_graph() {
    RuleGraph graph;
    expect(Tok::lbrack, "at start of rule graph");
    while (accept(Tok::lparen)) {
      RuleNode n;
      n.id = std::string(expect_id("for node").text);
      if (accept(Tok::lparen)) {
        const Token r = expect(Tok::ident, "in root tag");
        if (r.text != "R") fail_at(r, "expected root tag (R)");
        expect(Tok::rparen, "after root tag");
        n.root = true;
      }
      expect(Tok::comma, "after node id");
      n.label = parse_rule_list();
      n.mark = parse_mark<NodeMark>(parse_node_mark, "a node");
      expect(Tok::rparen, "at end of node");
      graph.nodes.push_back(std::move(n));
    }
    expect(Tok::bar, "between nodes and edges");
    while (accept(Tok::lparen)) {
      RuleEdge e;
      e.id = std::string(expect_id("for edge").text);
      expect(Tok::comma, "after edge id");
      e.source = std::string(expect_id("for edge source").text);
      expect(Tok::comma, "after edge source");
      e.target = std::string(expect_id("for edge target").text);
      expect(Tok::comma, "after edge target");
      e.label = parse_rule_list();
      e.mark = parse_mark<EdgeMark>(parse_edge_mark, "an edge");
      expect(Tok::rparen, "at end of edge");
      graph.edges.push_back(std::move(e));
    }
    expect(Tok::rbrack, "at end of rule graph");
    return graph;
  }

  Condition parse_condition() {
    Condition c = parse_conjunction();
    while (at_word("or")) {
      lex_.next();
      c = Condition::disjunction(std::move(c), parse_conjunction());
    }
    return c;
  }

  Condition parse_conjunction() {
    Condition c = parse_unary_condition();
    while (at_word("and")) {
      lex_.next();
      c = Condition::conjunction(std::move(c), parse_unary_condition());
    }
    return c;
  }

  Condition parse_unary_condition() {
    if (at_word("not")) {
      lex_.next();
      return Condition::negation(parse_unary_condition());
    }
    if (accept(Tok::lparen)) {
      Condition c = parse_condition();
      expect(Tok::rparen, "to close condition");
      return c;
    }
    if (at_word("edge")) {
      lex_.next();
      expect(Tok::lparen, "after 'edge'");
      std::string from(expect_id("in edge predicate").text);
      expect(Tok::comma, "in edge predicate");
      std::string to(expect_id("in edge predicate").text);
      expect(Tok::rparen, "to close edge predicate");
      return Condition::edge(std::move(from), std::move(to));
    }
    RuleLabel left = parse_rule_list();
    if (accept(Tok::equals)) return Condition::list_equal(std::move(left), parse_rule_list());
    if (accept(Tok::not_equals)) return Condition::list_not_equal(std::move(left), parse_rule_list());
    fail_at(lex_.peek(), "expected '=' or '!=' in condition");
  }

  std::set<std::string> declared_;
  std::vector<Token> references_;
  std::vector<Token> set_members_;
  const std::vector<Variable>* variables_ = nullptr;
};

}  // namespace

ParseResult<Graph> parse_host_graph(std::string_view text) {
  ParseResult<Graph> result;
  try {
    result.value.emplace(HostParser(text).parse());
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back({e.line, e.column, e.message});
  }
  return result;
}

ParseResult<Program> parse_program(std::string_view text) {
  ParseResult<Program> result;
  try {
    Program program = ProgramParser(text).parse(result.diagnostics);
    if (result.diagnostics.empty()) result.value.emplace(std::move(program));
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back({e.line, e.column, e.message});
  }
  return result;
}

std::string serialize_graph(const Graph& graph) {
  if (graph.empty()) return "[ | ]";
  const std::uint64_t steps = graph.steps();

  std::unordered_set<std::string_view> taken;
  for (NodeHandle n : graph.nodes()) taken.insert(graph.node(n).name);
  std::unordered_set<std::string_view> taken_edges;
  for (NodeHandle n : graph.nodes()) {
    for (EdgeHandle e : graph.out_edges(n)) taken_edges.insert(graph.edge(e).name);
  }

  std::unordered_map<NodeHandle, std::string> fresh;
  std::size_t counter = 0;
  auto fresh_id = [&](char prefix, const std::unordered_set<std::string_view>& used) {
    for (;;) {
      std::string id = prefix + std::to_string(counter++);
      if (!used.contains(id)) return id;
    }
  };
  auto node_id = [&](NodeHandle n) -> std::string_view {
    const std::string& name = graph.node(n).name;
    if (!name.empty()) return name;
    auto [it, inserted] = fresh.try_emplace(n);
    if (inserted) it->second = fresh_id('n', taken);
    return it->second;
  };

  std::string out = "[";
  for (NodeHandle n : graph.nodes_oldest_first()) {
    const Node& node = graph.node(n);
    out += " (";
    out += node_id(n);
    if (node.is_root) out += "(R)";
    out += ", ";
    out += format_label(node.label);
    if (node.mark != NodeMark::none) {
      out += " # ";
      out += to_string(node.mark);
    }
    out += ')';
  }
  out += " |";
  counter = 0;
  for (NodeHandle n : graph.nodes_oldest_first()) {
    for (EdgeHandle e : graph.out_edges(n)) {
      const Edge& edge = graph.edge(e);
      out += " (";
      out += edge.name.empty() ? fresh_id('e', taken_edges) : edge.name;
      out += ", ";
      out += node_id(edge.source);
      out += ", ";
      out += node_id(edge.target);
      out += ", ";
      out += format_label(edge.label);
      if (edge.mark != EdgeMark::none) {
        out += " # ";
        out += to_string(edge.mark);
      }
      out += ')';
    }
  }
  out += " ]";
  graph.restore_steps(steps);
  return out;
}

}  // namespace gp2
