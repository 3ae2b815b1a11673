#include "kaos2b/formula.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

namespace kaos2b {

namespace {

// Unicode spellings accepted on input, canonical ASCII on the right.
struct UnicodeMap {
  std::string_view utf8;
  std::string_view ascii;
};

constexpr std::array<UnicodeMap, 28> kUnicode = {{
    {"∈", ":"},        // ∈
    {"∉", "/:"},       // ∉
    {"⊆", "<:"},       // ⊆
    {"∧", "&"},        // ∧
    {"∨", "or"},       // ∨
    {"⇒", "=>"},       // ⇒
    {"⇔", "<=>"},      // ⇔
    {"≠", "/="},       // ≠
    {"≤", "<="},       // ≤
    {"≥", ">="},       // ≥
    {"∀", "!"},        // ∀
    {"∃", "#"},        // ∃
    {"·", "."},        // · (quantifier dot)
    {"⋅", "."},        // ⋅
    {"↦", "|->"},      // ↦
    {"→", "-->"},      // → total function
    {"⇸", "+->"},      // ⇸ partial function
    {"↣", ">->"},      // ↣ total injection
    {"⤔", ">+>"},      // ⤔ partial injection
    {"↠", "->>"},      // ↠ total surjection
    {"⤀", "+->>"},     // ⤀ partial surjection
    {"⤖", ">->>"},     // ⤖ bijection
    {"↔", "<->"},      // ↔ relation
    {"∩", "/\\"},      // ∩
    {"∪", "\\/"},      // ∪
    {"∅", "{}"},       // ∅ — expands to two tokens
    {"⁻¹", "~"},  // ⁻¹
    {"‥", ".."},       // ‥
}};

// Multi-character operators, longest first so maximal munch works.
constexpr std::array<std::string_view, 27> kOps = {
    "+->>", ">->>", "<<|", "|>>", "-->", "->>", ">->", ">+>", "+->",
    "<->", "|->", "<=>", "::", ":=", "..", "=>", "/=", "<=", ">=",
    "<:", "/:", "/\\", "\\/", "<+", "<|", "|>", "||"};

constexpr std::string_view kSingleOps = "(){}[],.;:=<>&+-*/\\~#!<|?";

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

const std::set<std::string_view>& builtin_idents() {
  static const std::set<std::string_view> names = {
      "NATURAL", "INTEGER", "FLOAT", "STRING", "BOOL", "NAT",
      "NAT1",    "INT",     "TRUE",  "FALSE",  "MAXINT", "MININT"};
  return names;
}

const std::set<std::string_view>& operator_words() {
  static const std::set<std::string_view> names = {
      "dom", "ran", "card", "id", "POW", "POW1", "union",
      "inter", "bool", "not", "min", "max"};
  return names;
}

}  // namespace

bool is_builtin_name(std::string_view name) {
  return builtin_idents().count(name) > 0 || operator_words().count(name) > 0;
}

bool is_operator_word(std::string_view name) { return operator_words().count(name) > 0; }

Lexer::Lexer(std::string_view src) : src_(src) {}

SourcePos Lexer::pos() { return peek().pos; }

const Token& Lexer::peek(int ahead) {
  while (static_cast<int>(lookahead_.size()) <= ahead) lookahead_.push_back(lex());
  return lookahead_[static_cast<std::size_t>(ahead)];
}

Token Lexer::next() {
  peek();
  Token t = lookahead_.front();
  lookahead_.erase(lookahead_.begin());
  return t;
}

Token Lexer::lex() {
  auto advance = [&](std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (at_ < src_.size() && src_[at_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++at_;
    }
  };

  for (;;) {
    while (at_ < src_.size() && (src_[at_] == ' ' || src_[at_] == '\t' || src_[at_] == '\r' ||
                                 src_[at_] == '\n')) {
      advance(1);
    }
    if (at_ + 1 < src_.size() && src_[at_] == '/' && src_[at_ + 1] == '/') {
      while (at_ < src_.size() && src_[at_] != '\n') advance(1);
      continue;
    }
    if (at_ + 2 < src_.size() && src_[at_] == '/' && src_[at_ + 1] == '*' && src_[at_ + 2] == '@') {
      // annotation directive: /*@ word */
      SourcePos p{line_, col_};
      advance(3);
      std::string body;
      while (at_ + 1 < src_.size() && !(src_[at_] == '*' && src_[at_ + 1] == '/')) {
        body.push_back(src_[at_]);
        advance(1);
      }
      if (at_ + 1 >= src_.size()) throw SyntaxError(p, "unterminated annotation");
      advance(2);
      auto b = body.find_first_not_of(" \t\r\n");
      auto e = body.find_last_not_of(" \t\r\n");
      return {Token::Kind::Annotation,
              b == std::string::npos ? std::string() : body.substr(b, e - b + 1), p};
    }
    if (at_ + 1 < src_.size() && src_[at_] == '/' && src_[at_ + 1] == '*') {
      SourcePos p{line_, col_};
      advance(2);
      while (at_ + 1 < src_.size() && !(src_[at_] == '*' && src_[at_ + 1] == '/')) advance(1);
      if (at_ + 1 >= src_.size()) throw SyntaxError(p, "unterminated comment");
      advance(2);
      continue;
    }
    break;
  }

  SourcePos p{line_, col_};
  if (at_ >= src_.size()) return {Token::Kind::End, "", p};

  std::string_view rest = src_.substr(at_);

  for (const auto& [utf8, ascii] : kUnicode) {
    if (starts_with(rest, utf8)) {
      advance(utf8.size());
      if (ascii == "{}") return {Token::Kind::Op, "{}", p};
      if (ascii == "or" || ascii == "not")
        return {Token::Kind::Ident, std::string(ascii), p};
      return {Token::Kind::Op, std::string(ascii), p};
    }
  }

  char c = rest[0];
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '?') {
    std::size_t n = 1;
    while (n < rest.size() &&
           ((rest[n] >= 'a' && rest[n] <= 'z') || (rest[n] >= 'A' && rest[n] <= 'Z') ||
            (rest[n] >= '0' && rest[n] <= '9') || rest[n] == '_')) {
      ++n;
    }
    advance(n);
    return {Token::Kind::Ident, std::string(rest.substr(0, n)), p};
  }
  if (c >= '0' && c <= '9') {
    std::size_t n = 1;
    while (n < rest.size() && rest[n] >= '0' && rest[n] <= '9') ++n;
    advance(n);
    return {Token::Kind::Number, std::string(rest.substr(0, n)), p};
  }
  if (c == '"') {
    std::size_t n = 1;
    while (n < rest.size() && rest[n] != '"') ++n;
    if (n >= rest.size()) throw SyntaxError(p, "unterminated string literal");
    advance(n + 1);
    return {Token::Kind::String, std::string(rest.substr(1, n - 1)), p};
  }

  for (std::string_view op : kOps) {
    if (starts_with(rest, op)) {
      // `<-` must not be eaten by `<` + `-`; it is below single chars on purpose
      advance(op.size());
      return {Token::Kind::Op, std::string(op), p};
    }
  }
  if (starts_with(rest, "<-")) {
    advance(2);
    return {Token::Kind::Op, "<-", p};
  }
  if (kSingleOps.find(c) != std::string_view::npos) {
    advance(1);
    return {Token::Kind::Op, std::string(1, c), p};
  }
  throw SyntaxError(p, std::string("unexpected character '") + c + "'");
}

Formula ident(std::string name) { return Formula{NodeKind::Ident, std::move(name), {}}; }

Formula number(std::uint64_t v) { return Formula{NodeKind::Number, std::to_string(v), {}}; }

Formula binary(std::string op, Formula lhs, Formula rhs) {
  Formula f{NodeKind::Binary, std::move(op), {}};
  f.children.push_back(std::move(lhs));
  f.children.push_back(std::move(rhs));
  return f;
}

Formula apply(std::string fn, std::vector<Formula> args) {
  Formula f{NodeKind::Apply, "", {}};
  f.children.push_back(ident(std::move(fn)));
  for (auto& a : args) f.children.push_back(std::move(a));
  return f;
}

Formula set_literal(std::vector<Formula> elems) {
  if (elems.empty()) return Formula{NodeKind::EmptySet, "", {}};
  return Formula{NodeKind::SetLiteral, "", std::move(elems)};
}

Formula conjoin(std::vector<Formula> parts) {
  if (parts.empty()) return ident("TRUE");
  Formula acc = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = binary("&", std::move(acc), std::move(parts[i]));
  return acc;
}

namespace {

struct OpInfo {
  int bp;           // binding power; higher binds tighter
  bool right_assoc;
};

const std::map<std::string_view, OpInfo>& infix_table() {
  static const std::map<std::string_view, OpInfo> t = {
      {"=>", {10, true}},   {"<=>", {10, true}},
      {"or", {20, false}},
      {"&", {30, false}},
      {"=", {40, false}},   {"/=", {40, false}},  {":", {40, false}},  {"/:", {40, false}},
      {"<:", {40, false}},  {"<", {40, false}},   {"<=", {40, false}}, {">", {40, false}},
      {">=", {40, false}},
      {"-->", {42, false}}, {"+->", {42, false}}, {">->", {42, false}},
      {">+>", {42, false}}, {"->>", {42, false}}, {"+->>", {42, false}},
      {">->>", {42, false}}, {"<->", {42, false}},
      {"|->", {45, false}},
      {"<+", {50, false}},  {"<<|", {50, false}}, {"|>>", {50, false}},
      {"<|", {50, false}},  {"|>", {50, false}},
      {"\\/", {52, false}}, {"\\", {52, false}},
      {"/\\", {54, false}},
      {";", {56, false}},
      {"..", {60, false}},
      {"+", {70, false}},   {"-", {70, false}},
      {"*", {80, false}},   {"/", {80, false}},
  };
  return t;
}

class FormulaParser {
public:
  explicit FormulaParser(Lexer& lex) : lex_(lex) {}

  Formula parse(int min_bp = 0) {
    Formula lhs = prefix();
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::Op) {
        if (t.text == "~") {
          lex_.next();
          Formula f{NodeKind::Inverse, "~", {}};
          f.children.push_back(std::move(lhs));
          lhs = std::move(f);
          continue;
        }
        if (t.text == "(") {
          // `( NUM . NUM )` can only be a clause-entry label, never valid
          // application arguments (intervals lex as `..`), so stop here
          if (lex_.peek(1).kind == Token::Kind::Number &&
              lex_.peek(2).kind == Token::Kind::Op && lex_.peek(2).text == "." &&
              lex_.peek(3).kind == Token::Kind::Number &&
              lex_.peek(4).kind == Token::Kind::Op && lex_.peek(4).text == ")")
            break;
          lhs = finish_apply(std::move(lhs));
          continue;
        }
        if (t.text == "[") {
          lex_.next();
          Formula arg = parse(0);
          expect_op("]");
          Formula f{NodeKind::Image, "", {}};
          f.children.push_back(std::move(lhs));
          f.children.push_back(std::move(arg));
          lhs = std::move(f);
          continue;
        }
        auto it = infix_table().find(t.text);
        if (it != infix_table().end() && it->second.bp >= min_bp) {
          std::string op = t.text;  // t dangles once next() pops the lookahead
          lex_.next();
          int next_bp = it->second.right_assoc ? it->second.bp : it->second.bp + 1;
          Formula rhs = parse(next_bp);
          lhs = binary(std::move(op), std::move(lhs), std::move(rhs));
          continue;
        }
      }
      if (t.kind == Token::Kind::Ident && t.text == "or") {
        auto it = infix_table().find("or");
        if (it->second.bp >= min_bp) {
          lex_.next();
          Formula rhs = parse(it->second.bp + 1);
          lhs = binary("or", std::move(lhs), std::move(rhs));
          continue;
        }
      }
      break;
    }
    return lhs;
  }

private:
  Formula prefix() {
    Token t = lex_.next();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "or") throw SyntaxError(t.pos, "'or' cannot start a formula");
      return ident(t.text);
    }
    if (t.kind == Token::Kind::Number) return Formula{NodeKind::Number, t.text, {}};
    if (t.kind == Token::Kind::String) return Formula{NodeKind::String, t.text, {}};
    if (t.kind == Token::Kind::Op) {
      if (t.text == "(") {
        Formula inner = parse(0);
        expect_op(")");
        return inner;
      }
      if (t.text == "{}") return set_literal({});
      if (t.text == "{") {
        std::vector<Formula> elems;
        if (!peek_op("}")) {
          elems.push_back(parse(0));
          while (peek_op(",")) {
            lex_.next();
            elems.push_back(parse(0));
          }
        }
        expect_op("}");
        return set_literal(std::move(elems));
      }
      if (t.text == "!" || t.text == "#") {
        Formula q{NodeKind::Quantifier, t.text, {}};
        q.children.push_back(expect_ident());
        while (peek_op(",")) {
          lex_.next();
          q.children.push_back(expect_ident());
        }
        expect_op(".");
        expect_op("(");
        q.children.push_back(parse(0));
        expect_op(")");
        return q;
      }
    }
    throw SyntaxError(t.pos, "expected a formula, found '" + t.text + "'");
  }

  Formula finish_apply(Formula callee) {
    expect_op("(");
    std::vector<Formula> args;
    if (!peek_op(")")) {
      args.push_back(parse(0));
      while (peek_op(",")) {
        lex_.next();
        args.push_back(parse(0));
      }
    }
    expect_op(")");
    Formula f{NodeKind::Apply, "", {}};
    f.children.push_back(std::move(callee));
    for (auto& a : args) f.children.push_back(std::move(a));
    return f;
  }

  bool peek_op(std::string_view text) {
    const Token& t = lex_.peek();
    return t.kind == Token::Kind::Op && t.text == text;
  }

  void expect_op(std::string_view text) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Op || t.text != text)
      throw SyntaxError(t.pos, "expected '" + std::string(text) + "', found '" + t.text + "'");
  }

  Formula expect_ident() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident)
      throw SyntaxError(t.pos, "expected an identifier, found '" + t.text + "'");
    return ident(t.text);
  }

  Lexer& lex_;
};

std::string to_unicode(std::string_view op) {
  static const std::map<std::string_view, std::string_view> back = {
      {":", "∈"},   {"/:", "∉"},  {"<:", "⊆"}, {"&", "∧"},
      {"or", "∨"},  {"=>", "⇒"},  {"/=", "≠"}, {"<=", "≤"},
      {">=", "≥"},  {"|->", "↦"}, {"-->", "→"}, {"+->", "⇸"},
      {">->", "↣"}, {">+>", "⤔"}, {"->>", "↠"}, {"+->>", "⤀"},
      {">->>", "⤖"}, {"<->", "↔"}, {"/\\", "∩"}, {"\\/", "∪"}};
  auto it = back.find(op);
  return it == back.end() ? std::string(op) : std::string(it->second);
}

class Printer {
public:
  explicit Printer(Notation notation) : notation_(notation) {}

  void print(const Formula& f, int parent_bp, std::string& out) {
    switch (f.kind) {
      case NodeKind::Ident:
        out += f.text;
        return;
      case NodeKind::Number:
        out += f.text;
        return;
      case NodeKind::String:
        out += '"';
        out += f.text;
        out += '"';
        return;
      case NodeKind::EmptySet:
        out += "{}";
        return;
      case NodeKind::SetLiteral: {
        out += '{';
        for (std::size_t i = 0; i < f.children.size(); ++i) {
          if (i) out += ", ";
          print(f.children[i], 0, out);
        }
        out += '}';
        return;
      }
      case NodeKind::Inverse: {
        print(f.children[0], 100, out);
        out += op_text("~");
        return;
      }
      case NodeKind::Image: {
        print(f.children[0], 100, out);
        out += '[';
        print(f.children[1], 0, out);
        out += ']';
        return;
      }
      case NodeKind::Apply: {
        print(f.children[0], 100, out);
        out += '(';
        for (std::size_t i = 1; i < f.children.size(); ++i) {
          if (i > 1) out += ", ";
          print(f.children[i], 0, out);
        }
        out += ')';
        return;
      }
      case NodeKind::Quantifier: {
        bool paren = parent_bp > 0;
        if (paren) out += '(';
        out += op_text(f.text);
        for (std::size_t i = 0; i + 1 < f.children.size(); ++i) {
          if (i) out += ',';
          out += f.children[i].text;
        }
        out += ".(";
        print(f.children.back(), 0, out);
        out += ')';
        if (paren) out += ')';
        return;
      }
      case NodeKind::Binary: {
        auto it = infix_table().find(f.text);
        int bp = it == infix_table().end() ? 40 : it->second.bp;
        bool right = it != infix_table().end() && it->second.right_assoc;
        bool paren = bp < parent_bp;
        if (paren) out += '(';
        print(f.children[0], right ? bp + 1 : bp, out);
        if (tight(f.text)) {
          out += op_text(f.text);
        } else {
          out += ' ';
          out += op_text(f.text);
          out += ' ';
        }
        print(f.children[1], right ? bp : bp + 1, out);
        if (paren) out += ')';
        return;
      }
    }
  }

private:
  static bool tight(std::string_view op) { return op == ".."; }

  std::string op_text(std::string_view op) {
    if (notation_ == Notation::Ascii) return std::string(op);
    if (op == "!") return "∀";
    if (op == "#") return "∃";
    if (op == "~") return "⁻¹";
    return to_unicode(op);
  }

  Notation notation_;
};

void collect_names(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out,
                   bool callee_position) {
  switch (f.kind) {
    case NodeKind::Ident: {
      if (f.text.empty() || f.text[0] == '?') return;
      if (is_builtin_name(f.text)) return;
      if (callee_position && is_operator_word(f.text)) return;
      if (bound.count(f.text)) return;
      out.insert(f.text);
      return;
    }
    case NodeKind::Number:
    case NodeKind::String:
    case NodeKind::EmptySet:
      return;
    case NodeKind::Quantifier: {
      std::vector<std::string> added;
      for (std::size_t i = 0; i + 1 < f.children.size(); ++i) {
        if (bound.insert(f.children[i].text).second) added.push_back(f.children[i].text);
      }
      collect_names(f.children.back(), bound, out, false);
      for (const auto& v : added) bound.erase(v);
      return;
    }
    case NodeKind::Apply: {
      collect_names(f.children[0], bound, out, true);
      for (std::size_t i = 1; i < f.children.size(); ++i)
        collect_names(f.children[i], bound, out, false);
      return;
    }
    default: {
      for (const auto& c : f.children) collect_names(c, bound, out, false);
      return;
    }
  }
}

}  // namespace

Formula parse_formula(Lexer& lex) {
  FormulaParser p(lex);
  return p.parse(0);
}

Formula parse_formula_bounded(Lexer& lex, int min_bp) {
  FormulaParser p(lex);
  return p.parse(min_bp);
}

bool needs_entry_parens(const Formula& f) {
  if (f.kind != NodeKind::Binary) return false;
  auto it = infix_table().find(f.text);
  return it != infix_table().end() && it->second.bp <= 30;
}

Formula parse_formula(std::string_view src) {
  Lexer lex(src);
  Formula f = parse_formula(lex);
  Token t = lex.next();
  if (t.kind != Token::Kind::End)
    throw SyntaxError(t.pos, "unexpected trailing input '" + t.text + "'");
  return f;
}

std::string print_formula(const Formula& f, Notation notation) {
  std::string out;
  Printer(notation).print(f, 0, out);
  return out;
}

std::vector<std::string> free_names(const Formula& f) {
  std::set<std::string> bound, out;
  collect_names(f, bound, out, false);
  return {out.begin(), out.end()};
}

std::vector<std::string> normalize_tokens(std::string_view text) {
  Lexer lex(text);
  std::vector<std::string> out;
  for (;;) {
    Token t = lex.next();
    if (t.kind == Token::Kind::End) break;
    if (t.kind == Token::Kind::String) {
      out.push_back("\"" + t.text + "\"");
    } else if (t.kind == Token::Kind::Op && t.text == "{}") {
      out.push_back("{");
      out.push_back("}");
    } else {
      out.push_back(t.text);
    }
  }
  return out;
}

}  // namespace kaos2b
