#ifndef KAOS2B_FORMULA_HPP
#define KAOS2B_FORMULA_HPP

#include <string>
#include <string_view>
#include <vector>

#include "kaos2b/diag.hpp"

namespace kaos2b {

// Tokens use the ASCII surface; Unicode input is canonicalized by the lexer.
struct Token {
  enum class Kind { Ident, Number, String, Op, Annotation, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

class Lexer {
public:
  explicit Lexer(std::string_view src);

  const Token& peek(int ahead = 0);
  Token next();
  SourcePos pos();

private:
  Token lex();
  std::string_view src_;
  std::size_t at_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Token> lookahead_;
};

enum class NodeKind {
  Ident,       // text = name
  Number,      // text = digits
  String,      // text = contents, printed quoted
  EmptySet,    // {}
  Binary,      // text = operator, children = {lhs, rhs}
  Inverse,     // postfix ~, children = {expr}
  Apply,       // children = {callee, args...}
  Image,       // children = {relation, argument}  r[s]
  SetLiteral,  // children = elements
  Quantifier,  // text = "!" or "#", children = {var idents..., body}
};

/// Predicate/expression tree shared by all three surface formats.
struct Formula {
  NodeKind kind = NodeKind::Ident;
  std::string text;
  std::vector<Formula> children;

  bool operator==(const Formula&) const = default;
};

Formula ident(std::string name);
Formula number(std::uint64_t v);
Formula binary(std::string op, Formula lhs, Formula rhs);
Formula apply(std::string fn, std::vector<Formula> args);
Formula set_literal(std::vector<Formula> elems);
Formula conjoin(std::vector<Formula> parts);  // TRUE when empty

enum class Notation { Ascii, Unicode };

/// Parses a complete formula; trailing input is an error.
Formula parse_formula(std::string_view src);

/// Parses one expression from an open token stream; stops at the first token
/// that cannot continue the expression.
Formula parse_formula(Lexer& lex);

/// As above, but refuses to consume infix operators binding looser than
/// `min_bp`. Clause parsers use this to keep the `&` entry separator out of
/// entry formulas (conjunction binds at 30).
Formula parse_formula_bounded(Lexer& lex, int min_bp);

/// True when the top-level connective binds looser than `min_bp`; such a
/// formula must be parenthesized inside a labeled clause entry.
bool needs_entry_parens(const Formula& f);

std::string print_formula(const Formula& f, Notation notation = Notation::Ascii);

/// Free identifiers: builtins, quantifier-bound variables and `?`-prefixed
/// clause variables are excluded. Sorted, unique.
std::vector<std::string> free_names(const Formula& f);

bool is_builtin_name(std::string_view name);
bool is_operator_word(std::string_view name);  // dom, ran, card, ...

/// Maps Unicode notation to canonical ASCII tokens and strips all whitespace;
/// used for notation-insensitive comparisons.
std::vector<std::string> normalize_tokens(std::string_view text);

}  // namespace kaos2b

#endif
