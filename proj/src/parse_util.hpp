#ifndef KAOS2B_SRC_PARSE_UTIL_HPP
#define KAOS2B_SRC_PARSE_UTIL_HPP

#include <string>
#include <string_view>

#include "kaos2b/formula.hpp"

namespace kaos2b::detail {

inline bool is_ident(const Token& t, std::string_view text) {
  return t.kind == Token::Kind::Ident && t.text == text;
}

inline bool is_op(const Token& t, std::string_view text) {
  return t.kind == Token::Kind::Op && t.text == text;
}

inline Token expect_ident(Lexer& lex, std::string_view text) {
  Token t = lex.next();
  if (!is_ident(t, text))
    throw SyntaxError(t.pos, "expected '" + std::string(text) + "', found '" + t.text + "'");
  return t;
}

inline Token expect_op(Lexer& lex, std::string_view text) {
  Token t = lex.next();
  if (!is_op(t, text))
    throw SyntaxError(t.pos, "expected '" + std::string(text) + "', found '" + t.text + "'");
  return t;
}

inline std::string expect_name(Lexer& lex) {
  Token t = lex.next();
  if (t.kind != Token::Kind::Ident)
    throw SyntaxError(t.pos, "expected an identifier, found '" + t.text + "'");
  return t.text;
}

inline bool expect_bool(Lexer& lex) {
  Token t = lex.next();
  if (is_ident(t, "true")) return true;
  if (is_ident(t, "false")) return false;
  throw SyntaxError(t.pos, "expected 'true' or 'false', found '" + t.text + "'");
}

/// Dotted label such as p0.1 or inv6; the trailing ':' is consumed.
/// Returns the label text without the colon.
inline std::string parse_ident_label(Lexer& lex) {
  std::string label = expect_name(lex);
  while (is_op(lex.peek(), ".") && lex.peek(1).kind == Token::Kind::Number) {
    lex.next();
    label += "." + lex.next().text;
  }
  expect_op(lex, ":");
  return label;
}

/// True when the upcoming tokens look like an ident label followed by ':'.
inline bool at_ident_label(Lexer& lex) {
  if (lex.peek().kind != Token::Kind::Ident) return false;
  int k = 1;
  while (is_op(lex.peek(k), ".") && lex.peek(k + 1).kind == Token::Kind::Number) k += 2;
  return is_op(lex.peek(k), ":");
}

/// Parenthesized numeric label such as (1.21). Returns "(1.21)".
inline std::string parse_paren_label(Lexer& lex) {
  expect_op(lex, "(");
  Token a = lex.next();
  if (a.kind != Token::Kind::Number) throw SyntaxError(a.pos, "expected a label number");
  expect_op(lex, ".");
  Token b = lex.next();
  if (b.kind != Token::Kind::Number) throw SyntaxError(b.pos, "expected a label number");
  expect_op(lex, ")");
  return "(" + a.text + "." + b.text + ")";
}

inline bool at_paren_label(Lexer& lex) {
  return is_op(lex.peek(), "(") && lex.peek(1).kind == Token::Kind::Number &&
         is_op(lex.peek(2), ".") && lex.peek(3).kind == Token::Kind::Number &&
         is_op(lex.peek(4), ")");
}

}  // namespace kaos2b::detail

#endif
