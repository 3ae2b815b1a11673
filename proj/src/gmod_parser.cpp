#include <set>

#include "kaos2b/parse.hpp"
#include "parse_util.hpp"

namespace kaos2b {

using namespace detail;

GoalModel parse_goal_model(std::string_view text) {
  Lexer lex(text);
  GoalModel gm;
  expect_ident(lex, "goal");
  expect_ident(lex, "model");
  gm.name = expect_name(lex);
  expect_op(lex, "{");

  expect_ident(lex, "root");
  expect_ident(lex, "goal");
  gm.root = expect_name(lex);

  std::set<std::string> known{gm.root};
  std::set<std::string> introduced;  // non-root goals, each by exactly one refinement

  while (!is_op(lex.peek(), "}")) {
    Token t = lex.peek();
    expect_ident(lex, "refinement");
    Refinement r;
    std::string op = expect_name(lex);
    if (op == "and") r.op = RefinementOp::And;
    else if (op == "or") r.op = RefinementOp::Or;
    else if (op == "milestone") r.op = RefinementOp::Milestone;
    else throw SyntaxError(t.pos, "unknown refinement operator '" + op + "'");
    r.parent = expect_name(lex);
    if (!known.count(r.parent))
      throw SyntaxError(t.pos, "refinement parent '" + r.parent + "' is not a known goal");
    expect_op(lex, "<-");
    r.children.push_back(expect_name(lex));
    while (is_op(lex.peek(), ",")) {
      lex.next();
      r.children.push_back(expect_name(lex));
    }
    for (const std::string& c : r.children) {
      if (c == gm.root || !introduced.insert(c).second)
        throw SyntaxError(t.pos, "goal '" + c + "' is introduced more than once");
      known.insert(c);
    }
    gm.refinements.push_back(std::move(r));
  }
  expect_op(lex, "}");
  Token t = lex.next();
  if (t.kind != Token::Kind::End)
    throw SyntaxError(t.pos, "unexpected trailing input '" + t.text + "'");
  return gm;
}

}  // namespace kaos2b
