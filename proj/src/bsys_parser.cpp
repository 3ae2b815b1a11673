#include <set>

#include "kaos2b/parse.hpp"
#include "parse_util.hpp"

namespace kaos2b {

using namespace detail;

namespace {

bool at_clause_keyword(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.kind == Token::Kind::End) return true;
  if (t.kind != Token::Kind::Ident) return false;
  return t.text == "REFINES" || t.text == "SETS" || t.text == "CONSTANTS" ||
         t.text == "PROPERTIES" || t.text == "VARIABLES" || t.text == "INVARIANT" ||
         t.text == "INITIALISATION" || t.text == "Event" || t.text == "END";
}

class BsysParser {
public:
  explicit BsysParser(std::string_view text) : lex_(text) {}

  Component parse_component() {
    Token head = lex_.next();
    Component comp;
    if (is_ident(head, "SYSTEM")) {
      comp.name = expect_name(lex_);
    } else if (is_ident(head, "REFINEMENT")) {
      comp.name = expect_name(lex_);
      expect_ident(lex_, "REFINES");
      comp.refines = expect_name(lex_);
    } else {
      throw SyntaxError(head.pos, "expected SYSTEM or REFINEMENT");
    }
    parse_clauses(comp, /*fragment=*/false);
    expect_ident(lex_, "END");
    Token t = lex_.next();
    if (t.kind != Token::Kind::End)
      throw SyntaxError(t.pos, "unexpected trailing input '" + t.text + "'");
    index_typing(comp);
    return comp;
  }

  ComponentFragment parse_fragment() {
    Component comp;
    parse_clauses(comp, /*fragment=*/true);
    Token t = lex_.next();
    if (t.kind != Token::Kind::End)
      throw SyntaxError(t.pos, "unexpected trailing input '" + t.text + "'");
    ComponentFragment frag;
    frag.variables = std::move(comp.variables);
    frag.invariants = std::move(comp.invariants);
    frag.initialisation = std::move(comp.initialisation);
    frag.events = std::move(comp.events);
    return frag;
  }

private:
  void parse_clauses(Component& comp, bool fragment) {
    std::set<std::string> seen;
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::End || is_ident(t, "END")) return;
      if (t.kind != Token::Kind::Ident && t.kind != Token::Kind::Annotation)
        throw SyntaxError(t.pos, "expected a clause keyword, found '" + t.text + "'");
      std::string clause =
          t.kind == Token::Kind::Annotation ? std::string("SETS") : t.text;
      if (clause != "SETS" && clause != "CONSTANTS" && clause != "PROPERTIES" &&
          clause != "VARIABLES" && clause != "INVARIANT" && clause != "INITIALISATION" &&
          clause != "Event")
        throw SyntaxError(t.pos, "unknown clause '" + clause + "'");
      if (clause != "Event" && !seen.insert(clause).second)
        throw SyntaxError(t.pos, "duplicate clause '" + clause + "'");
      if (fragment && (clause == "SETS" || clause == "CONSTANTS" || clause == "PROPERTIES"))
        throw SyntaxError(t.pos, "clause '" + clause + "' is not allowed in a fragment");

      if (clause == "SETS") parse_sets(comp);
      else if (clause == "CONSTANTS") { lex_.next(); comp.constants = ident_list(); }
      else if (clause == "VARIABLES") { lex_.next(); comp.variables = ident_list(); }
      else if (clause == "PROPERTIES") { lex_.next(); comp.properties = entries(Classification::Property); }
      else if (clause == "INVARIANT") { lex_.next(); comp.invariants = entries(Classification::Invariant); }
      else if (clause == "INITIALISATION") { lex_.next(); comp.initialisation = substitutions(); }
      else comp.events.push_back(parse_event());
    }
  }

  void parse_sets(Component& comp) {
    // the caller may have left an annotation token in front of SETS itself
    std::string pending;
    if (lex_.peek().kind == Token::Kind::Annotation) pending = lex_.next().text;
    expect_ident(lex_, "SETS");
    for (;;) {
      SetDecl decl;
      decl.annotation = pending;
      pending.clear();
      if (lex_.peek().kind == Token::Kind::Annotation) decl.annotation = lex_.next().text;
      decl.name = expect_name(lex_);
      if (is_op(lex_.peek(), "=")) {
        lex_.next();
        expect_op(lex_, "{");
        std::vector<std::string> items;
        if (!is_op(lex_.peek(), "}")) {
          items.push_back(expect_name(lex_));
          while (is_op(lex_.peek(), ",")) {
            lex_.next();
            items.push_back(expect_name(lex_));
          }
        }
        expect_op(lex_, "}");
        decl.items = std::move(items);
      }
      comp.sets.push_back(std::move(decl));
      if (is_op(lex_.peek(), ";")) {
        lex_.next();
        continue;
      }
      break;
    }
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> names;
    while (!at_clause_keyword(lex_)) {
      names.push_back(expect_name(lex_));
      if (is_op(lex_.peek(), ",")) lex_.next();
    }
    return names;
  }

  std::vector<LogicFormula> entries(Classification clause_kind) {
    std::vector<LogicFormula> out;
    bool first = true;
    while (!at_clause_keyword(lex_)) {
      LogicFormula f;
      f.classification = clause_kind;
      if (is_ident(lex_.peek(), "theorem")) {
        lex_.next();
        f.classification = Classification::Theorem;
      }
      if (at_paren_label(lex_)) f.label = parse_paren_label(lex_);
      else if (at_ident_label(lex_)) f.label = parse_ident_label(lex_);
      else throw SyntaxError(lex_.pos(), "expected a formula label");
      if (!first) expect_op(lex_, "&");
      first = false;
      Formula ast = parse_formula_bounded(lex_, 31);
      f.form = TextForm{ast, free_names(ast)};
      out.push_back(std::move(f));
    }
    return out;
  }

  std::vector<Substitution> substitutions() {
    std::vector<Substitution> out;
    bool first = true;
    while (!at_clause_keyword(lex_)) {
      Substitution s;
      if (at_paren_label(lex_)) s.label = parse_paren_label(lex_);
      else if (at_ident_label(lex_)) s.label = parse_ident_label(lex_);
      if (!first) expect_op(lex_, "||");
      first = false;
      s.target = expect_name(lex_);
      expect_op(lex_, ":=");
      Formula rhs = parse_formula(lex_);
      if (auto maplets = as_maplet_set(rhs)) s.maplets = std::move(*maplets);
      else s.expr = std::move(rhs);
      out.push_back(std::move(s));
    }
    return out;
  }

  static std::optional<std::vector<std::pair<std::string, std::string>>> as_maplet_set(
      const Formula& f) {
    if (f.kind == NodeKind::EmptySet)
      return std::vector<std::pair<std::string, std::string>>{};
    if (f.kind != NodeKind::SetLiteral) return std::nullopt;
    std::vector<std::pair<std::string, std::string>> maplets;
    for (const Formula& e : f.children) {
      if (e.kind != NodeKind::Binary || e.text != "|->" ||
          e.children[0].kind != NodeKind::Ident || e.children[1].kind != NodeKind::Ident)
        return std::nullopt;
      maplets.emplace_back(e.children[0].text, e.children[1].text);
    }
    return maplets;
  }

  Event parse_event() {
    expect_ident(lex_, "Event");
    Event e;
    e.name = expect_name(lex_);
    if (is_op(lex_.peek(), "<")) {
      lex_.next();
      expect_ident(lex_, "convergent");
      expect_op(lex_, ">");
      e.status = EventStatus::Convergent;
    }
    expect_op(lex_, "=");
    Token t = lex_.peek();
    if (is_ident(t, "any")) {
      lex_.next();
      e.params.push_back(expect_name(lex_));
      while (is_op(lex_.peek(), ",")) {
        lex_.next();
        e.params.push_back(expect_name(lex_));
      }
      expect_ident(lex_, "where");
      e.guards = guards();
      if (is_ident(lex_.peek(), "then")) {
        lex_.next();
        actions(e);
      }
    } else if (is_ident(t, "when")) {
      lex_.next();
      e.guards = guards();
      if (is_ident(lex_.peek(), "then")) {
        lex_.next();
        actions(e);
      }
    } else if (is_ident(t, "begin")) {
      lex_.next();
      actions(e);
    } else {
      throw SyntaxError(t.pos, "expected 'any', 'when' or 'begin'");
    }
    expect_ident(lex_, "end");
    return e;
  }

  void actions(Event& e) {
    while (!is_ident(lex_.peek(), "end")) {
      if (at_ident_label(lex_)) parse_ident_label(lex_);  // action labels are decorative
      Action a;
      a.target = parse_formula_bounded(lex_, 41);
      if (a.target.kind != NodeKind::Ident && a.target.kind != NodeKind::Apply)
        throw SyntaxError(lex_.pos(), "action target must be a variable or an application");
      Token op = lex_.next();
      if (is_op(op, ":=")) a.kind = ActionKind::Assign;
      else if (is_op(op, "::")) a.kind = ActionKind::BecomesIn;
      else throw SyntaxError(op.pos, "expected ':=' in action");
      a.expr = parse_formula(lex_);
      e.actions.push_back(std::move(a));
    }
  }

  std::vector<Guard> guards() {
    std::vector<Guard> out;
    while (!is_ident(lex_.peek(), "then") && !is_ident(lex_.peek(), "end")) {
      Guard g;
      if (at_ident_label(lex_)) g.label = parse_ident_label(lex_);
      else throw SyntaxError(lex_.pos(), "expected a guard label");
      g.pred = parse_formula(lex_);
      out.push_back(std::move(g));
    }
    return out;
  }

  void index_typing(Component& comp) {
    auto scan = [&](const std::vector<LogicFormula>& formulas) {
      for (const LogicFormula& f : formulas) {
        const auto* text = std::get_if<TextForm>(&f.form);
        if (!text || f.classification == Classification::Theorem) continue;
        const Formula& ast = text->ast;
        if (ast.kind != NodeKind::Binary) continue;
        if (ast.children[0].kind != NodeKind::Ident) continue;
        const std::string& lhs = ast.children[0].text;
        if (ast.text == ":" || ast.text == "<:") {
          comp.typing.emplace(lhs, f.label);
        } else if (ast.text == "=") {
          const Formula& rhs = ast.children[1];
          if (rhs.kind == NodeKind::Binary && arrow_from_token(rhs.text))
            comp.typing.emplace(lhs, f.label);
        }
      }
    };
    scan(comp.properties);
    scan(comp.invariants);
  }

  Lexer lex_;
};

}  // namespace

Component parse_bsystem(std::string_view text) { return BsysParser(text).parse_component(); }

ComponentFragment parse_bsystem_fragment(std::string_view text) {
  return BsysParser(text).parse_fragment();
}

}  // namespace kaos2b
