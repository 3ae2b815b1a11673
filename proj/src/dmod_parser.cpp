#include <set>

#include "kaos2b/parse.hpp"
#include "parse_util.hpp"

namespace kaos2b {

using namespace detail;

namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "domain",     "model",      "parent",     "concept",   "concepts",  "relation",
      "relations",  "attribute",  "attributes", "data",      "sets",      "set",
      "values",     "value",      "individuals", "individual", "maplets",  "maplet",
      "predicates", "gluing",     "invariants", "custom",    "enumerated", "elements",
      "defined",    "by",         "of",         "type",      "is",        "variable",
      "functional", "total",      "transitive", "symmetric", "asymmetric", "reflexive",
      "irreflexive", "cardinality", "range",    "true",      "false"};
  return words;
}

std::string declared_name(Lexer& lex) {
  Token t = lex.peek();
  std::string name = expect_name(lex);
  if (reserved_words().count(name))
    throw SyntaxError(t.pos, "'" + name + "' is a reserved word");
  return name;
}

class DmodParser {
public:
  explicit DmodParser(std::string_view text) : lex_(text) {}

  DomainModel parse() {
    expect_ident(lex_, "domain");
    expect_ident(lex_, "model");
    model_.name = declared_name(lex_);
    if (is_ident(lex_.peek(), "parent")) {
      lex_.next();
      expect_ident(lex_, "domain");
      expect_ident(lex_, "model");
      model_.parent = declared_name(lex_);
    }
    expect_op(lex_, "{");
    std::set<std::string> seen_sections;
    while (!is_op(lex_.peek(), "}")) {
      std::string section = section_header();
      if (!seen_sections.insert(section).second)
        throw SyntaxError(lex_.pos(), "duplicate section '" + section + "'");
      parse_section(section);
    }
    expect_op(lex_, "}");
    Token t = lex_.next();
    if (t.kind != Token::Kind::End)
      throw SyntaxError(t.pos, "unexpected trailing input '" + t.text + "'");
    return std::move(model_);
  }

private:
  bool at_section_header() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::Ident) return false;
    if (t.text == "concepts" || t.text == "relations" || t.text == "attributes" ||
        t.text == "individuals" || t.text == "maplets" || t.text == "predicates")
      return is_op(lex_.peek(1), ":");
    if (t.text == "data")
      return (is_ident(lex_.peek(1), "sets") || is_ident(lex_.peek(1), "values")) &&
             is_op(lex_.peek(2), ":");
    if (t.text == "gluing") return is_ident(lex_.peek(1), "invariants") && is_op(lex_.peek(2), ":");
    return false;
  }

  std::string section_header() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident) throw SyntaxError(t.pos, "expected a section header");
    std::string name = t.text;
    if (name == "data") name += " " + expect_name(lex_);
    if (name == "gluing") name += " " + expect_name(lex_);
    if (name != "concepts" && name != "relations" && name != "attributes" &&
        name != "data sets" && name != "data values" && name != "individuals" &&
        name != "maplets" && name != "predicates" && name != "gluing invariants")
      throw SyntaxError(t.pos, "unknown section '" + name + "'");
    expect_op(lex_, ":");
    return name;
  }

  void parse_section(const std::string& section) {
    while (!is_op(lex_.peek(), "}") && !at_section_header()) {
      if (section == "concepts") parse_concept();
      else if (section == "relations") parse_relation();
      else if (section == "attributes") parse_attribute();
      else if (section == "data sets") parse_data_set();
      else if (section == "data values") parse_data_value();
      else if (section == "individuals") parse_individual();
      else if (section == "maplets") parse_maplet();
      else parse_predicate(section == "gluing invariants");
    }
  }

  void parse_concept() {
    expect_ident(lex_, "concept");
    Concept c;
    c.name = declared_name(lex_);
    if (is_ident(lex_.peek(), "parent")) {
      lex_.next();
      expect_ident(lex_, "concept");
      c.parent = expect_name(lex_);
    }
    if (is_ident(lex_.peek(), "is")) {
      lex_.next();
      expect_ident(lex_, "variable");
      expect_op(lex_, ":");
      c.is_variable = expect_bool(lex_);
    }
    model_.concepts.push_back(std::move(c));
  }

  Cardinality parse_cardinality() {
    if (is_op(lex_.peek(), "*")) {
      lex_.next();
      return {};
    }
    Token lo = lex_.next();
    if (lo.kind != Token::Kind::Number) throw SyntaxError(lo.pos, "expected a cardinality bound");
    expect_op(lex_, "..");
    Cardinality card;
    card.min = static_cast<std::uint32_t>(std::stoul(lo.text));
    if (is_op(lex_.peek(), "*")) {
      lex_.next();
    } else {
      Token hi = lex_.next();
      if (hi.kind != Token::Kind::Number)
        throw SyntaxError(hi.pos, "expected a cardinality bound or '*'");
      card.max = static_cast<std::uint32_t>(std::stoul(hi.text));
    }
    return card;
  }

  void parse_relation() {
    expect_ident(lex_, "relation");
    Relation r;
    r.name = declared_name(lex_);
    expect_ident(lex_, "domain");
    expect_op(lex_, ":");
    r.domain = expect_name(lex_);
    expect_ident(lex_, "range");
    expect_op(lex_, ":");
    r.range = expect_name(lex_);
    if (is_op(lex_.peek(), "{")) {
      lex_.next();
      std::set<std::string> seen;
      while (!is_op(lex_.peek(), "}")) {
        Token t = lex_.peek();
        if (is_ident(t, "is")) {
          lex_.next();
          std::string flag = expect_name(lex_);
          expect_op(lex_, ":");
          bool value = expect_bool(lex_);
          if (!seen.insert(flag).second)
            throw SyntaxError(t.pos, "duplicate characteristic '" + flag + "'");
          if (flag == "variable") r.is_variable = value;
          else if (flag == "transitive") r.is_transitive = value;
          else if (flag == "symmetric") r.is_symmetric = value;
          else if (flag == "asymmetric") r.is_asymmetric = value;
          else if (flag == "reflexive") r.is_reflexive = value;
          else if (flag == "irreflexive") r.is_irreflexive = value;
          else throw SyntaxError(t.pos, "unknown relation characteristic '" + flag + "'");
        } else if (is_ident(t, "domain") || is_ident(t, "range")) {
          lex_.next();
          std::string side = t.text + " cardinality";
          expect_ident(lex_, "cardinality");
          expect_op(lex_, ":");
          if (!seen.insert(side).second)
            throw SyntaxError(t.pos, "duplicate characteristic '" + side + "'");
          Cardinality card = parse_cardinality();
          if (t.text == "domain") r.domain_cardinality = card;
          else r.range_cardinality = card;
        } else {
          throw SyntaxError(t.pos, "expected a relation characteristic");
        }
      }
      expect_op(lex_, "}");
    }
    model_.relations.push_back(std::move(r));
  }

  void parse_attribute() {
    expect_ident(lex_, "attribute");
    Attribute a;
    a.name = declared_name(lex_);
    expect_ident(lex_, "domain");
    expect_op(lex_, ":");
    {
      Formula d = parse_formula(lex_);
      if (d.kind == NodeKind::Ident) {
        a.domain = {DomainRef::Kind::Concept, d.text, std::nullopt};
      } else {
        a.domain = {DomainRef::Kind::Expr, "", std::move(d)};
      }
    }
    expect_ident(lex_, "range");
    expect_op(lex_, ":");
    if (is_op(lex_.peek(), "{")) {
      lex_.next();
      RangeRef range;
      range.kind = RangeRef::Kind::InlineEnum;
      range.values.push_back(expect_name(lex_));
      while (is_op(lex_.peek(), ",")) {
        lex_.next();
        range.values.push_back(expect_name(lex_));
      }
      expect_op(lex_, "}");
      a.range = std::move(range);
    } else {
      a.range = parse_range_expr();
    }
    if (is_op(lex_.peek(), "{")) {
      lex_.next();
      std::set<std::string> seen;
      while (!is_op(lex_.peek(), "}")) {
        Token t = lex_.peek();
        expect_ident(lex_, "is");
        std::string flag = expect_name(lex_);
        expect_op(lex_, ":");
        bool value = expect_bool(lex_);
        if (!seen.insert(flag).second)
          throw SyntaxError(t.pos, "duplicate characteristic '" + flag + "'");
        if (flag == "variable") a.is_variable = value;
        else if (flag == "functional") a.is_functional = value;
        else if (flag == "total") a.is_total = value;
        else throw SyntaxError(t.pos, "unknown attribute characteristic '" + flag + "'");
      }
      expect_op(lex_, "}");
    }
    model_.attributes.push_back(std::move(a));
  }

  RangeRef parse_range_expr() {
    Formula r = parse_formula(lex_);
    RangeRef range;
    if (r.kind == NodeKind::Ident) {
      if (auto def = default_set_from_name(r.text)) {
        range.kind = RangeRef::Kind::Default;
        range.def = *def;
      } else {
        range.kind = RangeRef::Kind::Named;
        range.name = r.text;
      }
    } else {
      range.kind = RangeRef::Kind::Expr;
      range.expr = std::move(r);
    }
    return range;
  }

  void parse_data_set() {
    Token t = lex_.peek();
    if (is_ident(t, "custom")) {
      lex_.next();
      expect_ident(lex_, "data");
      expect_ident(lex_, "set");
      CustomDataSet ds;
      ds.name = declared_name(lex_);
      if (is_ident(lex_.peek(), "defined")) {
        lex_.next();
        expect_ident(lex_, "by");
        expect_op(lex_, ":");
        ds.predicate_id = parse_label_text();
      }
      model_.data_sets.push_back({std::move(ds)});
    } else if (is_ident(t, "enumerated")) {
      lex_.next();
      expect_ident(lex_, "data");
      expect_ident(lex_, "set");
      EnumeratedDataSet ds;
      ds.name = declared_name(lex_);
      expect_op(lex_, "{");
      expect_ident(lex_, "elements");
      expect_op(lex_, ":");
      while (is_ident(lex_.peek(), "data")) {
        lex_.next();
        expect_ident(lex_, "value");
        ds.values.push_back(declared_name(lex_));
      }
      expect_op(lex_, "}");
      model_.data_sets.push_back({std::move(ds)});
    } else {
      throw SyntaxError(t.pos, "expected 'custom' or 'enumerated' data set");
    }
  }

  // a dotted label without the trailing colon (used after `defined by:`)
  std::string parse_label_text() {
    std::string label = expect_name(lex_);
    while (is_op(lex_.peek(), ".") && lex_.peek(1).kind == Token::Kind::Number) {
      lex_.next();
      label += "." + lex_.next().text;
    }
    return label;
  }

  void parse_data_value() {
    expect_ident(lex_, "data");
    expect_ident(lex_, "value");
    DataValue v;
    v.name = declared_name(lex_);
    expect_ident(lex_, "type");
    expect_op(lex_, ":");
    std::string type = expect_name(lex_);
    if (auto def = default_set_from_name(type)) {
      v.value_of.kind = RangeRef::Kind::Default;
      v.value_of.def = *def;
    } else {
      v.value_of.kind = RangeRef::Kind::Named;
      v.value_of.name = type;
    }
    model_.data_values.push_back(std::move(v));
  }

  void parse_individual() {
    expect_ident(lex_, "individual");
    Individual i;
    i.name = declared_name(lex_);
    expect_ident(lex_, "of");
    i.concept_name = expect_name(lex_);
    model_.individuals.push_back(std::move(i));
  }

  void parse_maplet() {
    expect_ident(lex_, "maplet");
    Maplet m;
    m.owner = expect_name(lex_);
    expect_op(lex_, ":");
    m.antecedent = expect_name(lex_);
    expect_op(lex_, "|->");
    m.image = expect_name(lex_);
    model_.maplets.push_back(std::move(m));
  }

  static void flatten_atoms(const Formula& f, std::vector<Formula>& out) {
    if (f.kind == NodeKind::Binary && f.text == "&") {
      flatten_atoms(f.children[0], out);
      flatten_atoms(f.children[1], out);
      return;
    }
    if (f.kind != NodeKind::Apply || f.children[0].kind != NodeKind::Ident)
      throw SyntaxError({}, "horn clause atoms must be predicate applications");
    out.push_back(f);
  }

  void parse_predicate(bool gluing) {
    Predicate p;
    p.is_gluing = gluing;
    if (at_ident_label(lex_)) p.id = parse_ident_label(lex_);
    Formula first = parse_formula(lex_);
    if (is_op(lex_.peek(), "<-")) {
      lex_.next();
      Formula body = parse_formula(lex_);
      HornClause horn;
      flatten_atoms(first, horn.head);
      flatten_atoms(body, horn.body);
      p.horn = std::move(horn);
    } else {
      p.formula = std::move(first);
    }
    model_.predicates.push_back(std::move(p));
  }

  Lexer lex_;
  DomainModel model_;
};

}  // namespace

DomainModel parse_domain_model(std::string_view text) { return DmodParser(text).parse(); }

}  // namespace kaos2b
