#include "kaos2b/emit.hpp"

#include <sstream>

namespace kaos2b {

namespace {

std::string join_op(Notation n) { return n == Notation::Ascii ? "&" : "∧"; }

std::string entry_text(const LogicFormula& f, Notation n) {
  if (const auto* text = std::get_if<TextForm>(&f.form)) {
    // keep the entry grammar unambiguous: parenthesize loose top-level ops
    std::string s = print_formula(text->ast, n);
    if (needs_entry_parens(text->ast)) return "(" + s + ")";
    return s;
  }
  return render_form(f.form, n);
}

void print_formula_clause(std::ostream& os, const char* keyword,
                          const std::vector<LogicFormula>& formulas, Notation n) {
  if (formulas.empty()) return;
  os << keyword << "\n";
  bool first = true;
  for (const LogicFormula& f : formulas) {
    os << "  ";
    if (f.classification == Classification::Theorem) os << "theorem ";
    os << f.label;
    if (f.label.empty() || f.label.front() != '(') os << ":";
    if (!first) os << " " << join_op(n);
    os << " " << entry_text(f, n) << "\n";
    first = false;
  }
}

std::string subst_text(const Substitution& s, Notation n) {
  std::string out = s.target + " := ";
  if (s.maplets) {
    out += "{";
    for (std::size_t i = 0; i < s.maplets->size(); ++i) {
      if (i) out += ", ";
      out += (*s.maplets)[i].first + (n == Notation::Ascii ? " |-> " : " ↦ ") +
             (*s.maplets)[i].second;
    }
    out += "}";
  } else {
    out += print_formula(*s.expr, n);
  }
  return out;
}

void print_actions(std::ostream& os, const Event& e, Notation n) {
  int k = 1;
  for (const Action& a : e.actions) {
    os << "    act" << k++ << ": " << print_formula(a.target, n)
       << (a.kind == ActionKind::Assign ? " := " : " :: ") << print_formula(a.expr, n) << "\n";
  }
}

void print_event(std::ostream& os, const Event& e, Notation n) {
  os << "Event " << e.name;
  if (e.status == EventStatus::Convergent) os << " <convergent>";
  os << " =\n";
  if (!e.params.empty() || !e.guards.empty()) {
    if (!e.params.empty()) {
      os << "  any ";
      for (std::size_t i = 0; i < e.params.size(); ++i) {
        if (i) os << ", ";
        os << e.params[i];
      }
      os << "\n  where\n";
    } else {
      os << "  when\n";
    }
    for (const Guard& g : e.guards)
      os << "    " << g.label << ": " << print_formula(g.pred, n) << "\n";
    if (!e.actions.empty()) {
      os << "  then\n";
      print_actions(os, e, n);
    }
  } else {
    os << "  begin\n";
    print_actions(os, e, n);
  }
  os << "  end\n";
}

}  // namespace

std::string print_component(const Component& c, Notation n) {
  std::ostringstream os;
  if (c.refines) {
    os << "REFINEMENT\n  " << c.name << "\nREFINES\n  " << *c.refines << "\n";
  } else {
    os << "SYSTEM\n  " << c.name << "\n";
  }
  if (!c.sets.empty()) {
    os << "SETS\n";
    for (std::size_t i = 0; i < c.sets.size(); ++i) {
      const SetDecl& s = c.sets[i];
      os << "  ";
      if (!s.annotation.empty()) os << "/*@ " << s.annotation << " */ ";
      os << s.name;
      if (s.items) {
        os << " = {";
        for (std::size_t j = 0; j < s.items->size(); ++j) {
          if (j) os << ", ";
          os << (*s.items)[j];
        }
        os << "}";
      }
      if (i + 1 < c.sets.size()) os << ";";
      os << "\n";
    }
  }
  if (!c.constants.empty()) {
    os << "CONSTANTS\n  ";
    for (std::size_t i = 0; i < c.constants.size(); ++i) {
      if (i) os << ", ";
      os << c.constants[i];
    }
    os << "\n";
  }
  print_formula_clause(os, "PROPERTIES", c.properties, n);
  if (!c.variables.empty()) {
    os << "VARIABLES\n  ";
    for (std::size_t i = 0; i < c.variables.size(); ++i) {
      if (i) os << ", ";
      os << c.variables[i];
    }
    os << "\n";
  }
  print_formula_clause(os, "INVARIANT", c.invariants, n);
  if (!c.initialisation.empty()) {
    os << "INITIALISATION\n";
    bool first = true;
    for (const Substitution& s : c.initialisation) {
      os << "  ";
      if (!s.label.empty()) {
        os << s.label;
        if (s.label.front() != '(') os << ":";
        os << " ";
      }
      if (!first) os << "|| ";
      os << subst_text(s, n) << "\n";
      first = false;
    }
  }
  for (const Event& e : c.events) print_event(os, e, n);
  os << "END\n";
  return os.str();
}

namespace {

std::string card_text(const Cardinality& c) {
  std::string out = std::to_string(c.min) + "..";
  out += c.max ? std::to_string(*c.max) : "*";
  return out;
}

void print_flag(std::ostream& os, const char* name, bool value, bool always = false) {
  if (value || always) os << "    is " << name << ": " << (value ? "true" : "false") << "\n";
}

std::string predicate_text(const Predicate& p) {
  std::string out;
  if (!p.id.empty()) out += p.id + ": ";
  if (p.horn) {
    auto atoms = [&](const std::vector<Formula>& list) {
      std::string s;
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) s += " & ";
        s += print_formula(list[i], Notation::Ascii);
      }
      return s;
    };
    out += atoms(p.horn->head) + " <- " + atoms(p.horn->body);
  } else {
    out += print_formula(*p.formula, Notation::Ascii);
  }
  return out;
}

}  // namespace

std::string print_domain_model(const DomainModel& m) {
  std::ostringstream os;
  os << "domain model " << m.name;
  if (m.parent) os << " parent domain model " << *m.parent;
  os << " {\n";

  if (!m.concepts.empty()) {
    os << "  concepts:\n";
    for (const Concept& c : m.concepts) {
      os << "    concept " << c.name;
      if (c.parent) os << " parent concept " << *c.parent;
      os << " is variable: " << (c.is_variable ? "true" : "false") << "\n";
    }
  }
  if (!m.relations.empty()) {
    os << "  relations:\n";
    for (const Relation& r : m.relations) {
      os << "    relation " << r.name << " domain: " << r.domain << " range: " << r.range
         << " {\n";
      print_flag(os, "variable", r.is_variable, true);
      print_flag(os, "transitive", r.is_transitive);
      print_flag(os, "symmetric", r.is_symmetric);
      print_flag(os, "asymmetric", r.is_asymmetric);
      print_flag(os, "reflexive", r.is_reflexive);
      print_flag(os, "irreflexive", r.is_irreflexive);
      if (!r.domain_cardinality.vacuous())
        os << "    domain cardinality: " << card_text(r.domain_cardinality) << "\n";
      if (!r.range_cardinality.vacuous())
        os << "    range cardinality: " << card_text(r.range_cardinality) << "\n";
      os << "    }\n";
    }
  }
  if (!m.attributes.empty()) {
    os << "  attributes:\n";
    for (const Attribute& a : m.attributes) {
      os << "    attribute " << a.name << " domain: ";
      if (a.domain.kind == DomainRef::Kind::Concept) os << a.domain.name;
      else os << print_formula(*a.domain.expr, Notation::Ascii);
      os << " range: ";
      switch (a.range.kind) {
        case RangeRef::Kind::Named: os << a.range.name; break;
        case RangeRef::Kind::Default: os << default_set_name(a.range.def); break;
        case RangeRef::Kind::Expr: os << print_formula(*a.range.expr, Notation::Ascii); break;
        case RangeRef::Kind::InlineEnum: {
          os << "{";
          for (std::size_t i = 0; i < a.range.values.size(); ++i) {
            if (i) os << ", ";
            os << a.range.values[i];
          }
          os << "}";
          break;
        }
      }
      os << " {\n";
      print_flag(os, "variable", a.is_variable, true);
      print_flag(os, "functional", a.is_functional, true);
      print_flag(os, "total", a.is_total, true);
      os << "    }\n";
    }
  }
  if (!m.data_sets.empty()) {
    os << "  data sets:\n";
    for (const DataSet& d : m.data_sets) {
      if (const auto* e = std::get_if<EnumeratedDataSet>(&d.v)) {
        os << "    enumerated data set " << e->name << " { elements:";
        for (const auto& v : e->values) os << " data value " << v;
        os << " }\n";
      } else {
        const auto& c = std::get<CustomDataSet>(d.v);
        os << "    custom data set " << c.name;
        if (c.predicate_id) os << " defined by: " << *c.predicate_id;
        os << "\n";
      }
    }
  }
  if (!m.data_values.empty()) {
    os << "  data values:\n";
    for (const DataValue& v : m.data_values) {
      os << "    data value " << v.name << " type: ";
      if (v.value_of.kind == RangeRef::Kind::Default) os << default_set_name(v.value_of.def);
      else os << v.value_of.name;
      os << "\n";
    }
  }
  if (!m.individuals.empty()) {
    os << "  individuals:\n";
    for (const Individual& i : m.individuals)
      os << "    individual " << i.name << " of " << i.concept_name << "\n";
  }
  if (!m.maplets.empty()) {
    os << "  maplets:\n";
    for (const Maplet& mp : m.maplets)
      os << "    maplet " << mp.owner << ": " << mp.antecedent << " |-> " << mp.image << "\n";
  }
  bool any_plain = false, any_gluing = false;
  for (const Predicate& p : m.predicates) (p.is_gluing ? any_gluing : any_plain) = true;
  if (any_plain) {
    os << "  predicates:\n";
    for (const Predicate& p : m.predicates)
      if (!p.is_gluing) os << "    " << predicate_text(p) << "\n";
  }
  if (any_gluing) {
    os << "  gluing invariants:\n";
    for (const Predicate& p : m.predicates)
      if (p.is_gluing) os << "    " << predicate_text(p) << "\n";
  }
  os << "}\n";
  return os.str();
}

std::string print_goal_model(const GoalModel& gm) {
  std::ostringstream os;
  os << "goal model " << gm.name << " {\n";
  os << "  root goal " << gm.root << "\n";
  for (const Refinement& r : gm.refinements) {
    os << "  refinement " << refinement_op_name(r.op) << " " << r.parent << " <- ";
    for (std::size_t i = 0; i < r.children.size(); ++i) {
      if (i) os << ", ";
      os << r.children[i];
    }
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

std::string print_trace(const CorrespondenceTrace& trace,
                        std::span<const std::string> header_lines) {
  std::ostringstream os;
  for (const auto& line : header_lines) os << "# " << line << "\n";
  for (const auto& [kind, m] : trace.maps)
    for (const auto& [domain_qname, b_qname] : m)
      os << kind << "\t" << domain_qname << "\t" << b_qname << "\n";
  return os.str();
}

CorrespondenceTrace load_trace(std::string_view text) {
  CorrespondenceTrace trace;
  std::size_t pos = 0;
  int line_no = 1;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string_view::npos ? std::string_view::npos
                                               : line.find('\t', tab1 + 1);
    if (tab1 == std::string_view::npos || tab2 == std::string_view::npos)
      throw SyntaxError({line_no - 1, 1}, "trace record needs three tab-separated fields");
    trace.maps[std::string(line.substr(0, tab1))].emplace(
        std::string(line.substr(tab1 + 1, tab2 - tab1 - 1)), std::string(line.substr(tab2 + 1)));
  }
  return trace;
}

std::string print_po_file(std::span<const PoBlock> blocks, Notation n) {
  std::ostringstream os;
  for (const PoBlock& b : blocks) {
    os << "component " << b.component << "\n";
    for (const GeneratedTheorem& t : b.theorems)
      os << "theorem " << t.label << ": " << print_formula(t.expanded, n) << "\n";
    os << "\n";
  }
  return os.str();
}

}  // namespace kaos2b
