#include "kaos2b/backprop.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kaos2b {

namespace {

std::string form_fingerprint(const FormulaForm& form) {
  std::string joined;
  for (const auto& t : normalize_tokens(render_form(form, Notation::Ascii))) {
    joined += t;
    joined += '\x1f';
  }
  return joined;
}

[[noreturn]] void fail(BackpropErrorCode code, const std::string& msg) {
  throw BackpropError(code, msg);
}

struct TypingShape {
  enum class Kind { Inclusion, Belonging, Arrow };
  Kind kind = Kind::Belonging;
  std::string rhs;  // Inclusion/Belonging: right-hand name
  Formula domain;
  Formula range;
  ArrowKind arrow = ArrowKind::Relation;
};

// Recognizes X <: Y, X : Y and X : A arrow B for the given element, over
// structured forms or (fallback) over parsed text.
std::optional<TypingShape> match_typing_shape(const std::string& element,
                                              const FormulaForm& form) {
  if (const auto* inc = std::get_if<InclusionForm>(&form)) {
    if (inc->left != element) return std::nullopt;
    return TypingShape{TypingShape::Kind::Inclusion, inc->right, {}, {}, {}};
  }
  if (const auto* bel = std::get_if<BelongingForm>(&form)) {
    if (bel->element != element) return std::nullopt;
    return TypingShape{TypingShape::Kind::Belonging, bel->set_name, {}, {}, {}};
  }
  if (const auto* arr = std::get_if<ArrowTypingForm>(&form)) {
    if (arr->element != element) return std::nullopt;
    return TypingShape{TypingShape::Kind::Arrow, "", arr->domain, arr->range, arr->arrow};
  }
  const auto* text = std::get_if<TextForm>(&form);
  if (!text) return std::nullopt;
  const Formula& ast = text->ast;
  if (ast.kind != NodeKind::Binary || ast.children[0].kind != NodeKind::Ident ||
      ast.children[0].text != element)
    return std::nullopt;
  const Formula& rhs = ast.children[1];
  if (ast.text == "<:" && rhs.kind == NodeKind::Ident)
    return TypingShape{TypingShape::Kind::Inclusion, rhs.text, {}, {}, {}};
  if (ast.text == ":") {
    if (rhs.kind == NodeKind::Ident)
      return TypingShape{TypingShape::Kind::Belonging, rhs.text, {}, {}, {}};
    if (rhs.kind == NodeKind::Binary) {
      if (auto arrow = arrow_from_token(rhs.text))
        return TypingShape{TypingShape::Kind::Arrow, "", rhs.children[0], rhs.children[1],
                           *arrow};
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Addition> diff_component(const Component& baseline, const Component& edited) {
  if (baseline.name != edited.name)
    fail(BackpropErrorCode::NameClash, "components '" + baseline.name + "' and '" + edited.name +
                                           "' do not match");

  std::vector<Addition> additions;
  std::set<std::string> baseline_names;
  for (const SetDecl& s : baseline.sets) {
    baseline_names.insert(s.name);
    if (s.items)
      for (const auto& i : *s.items) baseline_names.insert(i);
  }
  for (const auto& k : baseline.constants) baseline_names.insert(k);
  for (const auto& v : baseline.variables) baseline_names.insert(v);

  // sets: baseline entries must survive unchanged apart from appended items
  for (const SetDecl& b : baseline.sets) {
    const SetDecl* e = nullptr;
    for (const SetDecl& s : edited.sets)
      if (s.name == b.name) e = &s;
    if (!e) fail(BackpropErrorCode::UnsupportedEdit, "set '" + b.name + "' was removed");
    if (b.items.has_value() != e->items.has_value())
      fail(BackpropErrorCode::UnsupportedEdit, "set '" + b.name + "' changed kind");
    if (b.items) {
      std::size_t bi = 0;
      std::vector<std::string> new_items;
      for (const std::string& item : *e->items) {
        if (bi < b.items->size() && (*b.items)[bi] == item) {
          ++bi;
        } else {
          new_items.push_back(item);
        }
      }
      if (bi != b.items->size())
        fail(BackpropErrorCode::UnsupportedEdit,
             "items of set '" + b.name + "' were removed or reordered");
      for (const std::string& item : new_items) {
        Addition a;
        a.kind = AdditionKind::SetItem;
        a.name = item;
        a.owner = b.name;
        additions.push_back(std::move(a));
      }
    }
  }
  for (const SetDecl& s : edited.sets) {
    bool known = std::any_of(baseline.sets.begin(), baseline.sets.end(),
                             [&](const SetDecl& b) { return b.name == s.name; });
    if (known) continue;
    if (baseline_names.count(s.name))
      fail(BackpropErrorCode::NameClash, "added set '" + s.name + "' clashes with an existing name");
    Addition a;
    a.kind = s.items ? AdditionKind::EnumeratedSet : AdditionKind::AbstractSet;
    a.name = s.name;
    a.annotation = s.annotation;
    if (s.items) a.items = *s.items;
    additions.push_back(std::move(a));
  }

  // constants / variables
  auto diff_idents = [&](const std::vector<std::string>& base, const std::vector<std::string>& ed,
                         AdditionKind kind, const char* what) {
    for (const std::string& b : base)
      if (std::find(ed.begin(), ed.end(), b) == ed.end())
        fail(BackpropErrorCode::UnsupportedEdit, std::string(what) + " '" + b + "' was removed");
    for (const std::string& e : ed) {
      if (std::find(base.begin(), base.end(), e) != base.end()) continue;
      if (baseline_names.count(e))
        fail(BackpropErrorCode::NameClash,
             "added " + std::string(what) + " '" + e + "' clashes with an existing name");
      Addition a;
      a.kind = kind;
      a.name = e;
      additions.push_back(std::move(a));
    }
  };
  diff_idents(baseline.constants, edited.constants, AdditionKind::Constant, "constant");
  diff_idents(baseline.variables, edited.variables, AdditionKind::Variable, "variable");

  // properties / invariants by label
  std::vector<const LogicFormula*> new_formulas;
  auto diff_formulas = [&](const std::vector<LogicFormula>& base,
                           const std::vector<LogicFormula>& ed, const char* what) {
    std::map<std::string, const LogicFormula*> base_by_label;
    for (const LogicFormula& f : base) base_by_label.emplace(f.label, &f);
    std::set<std::string> edited_labels;
    for (const LogicFormula& f : ed) {
      edited_labels.insert(f.label);
      auto it = base_by_label.find(f.label);
      if (it == base_by_label.end()) {
        new_formulas.push_back(&f);
        continue;
      }
      if (form_fingerprint(it->second->form) != form_fingerprint(f.form))
        fail(BackpropErrorCode::UnsupportedEdit,
             std::string(what) + " " + f.label + " was modified");
    }
    for (const LogicFormula& f : base)
      if (!edited_labels.count(f.label))
        fail(BackpropErrorCode::UnsupportedEdit, std::string(what) + " " + f.label + " was removed");
  };
  diff_formulas(baseline.properties, edited.properties, "property");
  diff_formulas(baseline.invariants, edited.invariants, "invariant");

  // initialisation by target
  for (const Substitution& b : baseline.initialisation) {
    const Substitution* e = nullptr;
    for (const Substitution& s : edited.initialisation)
      if (s.target == b.target) e = &s;
    if (!e)
      fail(BackpropErrorCode::UnsupportedEdit,
           "initialisation of '" + b.target + "' was removed");
    auto render = [](const Substitution& s) {
      Substitution copy = s;
      copy.label.clear();
      std::string out = copy.target + ":=";
      if (copy.maplets) {
        for (const auto& [a, i] : *copy.maplets) out += a + "|" + i + ";";
      } else {
        out += print_formula(*copy.expr, Notation::Ascii);
      }
      return out;
    };
    if (render(b) != render(*e))
      fail(BackpropErrorCode::UnsupportedEdit,
           "initialisation of '" + b.target + "' was modified");
  }
  std::vector<const Substitution*> new_substs;
  for (const Substitution& s : edited.initialisation) {
    bool known = std::any_of(baseline.initialisation.begin(), baseline.initialisation.end(),
                             [&](const Substitution& b) { return b.target == s.target; });
    if (!known) new_substs.push_back(&s);
  }

  // attach typing formulas to new constants/variables; leftovers are plain
  // formula additions
  std::set<const LogicFormula*> consumed;
  for (Addition& a : additions) {
    if (a.kind != AdditionKind::Constant && a.kind != AdditionKind::Variable) continue;
    const LogicFormula* match = nullptr;
    for (const LogicFormula* f : new_formulas) {
      if (!match_typing_shape(a.name, f->form)) continue;
      if (match)
        fail(BackpropErrorCode::AmbiguousPattern,
             "'" + a.name + "' has more than one typing formula");
      match = f;
    }
    if (match) {
      a.typing = *match;
      consumed.insert(match);
    }
  }
  for (const LogicFormula* f : new_formulas) {
    if (consumed.count(f)) continue;
    Addition a;
    a.kind = AdditionKind::Formula;
    a.name = f->label;
    a.formula = *f;
    additions.push_back(std::move(a));
  }
  for (const Substitution* s : new_substs) {
    Addition a;
    a.kind = AdditionKind::SubstitutionEntry;
    a.name = s->target;
    a.subst = *s;
    additions.push_back(std::move(a));
  }
  return additions;
}

namespace {

// Reverse view of the trace restricted to the components visible from the
// edited level.
class ReverseTrace {
public:
  ReverseTrace(const CorrespondenceTrace& trace, std::span<const DomainModel> chain,
               int edited_level)
      : trace_(trace) {
    for (int i = 0; i <= edited_level && i < static_cast<int>(chain.size()); ++i)
      components_.push_back(chain[static_cast<std::size_t>(i)].name);
  }

  // domain-side qualified name for a plain B name, searching the given kinds
  std::optional<std::pair<std::string, std::string>> find(
      std::initializer_list<const char*> kinds, const std::string& b_name) const {
    for (const char* kind : kinds) {
      auto hit = trace_.reverse_find(kind, b_name,
                                     std::span<const std::string>(components_));
      if (hit) return std::make_pair(std::string(kind), *hit);
    }
    return std::nullopt;
  }

  bool known(const std::string& b_name) const {
    static const char* all[] = {
        trace_kind::ConceptSet,      trace_kind::ConceptConstant, trace_kind::ConceptVariable,
        trace_kind::DataSet,         trace_kind::DataValueItem,   trace_kind::DataValueConstant,
        trace_kind::Individual,      trace_kind::RelationType,    trace_kind::RelationElement,
        trace_kind::AttributeType,   trace_kind::AttributeElement};
    for (const char* kind : all)
      if (trace_.reverse_find(kind, b_name, std::span<const std::string>(components_)))
        return true;
    return false;
  }

private:
  const CorrespondenceTrace& trace_;
  std::vector<std::string> components_;
};

std::string strip_model(const std::string& qname) {
  auto dot = qname.find('.');
  return dot == std::string::npos ? qname : qname.substr(dot + 1);
}

// inverse of the translation cardinality ladder
void arrow_cardinalities(ArrowKind arrow, Cardinality* domain_card, Cardinality* range_card) {
  auto bounded = [](std::uint32_t lo, std::uint32_t hi) {
    Cardinality c;
    c.min = lo;
    c.max = hi;
    return c;
  };
  auto unbounded = [](std::uint32_t lo) {
    Cardinality c;
    c.min = lo;
    return c;
  };
  switch (arrow) {
    case ArrowKind::Bijection: *domain_card = bounded(1, 1); *range_card = bounded(1, 1); break;
    case ArrowKind::TotalInjection: *domain_card = bounded(0, 1); *range_card = bounded(1, 1); break;
    case ArrowKind::TotalSurjection: *domain_card = unbounded(1); *range_card = bounded(1, 1); break;
    case ArrowKind::TotalFunction: *domain_card = unbounded(0); *range_card = bounded(1, 1); break;
    case ArrowKind::PartialFunction: *domain_card = unbounded(0); *range_card = bounded(0, 1); break;
    case ArrowKind::PartialInjection: *domain_card = bounded(0, 1); *range_card = bounded(0, 1); break;
    case ArrowKind::PartialSurjection: *domain_card = unbounded(1); *range_card = bounded(0, 1); break;
    case ArrowKind::Relation: *domain_card = unbounded(0); *range_card = unbounded(0); break;
  }
}

void infer_functional_flags(ArrowKind arrow, Attribute* attr) {
  switch (arrow) {
    case ArrowKind::TotalFunction:
    case ArrowKind::TotalInjection:
    case ArrowKind::TotalSurjection:
    case ArrowKind::Bijection:
      attr->is_functional = true;
      attr->is_total = true;
      break;
    case ArrowKind::PartialFunction:
    case ArrowKind::PartialInjection:
    case ArrowKind::PartialSurjection:
      attr->is_functional = true;
      break;
    case ArrowKind::Relation:
      break;
  }
}

class BackpropEngine {
public:
  BackpropEngine(std::span<const Addition> additions, const CorrespondenceTrace& trace,
                 std::span<const DomainModel> chain, int edited_level)
      : additions_(additions),
        trace_(trace),
        reverse_(trace, chain, edited_level),
        chain_(chain),
        level_(edited_level),
        extended_(trace) {
    if (edited_level < 0 || edited_level >= static_cast<int>(chain.size()))
      throw BackpropError(BackpropErrorCode::NoMatchingRule, "edited level out of range");
    model_name_ = chain[static_cast<std::size_t>(edited_level)].name;
  }

  DomainDelta run() {
    // sets first, then typed declarations, then leftover formulas and
    // substitutions; diff_component already orders additions that way
    for (const Addition& a : additions_) apply(a);

    auto updated = apply_delta(chain_, delta_);
    auto violations = validate_chain(updated);
    if (!violations.empty()) throw ValidationFailed(std::move(violations));

    auto issues = extended_.injectivity_issues();
    if (!issues.empty())
      throw BackpropError(BackpropErrorCode::NameClash,
                          "extended trace is not injective: " + issues.front());
    return std::move(delta_);
  }

  CorrespondenceTrace extended_trace() && { return std::move(extended_); }

private:
  std::string dq(const std::string& element) const { return model_name_ + "." + element; }
  std::string bq(const std::string& element) const { return model_name_ + "." + element; }

  void add_entry(const std::string& rule, int target_level, DeltaPayload payload) {
    delta_.entries.push_back(DeltaEntry{rule, target_level, std::move(payload)});
  }

  void apply(const Addition& a) {
    switch (a.kind) {
      case AdditionKind::EnumeratedSet: return rule_103(a);
      case AdditionKind::AbstractSet: return a.annotation == "dataset" ? rule_102(a) : rule_101(a);
      case AdditionKind::SetItem: return rule_104(a);
      case AdditionKind::Constant: return typed_declaration(a, /*variable=*/false);
      case AdditionKind::Variable: return typed_declaration(a, /*variable=*/true);
      case AdditionKind::Formula: return formula_addition(a);
      case AdditionKind::SubstitutionEntry: return substitution_addition(a);
    }
  }

  void rule_101(const Addition& a) {
    Concept c;
    c.name = a.name;
    add_entry("rule_101", level_, AddConcept{std::move(c)});
    extended_.add(trace_kind::ConceptSet, dq(a.name), bq(a.name));
    new_concepts_.insert(a.name);
  }

  void rule_102(const Addition& a) {
    CustomDataSet ds;
    ds.name = a.name;
    add_entry("rule_102", level_, AddCustomSet{std::move(ds)});
    extended_.add(trace_kind::DataSet, dq(a.name), bq(a.name));
  }

  void rule_103(const Addition& a) {
    EnumeratedDataSet ds;
    ds.name = a.name;
    ds.values = a.items;
    add_entry("rule_103", level_, AddEnumSet{std::move(ds)});
    extended_.add(trace_kind::DataSet, dq(a.name), bq(a.name));
    for (const std::string& item : a.items)
      extended_.add(trace_kind::DataValueItem, dq(a.name) + "." + item, bq(a.name) + "." + item);
  }

  void rule_104(const Addition& a) {
    auto hit = reverse_.find({trace_kind::DataSet}, a.owner);
    if (!hit)
      fail(BackpropErrorCode::NoMatchingRule,
           "set item '" + a.name + "': set '" + a.owner + "' has no data-set correspondent");
    add_entry("rule_104", level_of(hit->second), AddEnumValue{strip_model(hit->second), a.name});
    extended_.add(trace_kind::DataValueItem, hit->second + "." + a.name,
                  component_of(hit->second) + "." + a.owner + "." + a.name);
  }

  void typed_declaration(const Addition& a, bool variable) {
    if (!a.typing)
      fail(BackpropErrorCode::NoMatchingRule,
           std::string(variable ? "variable" : "constant") + " '" + a.name +
               "' has no recognizable typing formula");
    auto shape = match_typing_shape(a.name, a.typing->form);
    if (!shape)
      fail(BackpropErrorCode::NoMatchingRule,
           "'" + a.name + "': unsupported typing pattern");

    switch (shape->kind) {
      case TypingShape::Kind::Inclusion: {
        auto concept_hit =
            reverse_.find({trace_kind::ConceptSet, trace_kind::ConceptConstant}, shape->rhs);
        if (!concept_hit)
          fail(BackpropErrorCode::NoMatchingRule,
               "'" + a.name + "': superset '" + shape->rhs + "' is not a concept correspondent");
        if (variable) return rule_108(a, concept_hit->second);
        return rule_105(a, concept_hit->second);
      }
      case TypingShape::Kind::Belonging: {
        if (variable)
          fail(BackpropErrorCode::NoMatchingRule,
               "variable '" + a.name + "' typed by membership has no back-propagation rule");
        auto concept_hit =
            reverse_.find({trace_kind::ConceptSet, trace_kind::ConceptConstant}, shape->rhs);
        if (concept_hit) return rule_106(a, concept_hit->second);
        auto set_hit = reverse_.find({trace_kind::DataSet}, shape->rhs);
        if (set_hit) return rule_107(a, strip_model(set_hit->second), /*is_default=*/false);
        if (default_set_from_name(shape->rhs))
          return rule_107(a, shape->rhs, /*is_default=*/true);
        fail(BackpropErrorCode::NoMatchingRule,
             "'" + a.name + "': '" + shape->rhs + "' has no concept or data-set correspondent");
      }
      case TypingShape::Kind::Arrow:
        return arrow_declaration(a, *shape, variable);
    }
  }

  void rule_105(const Addition& a, const std::string& parent_qname) {
    Concept c;
    c.name = a.name;
    c.parent = strip_model(parent_qname);
    add_entry("rule_105", level_, AddConcept{std::move(c)});
    extended_.add(trace_kind::ConceptConstant, dq(a.name), bq(a.name));
    new_concepts_.insert(a.name);
  }

  void rule_106(const Addition& a, const std::string& concept_qname) {
    Individual ind;
    ind.name = a.name;
    ind.concept_name = strip_model(concept_qname);
    add_entry("rule_106", level_, AddIndividual{std::move(ind)});
    extended_.add(trace_kind::Individual, dq(a.name), bq(a.name));
    new_names_.insert(a.name);
  }

  void rule_107(const Addition& a, const std::string& set_name, bool is_default) {
    DataValue v;
    v.name = a.name;
    if (is_default) {
      v.value_of.kind = RangeRef::Kind::Default;
      v.value_of.def = *default_set_from_name(set_name);
    } else {
      v.value_of.kind = RangeRef::Kind::Named;
      v.value_of.name = set_name;
      // values of anonymous enumerations cannot be named in the model text
      if (set_name.rfind("DataSet_", 0) == 0 && !declared_set(set_name))
        fail(BackpropErrorCode::NoMatchingRule,
             "'" + a.name + "': data set '" + set_name + "' is anonymous in the domain model");
    }
    add_entry("rule_107", level_, AddDataValue{std::move(v)});
    extended_.add(trace_kind::DataValueConstant, dq(a.name), bq(a.name));
    new_names_.insert(a.name);
  }

  void rule_108(const Addition& a, const std::string& concept_qname) {
    std::string concept_name = strip_model(concept_qname);
    int target = level_of(concept_qname);
    const Concept* c = nullptr;
    for (const Concept& decl : chain_[static_cast<std::size_t>(target)].concepts)
      if (decl.name == concept_name) c = &decl;
    if (!c)
      fail(BackpropErrorCode::NoMatchingRule,
           "'" + a.name + "': concept '" + concept_name + "' not found");
    if (c->is_variable || trace_.find(trace_kind::ConceptVariable, concept_qname))
      fail(BackpropErrorCode::NoMatchingRule,
           "concept '" + concept_name + "' already has a variable correspondent");
    add_entry("rule_108", target, SetConceptVariable{concept_name, a.name});
    extended_.add(trace_kind::ConceptVariable, concept_qname,
                  component_of(concept_qname) + "." + a.name);
    extent_variables_.insert(a.name);
    new_names_.insert(a.name);
  }

  void arrow_declaration(const Addition& a, const TypingShape& shape, bool variable) {
    // the range correspondent decides: data set -> attribute, concept -> relation
    std::optional<std::string> range_concept, range_set;
    bool range_default = false;
    if (shape.range.kind == NodeKind::Ident) {
      const std::string& rhs = shape.range.text;
      if (auto hit = reverse_.find({trace_kind::ConceptSet, trace_kind::ConceptConstant}, rhs))
        range_concept = hit->second;
      else if (auto set_hit = reverse_.find({trace_kind::DataSet}, rhs))
        range_set = set_hit->second;
      else if (default_set_from_name(rhs))
        range_default = true;
    }

    if (range_concept) return r4(a, shape, variable, *range_concept);
    if (range_set || range_default) return r3(a, shape, variable, range_set, range_default);
    fail(BackpropErrorCode::NoMatchingRule,
         "'" + a.name + "': arrow range has no concept or data-set correspondent");
  }

  void r3(const Addition& a, const TypingShape& shape, bool variable,
          const std::optional<std::string>& range_set, bool range_default) {
    Attribute attr;
    attr.name = a.name;
    attr.is_variable = variable;
    infer_functional_flags(shape.arrow, &attr);
    if (shape.arrow == ArrowKind::PartialFunction || shape.arrow == ArrowKind::PartialInjection ||
        shape.arrow == ArrowKind::PartialSurjection)
      attr.is_total = false;

    if (shape.domain.kind == NodeKind::Ident &&
        reverse_.find({trace_kind::ConceptSet, trace_kind::ConceptConstant}, shape.domain.text)) {
      attr.domain = {DomainRef::Kind::Concept, shape.domain.text, std::nullopt};
    } else {
      // pass-through domain expression; every mentioned name must correspond
      for (const std::string& n : free_names(shape.domain))
        if (!reverse_.known(n) && !new_names_.count(n) && !new_concepts_.count(n))
          fail(BackpropErrorCode::NoMatchingRule,
               "'" + a.name + "': domain mentions unknown name '" + n + "'");
      attr.domain = {DomainRef::Kind::Expr, "", shape.domain};
    }

    if (range_default) {
      attr.range.kind = RangeRef::Kind::Default;
      attr.range.def = *default_set_from_name(shape.range.text);
    } else {
      std::string set_name = strip_model(*range_set);
      if (set_name.rfind("DataSet_", 0) == 0 && !declared_set(set_name))
        fail(BackpropErrorCode::NoMatchingRule,
             "'" + a.name + "': range data set '" + set_name + "' is anonymous");
      attr.range.kind = RangeRef::Kind::Named;
      attr.range.name = set_name;
    }

    bool indirect = attr.domain.kind == DomainRef::Kind::Concept &&
                    attr.range.kind == RangeRef::Kind::Named;
    add_entry("r3", level_, AddAttribute{attr});
    extended_.add(trace_kind::AttributeElement, dq(a.name), bq(a.name));
    if (indirect) extended_.add(trace_kind::AttributeType, dq(a.name), bq("T_" + a.name));
    if (variable) new_variable_owners_.insert(a.name);
    new_names_.insert(a.name);
  }

  void r4(const Addition& a, const TypingShape& shape, bool variable,
          const std::string& range_qname) {
    if (shape.domain.kind != NodeKind::Ident)
      fail(BackpropErrorCode::NoMatchingRule,
           "'" + a.name + "': relation domain must be a concept");
    auto domain_hit =
        reverse_.find({trace_kind::ConceptSet, trace_kind::ConceptConstant}, shape.domain.text);
    if (!domain_hit)
      fail(BackpropErrorCode::NoMatchingRule,
           "'" + a.name + "': domain '" + shape.domain.text + "' is not a concept correspondent");

    Relation rel;
    rel.name = a.name;
    rel.is_variable = variable;
    rel.domain = strip_model(domain_hit->second);
    rel.range = strip_model(range_qname);
    arrow_cardinalities(shape.arrow, &rel.domain_cardinality, &rel.range_cardinality);
    add_entry("r4", level_, AddRelation{std::move(rel)});
    extended_.add(trace_kind::RelationElement, dq(a.name), bq(a.name));
    extended_.add(trace_kind::RelationType, dq(a.name), bq("T_" + a.name));
    if (variable) new_variable_owners_.insert(a.name);
    new_names_.insert(a.name);
  }

  void formula_addition(const Addition& a) {
    const auto* text = std::get_if<TextForm>(&a.formula->form);
    if (!text)
      fail(BackpropErrorCode::NoMatchingRule,
           "formula " + a.name + " is not a plain predicate");
    for (const std::string& n : text->refs) {
      if (reverse_.known(n) || new_names_.count(n) || new_concepts_.count(n)) continue;
      fail(BackpropErrorCode::NoMatchingRule,
           "formula " + a.name + " mentions '" + n + "' which has no correspondent");
    }
    Predicate p;
    p.id = a.name;
    p.formula = text->ast;
    add_entry("predicate", level_, AddPredicate{std::move(p)});
    extended_.add(trace_kind::Predicate, dq(a.name), bq(a.name));
  }

  void substitution_addition(const Addition& a) {
    if (extent_variables_.count(a.name)) {
      // an empty seed for a freshly variable concept carries no model content
      if (a.subst->maplets && a.subst->maplets->empty()) return;
      fail(BackpropErrorCode::NoMatchingRule,
           "initialisation of '" + a.name + "' cannot be propagated; declare individuals instead");
    }
    if (!new_variable_owners_.count(a.name))
      fail(BackpropErrorCode::NoMatchingRule,
           "initialisation of '" + a.name + "' does not belong to an added variable element");
    if (!a.subst->maplets)
      fail(BackpropErrorCode::NoMatchingRule,
           "initialisation of '" + a.name + "' is not a maplet set");
    for (const auto& [ante, image] : *a.subst->maplets) {
      Maplet m;
      m.owner = a.name;
      m.antecedent = ante;
      m.image = image;
      add_entry("maplet", level_, AddMaplet{std::move(m)});
    }
  }

  bool declared_set(const std::string& name) const {
    for (const DomainModel& m : chain_)
      for (const DataSet& d : m.data_sets)
        if (d.name() == name) return true;
    return false;
  }

  int level_of(const std::string& domain_qname) const {
    auto dot = domain_qname.find('.');
    std::string model = domain_qname.substr(0, dot);
    for (int i = 0; i < static_cast<int>(chain_.size()); ++i)
      if (chain_[static_cast<std::size_t>(i)].name == model) return i;
    throw BackpropError(BackpropErrorCode::NoMatchingRule,
                        "unknown domain model '" + model + "'");
  }

  std::string component_of(const std::string& domain_qname) const {
    return chain_[static_cast<std::size_t>(level_of(domain_qname))].name;
  }

  std::span<const Addition> additions_;
  const CorrespondenceTrace& trace_;
  ReverseTrace reverse_;
  std::span<const DomainModel> chain_;
  int level_;
  std::string model_name_;
  DomainDelta delta_;
  CorrespondenceTrace extended_;
  std::set<std::string> new_concepts_;
  std::set<std::string> new_names_;
  std::set<std::string> new_variable_owners_;
  std::set<std::string> extent_variables_;  // introduced by rule_108
};

}  // namespace

DomainDelta backprop(std::span<const Addition> additions, const CorrespondenceTrace& trace,
                     std::span<const DomainModel> chain, int edited_level,
                     CorrespondenceTrace* extended_trace) {
  BackpropEngine engine(additions, trace, chain, edited_level);
  DomainDelta delta = engine.run();
  if (extended_trace) *extended_trace = std::move(engine).extended_trace();
  return delta;
}

std::vector<DomainModel> apply_delta(std::span<const DomainModel> chain,
                                     const DomainDelta& delta) {
  std::vector<DomainModel> out(chain.begin(), chain.end());
  auto anon = anonymous_set_names(chain);
  for (const DeltaEntry& e : delta.entries) {
    DomainModel& m = out[static_cast<std::size_t>(e.target_level)];
    std::visit(
        [&](const auto& payload) {
          using T = std::decay_t<decltype(payload)>;
          if constexpr (std::is_same_v<T, AddConcept>) {
            m.concepts.push_back(payload.concept_decl);
          } else if constexpr (std::is_same_v<T, SetConceptVariable>) {
            for (Concept& c : m.concepts)
              if (c.name == payload.concept_name) c.is_variable = true;
          } else if constexpr (std::is_same_v<T, AddEnumSet>) {
            m.data_sets.push_back({payload.set_decl});
          } else if constexpr (std::is_same_v<T, AddEnumValue>) {
            bool done = false;
            for (DataSet& d : m.data_sets) {
              auto* en = std::get_if<EnumeratedDataSet>(&d.v);
              if (en && en->name == payload.set_name) {
                en->values.push_back(payload.value);
                done = true;
              }
            }
            if (!done) {
              // anonymous enumeration of an attribute
              for (int i = 0; i < static_cast<int>(m.attributes.size()); ++i) {
                auto it = anon.find({e.target_level, i});
                if (it != anon.end() && it->second == payload.set_name) {
                  m.attributes[static_cast<std::size_t>(i)].range.values.push_back(payload.value);
                  done = true;
                }
              }
            }
            if (!done)
              throw BackpropError(BackpropErrorCode::NoMatchingRule,
                                  "enumerated set '" + payload.set_name + "' not found");
          } else if constexpr (std::is_same_v<T, AddCustomSet>) {
            m.data_sets.push_back({payload.set_decl});
          } else if constexpr (std::is_same_v<T, AddIndividual>) {
            m.individuals.push_back(payload.individual);
          } else if constexpr (std::is_same_v<T, AddDataValue>) {
            m.data_values.push_back(payload.value);
          } else if constexpr (std::is_same_v<T, AddRelation>) {
            m.relations.push_back(payload.relation);
          } else if constexpr (std::is_same_v<T, AddAttribute>) {
            m.attributes.push_back(payload.attribute);
          } else if constexpr (std::is_same_v<T, AddPredicate>) {
            m.predicates.push_back(payload.predicate);
          } else if constexpr (std::is_same_v<T, AddMaplet>) {
            m.maplets.push_back(payload.maplet);
          }
        },
        e.payload);
  }
  return out;
}

}  // namespace kaos2b
