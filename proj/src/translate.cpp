#include "kaos2b/translate.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace kaos2b {

void CorrespondenceTrace::add(const std::string& kind, const std::string& domain_qname,
                              const std::string& b_qname) {
  auto& m = maps[kind];
  auto [it, inserted] = m.emplace(domain_qname, b_qname);
  if (!inserted && it->second != b_qname)
    throw TranslateError("trace entry for " + domain_qname + " already exists");
}

std::optional<std::string> CorrespondenceTrace::find(const std::string& kind,
                                                     const std::string& domain_qname) const {
  auto mit = maps.find(kind);
  if (mit == maps.end()) return std::nullopt;
  auto it = mit->second.find(domain_qname);
  if (it == mit->second.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> CorrespondenceTrace::reverse_find(
    const std::string& kind, const std::string& b_name,
    std::span<const std::string> component_names) const {
  auto mit = maps.find(kind);
  if (mit == maps.end()) return std::nullopt;
  for (const auto& [domain_qname, b_qname] : mit->second) {
    auto dot = b_qname.find('.');
    if (dot == std::string::npos) continue;
    std::string comp = b_qname.substr(0, dot);
    std::string name = b_qname.substr(dot + 1);
    // enumerated values are component.set.item; match on the last segment
    auto last_dot = name.rfind('.');
    std::string plain = last_dot == std::string::npos ? name : name.substr(last_dot + 1);
    if (plain != b_name) continue;
    if (std::find(component_names.begin(), component_names.end(), comp) ==
        component_names.end())
      continue;
    return domain_qname;
  }
  return std::nullopt;
}

std::vector<std::string> CorrespondenceTrace::injectivity_issues() const {
  std::vector<std::string> issues;
  for (const auto& [kind, m] : maps) {
    std::map<std::string, std::string> seen;
    for (const auto& [d, b] : m) {
      auto [it, inserted] = seen.emplace(b, d);
      if (!inserted)
        issues.push_back(kind + ": '" + b + "' is the correspondent of both '" + it->second +
                         "' and '" + d + "'");
    }
  }
  return issues;
}

std::map<std::pair<int, int>, std::string> anonymous_set_names(
    std::span<const DomainModel> chain) {
  std::map<std::pair<int, int>, std::string> names;
  int counter = 1;
  for (int level = 0; level < static_cast<int>(chain.size()); ++level) {
    const DomainModel& m = chain[static_cast<std::size_t>(level)];
    for (int i = 0; i < static_cast<int>(m.attributes.size()); ++i) {
      if (m.attributes[static_cast<std::size_t>(i)].range.kind == RangeRef::Kind::InlineEnum)
        names[{level, i}] = "DataSet_" + std::to_string(counter++);
    }
  }
  return names;
}

std::vector<std::string> totality_issues(const CorrespondenceTrace& trace,
                                         std::span<const DomainModel> chain) {
  std::vector<std::string> issues;
  auto anon = anonymous_set_names(chain);
  auto require = [&](const char* kind, const std::string& qname) {
    if (!trace.find(kind, qname))
      issues.push_back(std::string(kind) + ": no correspondent for " + qname);
  };

  for (int level = 0; level < static_cast<int>(chain.size()); ++level) {
    const DomainModel& m = chain[static_cast<std::size_t>(level)];
    require(trace_kind::DomainModel, m.name);
    for (const Concept& c : m.concepts) {
      bool as_set = trace.find(trace_kind::ConceptSet, m.name + "." + c.name).has_value();
      bool as_constant =
          trace.find(trace_kind::ConceptConstant, m.name + "." + c.name).has_value();
      if (as_set == as_constant)
        issues.push_back("concept " + m.name + "." + c.name +
                         " must map into exactly one of {abstract_set, constant}");
      if (c.is_variable) require(trace_kind::ConceptVariable, m.name + "." + c.name);
    }
    for (const DataSet& d : m.data_sets) {
      require(trace_kind::DataSet, m.name + "." + d.name());
      if (const auto* e = std::get_if<EnumeratedDataSet>(&d.v))
        for (const auto& v : e->values)
          require(trace_kind::DataValueItem, m.name + "." + e->name + "." + v);
    }
    for (int i = 0; i < static_cast<int>(m.attributes.size()); ++i) {
      const Attribute& a = m.attributes[static_cast<std::size_t>(i)];
      require(trace_kind::AttributeElement, m.name + "." + a.name);
      bool indirect = a.domain.kind == DomainRef::Kind::Concept &&
                      (a.range.kind == RangeRef::Kind::Named ||
                       a.range.kind == RangeRef::Kind::InlineEnum);
      if (indirect) require(trace_kind::AttributeType, m.name + "." + a.name);
      if (a.range.kind == RangeRef::Kind::InlineEnum) {
        const std::string& set_name = anon.at({level, i});
        require(trace_kind::DataSet, m.name + "." + set_name);
        for (const auto& v : a.range.values)
          require(trace_kind::DataValueItem, m.name + "." + set_name + "." + v);
      }
    }
    for (const DataValue& v : m.data_values)
      require(trace_kind::DataValueConstant, m.name + "." + v.name);
    for (const Individual& i : m.individuals) require(trace_kind::Individual, m.name + "." + i.name);
    for (const Relation& r : m.relations) {
      require(trace_kind::RelationType, m.name + "." + r.name);
      require(trace_kind::RelationElement, m.name + "." + r.name);
    }
    int unnamed = 0;
    for (const Predicate& p : m.predicates) {
      if (!p.id.empty()) {
        require(trace_kind::Predicate, m.name + "." + p.id);
      } else {
        // auto-labeled predicates are keyed by their generated label; count them
        ++unnamed;
      }
    }
    if (unnamed > 0) {
      int found = 0;
      auto it = trace.maps.find(trace_kind::Predicate);
      if (it != trace.maps.end()) {
        for (const auto& [d, b] : it->second) {
          if (d.rfind(m.name + ".(", 0) == 0) ++found;
        }
      }
      if (found < unnamed)
        issues.push_back(std::string(trace_kind::Predicate) + ": " + m.name + " has " +
                         std::to_string(unnamed - found) + " unlabeled predicate(s) untraced");
    }
  }
  return issues;
}

ArrowKind relation_arrow(const Cardinality& domain_card, const Cardinality& range_card) {
  const bool da1 = domain_card.max && *domain_card.max == 1;
  const bool di1 = domain_card.min == 1;
  const bool ra1 = range_card.max && *range_card.max == 1;
  const bool ri1 = range_card.min == 1;
  if (ra1 && ri1 && da1 && di1) return ArrowKind::Bijection;
  if (ra1 && ri1 && da1) return ArrowKind::TotalInjection;
  if (ra1 && ri1 && di1) return ArrowKind::TotalSurjection;
  if (ra1 && di1) return ArrowKind::PartialSurjection;
  if (ra1 && da1) return ArrowKind::PartialInjection;
  if (ra1 && ri1) return ArrowKind::TotalFunction;
  if (ra1) return ArrowKind::PartialFunction;
  return ArrowKind::Relation;
}

namespace {

struct Bound {
  std::uint32_t min;
  std::optional<std::uint32_t> max;
};

// what the arrow already guarantees for card(re~[{y}]) (domain side) resp.
// card(re[{x}]) (range side)
Bound arrow_domain_guarantee(ArrowKind k) {
  switch (k) {
    case ArrowKind::TotalInjection:
    case ArrowKind::PartialInjection: return {0, 1};
    case ArrowKind::TotalSurjection:
    case ArrowKind::PartialSurjection: return {1, std::nullopt};
    case ArrowKind::Bijection: return {1, 1};
    default: return {0, std::nullopt};
  }
}

Bound arrow_range_guarantee(ArrowKind k) {
  switch (k) {
    case ArrowKind::Relation: return {0, std::nullopt};
    case ArrowKind::PartialFunction:
    case ArrowKind::PartialInjection:
    case ArrowKind::PartialSurjection: return {0, 1};
    default: return {1, 1};
  }
}

bool bound_redundant(const Cardinality& declared, Bound guaranteed) {
  if (declared.min > guaranteed.min) return false;
  if (!declared.max) return true;
  if (!guaranteed.max) return false;
  return *guaranteed.max <= *declared.max;
}

CardinalityForm make_card_form(const std::string& relation, const std::string& over,
                               bool inverse, const Cardinality& card) {
  CardinalityForm f;
  f.relation = relation;
  f.over_set = over;
  f.inverse = inverse;
  if (!card.max) {
    f.cmp = CardComparison::AtLeast;
    f.lo = card.min;
  } else if (card.min == *card.max) {
    f.cmp = CardComparison::Equal;
    f.lo = card.min;
  } else {
    f.cmp = CardComparison::Interval;
    f.lo = card.min;
    f.hi = *card.max;
  }
  return f;
}

enum class ConstCategory { ChildConcept, Relation, Attribute, Individual, DataValue, CustomSet };

class Translator {
public:
  Translator(std::span<const DomainModel> chain, const TranslateOptions& opts)
      : chain_(chain), opts_(opts), anon_names_(anonymous_set_names(chain)) {}

  TranslateResult run() {
    check_chain();
    for (int level = 0; level < static_cast<int>(chain_.size()); ++level) translate_model(level);
    auto injective = result_.trace.injectivity_issues();
    auto total = totality_issues(result_.trace, chain_);
    if (!injective.empty() || !total.empty()) {
      std::string msg = "trace verification failed:";
      for (const auto& s : injective) msg += "\n  " + s;
      for (const auto& s : total) msg += "\n  " + s;
      throw TranslateError(msg);
    }
    return std::move(result_);
  }

private:
  void check_chain() {
    std::vector<Violation> violations;
    for (std::size_t i = 0; i < chain_.size(); ++i) {
      if (i == 0) {
        if (chain_[0].parent)
          throw TranslateError("root domain model '" + chain_[0].name + "' declares a parent");
      } else if (!chain_[i].parent || *chain_[i].parent != chain_[i - 1].name) {
        throw TranslateError("domain model '" + chain_[i].name +
                             "' is not parent-linked to its predecessor");
      }
      SymbolTable scope = resolve_scope(chain_[i], chain_.subspan(0, i));
      auto v = validate(chain_[i], scope);
      violations.insert(violations.end(), v.begin(), v.end());
    }
    if (!violations.empty()) throw ValidationFailed(std::move(violations));
  }

  // --- helpers -------------------------------------------------------------

  const DomainModel& model() const { return chain_[static_cast<std::size_t>(level_)]; }

  std::string qname(const std::string& element) const { return model().name + "." + element; }

  std::string b_qname(const std::string& element) const { return comp_->name + "." + element; }

  std::span<const Component> ancestors() const {
    return std::span<const Component>(result_.components.data(),
                                      static_cast<std::size_t>(level_));
  }

  void add_formula(FormulaForm form, Classification cls, std::vector<LogicFormula>* clause,
                   const std::string& label = "") {
    clause->push_back(LogicFormula{label, std::move(form), cls});
  }

  // classify and route to the matching clause; returns (clause, index)
  std::pair<std::vector<LogicFormula>*, std::size_t> emit(FormulaForm form,
                                                          const std::string& label = "") {
    Classification cls = classify_formula(form, *comp_, ancestors());
    auto* clause = cls == Classification::Property ? &comp_->properties : &comp_->invariants;
    add_formula(std::move(form), cls, clause, label);
    return {clause, clause->size() - 1};
  }

  void record_typing(const std::string& element,
                     std::pair<std::vector<LogicFormula>*, std::size_t> at) {
    pending_typing_.emplace_back(element, at.first, at.second);
  }

  void add_constant(const std::string& name, ConstCategory cat) {
    comp_->constants.push_back(name);
    const_categories_.emplace_back(name, cat);
  }

  // --- per-level translation ------------------------------------------------

  void translate_model(int level) {
    level_ = level;
    result_.components.emplace_back();
    comp_ = &result_.components.back();
    comp_->name = model().name;
    comp_->level = level;
    if (level > 0) comp_->refines = chain_[static_cast<std::size_t>(level - 1)].name;
    result_.trace.add(trace_kind::DomainModel, model().name, comp_->name);

    scope_ = resolve_scope(model(), chain_.subspan(0, static_cast<std::size_t>(level_)));
    pending_typing_.clear();
    const_categories_.clear();
    rel_variables_.clear();
    attr_variables_.clear();
    concept_variables_.clear();
    x_substs_.clear();
    rel_substs_.clear();
    attr_substs_.clear();
    pending_set_typing_.clear();

    translate_sets();
    translate_child_concepts();
    translate_individuals();
    translate_data_values();
    for (const Relation& r : model().relations) translate_relation(r);
    for (int i = 0; i < static_cast<int>(model().attributes.size()); ++i)
      translate_attribute(model().attributes[static_cast<std::size_t>(i)], i);
    translate_foreign_maplets();
    translate_concept_variability();
    translate_predicates();
    finalize();
  }

  void translate_sets() {
    for (const Concept& c : model().concepts) {
      if (c.parent) continue;
      comp_->sets.push_back(SetDecl{c.name, std::nullopt, ""});
      result_.trace.add(trace_kind::ConceptSet, qname(c.name), b_qname(c.name));
    }
    for (const DataSet& d : model().data_sets) {
      if (const auto* e = std::get_if<EnumeratedDataSet>(&d.v)) {
        comp_->sets.push_back(SetDecl{e->name, e->values, ""});
        result_.trace.add(trace_kind::DataSet, qname(e->name), b_qname(e->name));
        for (const auto& v : e->values)
          result_.trace.add(trace_kind::DataValueItem, qname(e->name) + "." + v,
                            b_qname(e->name) + "." + v);
      } else {
        const auto& c = std::get<CustomDataSet>(d.v);
        if (c.predicate_id) {
          add_constant(c.name, ConstCategory::CustomSet);
          result_.trace.add(trace_kind::DataSet, qname(c.name), b_qname(c.name));
          pending_set_typing_.emplace(*c.predicate_id, c.name);
        } else {
          comp_->sets.push_back(SetDecl{c.name, std::nullopt, ""});
          result_.trace.add(trace_kind::DataSet, qname(c.name), b_qname(c.name));
        }
      }
    }
    for (int i = 0; i < static_cast<int>(model().attributes.size()); ++i) {
      const Attribute& a = model().attributes[static_cast<std::size_t>(i)];
      if (a.range.kind != RangeRef::Kind::InlineEnum) continue;
      const std::string& set_name = anon_names_.at({level_, i});
      comp_->sets.push_back(SetDecl{set_name, a.range.values, ""});
      result_.trace.add(trace_kind::DataSet, qname(set_name), b_qname(set_name));
      for (const auto& v : a.range.values)
        result_.trace.add(trace_kind::DataValueItem, qname(set_name) + "." + v,
                          b_qname(set_name) + "." + v);
    }
  }

  void translate_child_concepts() {
    // parents before children within the level; ancestor models are already
    // done and parentless concepts of this level were emitted as sets
    std::vector<const Concept*> pending;
    for (const Concept& c : model().concepts)
      if (c.parent) pending.push_back(&c);
    std::set<std::string> done;
    while (!pending.empty()) {
      bool progressed = false;
      for (auto it = pending.begin(); it != pending.end();) {
        const Concept& c = **it;
        bool blocked = false;
        for (const Concept& p : model().concepts)
          if (p.name == *c.parent && p.parent && !done.count(p.name)) blocked = true;
        if (blocked) {
          ++it;
          continue;
        }
        add_constant(c.name, ConstCategory::ChildConcept);
        result_.trace.add(trace_kind::ConceptConstant, qname(c.name), b_qname(c.name));
        record_typing(c.name, emit(InclusionForm{c.name, *c.parent}));
        done.insert(c.name);
        it = pending.erase(it);
        progressed = true;
      }
      if (!progressed)
        throw TranslateError("concept inheritance within '" + model().name +
                             "' could not be ordered");
    }
  }

  void translate_individuals() {
    const auto& individuals = model().individuals;
    for (std::size_t i = 0; i < individuals.size(); ++i) {
      const Individual& ind = individuals[i];
      add_constant(ind.name, ConstCategory::Individual);
      result_.trace.add(trace_kind::Individual, qname(ind.name), b_qname(ind.name));
      auto at = emit(BelongingForm{ind.name, ind.concept_name});
      record_typing(ind.name, at);

      bool last_of_concept = true;
      for (std::size_t j = i + 1; j < individuals.size(); ++j)
        if (individuals[j].concept_name == ind.concept_name) last_of_concept = false;
      if (!last_of_concept) continue;

      std::vector<std::string> members;
      for (const Individual& other : individuals)
        if (other.concept_name == ind.concept_name) members.push_back(other.name);
      const Concept* c = scope_.find_concept(ind.concept_name);
      if (c && !c->is_variable) {
        emit(ExtentForm{ind.concept_name, members});
      }
    }
  }

  void translate_data_values() {
    for (const DataValue& v : model().data_values) {
      add_constant(v.name, ConstCategory::DataValue);
      result_.trace.add(trace_kind::DataValueConstant, qname(v.name), b_qname(v.name));
      std::string set_name = v.value_of.kind == RangeRef::Kind::Default
                                 ? default_set_name(v.value_of.def)
                                 : v.value_of.name;
      auto at = emit(BelongingForm{v.name, set_name});
      record_typing(v.name, at);
    }
  }

  void translate_relation(const Relation& r) {
    const std::string type_name = "T_" + r.name;
    add_constant(type_name, ConstCategory::Relation);
    result_.trace.add(trace_kind::RelationType, qname(r.name), b_qname(type_name));

    ArrowKind arrow =
        opts_.expand_cardinalities ? ArrowKind::Relation
                                   : relation_arrow(r.domain_cardinality, r.range_cardinality);
    auto at =
        emit(TypeConstantForm{type_name, ident(r.domain), ident(r.range), arrow});
    record_typing(type_name, at);

    if (r.is_variable) {
      comp_->variables.push_back(r.name);
      rel_variables_.push_back(r.name);
    } else {
      add_constant(r.name, ConstCategory::Relation);
    }
    result_.trace.add(trace_kind::RelationElement, qname(r.name), b_qname(r.name));
    record_typing(r.name, emit(BelongingForm{r.name, type_name}));

    if (!bound_redundant(r.range_cardinality, arrow_range_guarantee(arrow)) &&
        !r.range_cardinality.vacuous())
      emit(make_card_form(r.name, r.domain, /*inverse=*/false, r.range_cardinality));
    if (!bound_redundant(r.domain_cardinality, arrow_domain_guarantee(arrow)) &&
        !r.domain_cardinality.vacuous())
      emit(make_card_form(r.name, r.range, /*inverse=*/true, r.domain_cardinality));

    if (r.is_transitive)
      emit(CharacteristicForm{CharacteristicKind::Transitive, r.name, r.domain});
    if (r.is_symmetric)
      emit(CharacteristicForm{CharacteristicKind::Symmetric, r.name, r.domain});
    if (r.is_asymmetric)
      emit(CharacteristicForm{CharacteristicKind::Asymmetric, r.name, r.domain});
    if (r.is_reflexive)
      emit(CharacteristicForm{CharacteristicKind::Reflexive, r.name, r.domain});
    if (r.is_irreflexive)
      emit(CharacteristicForm{CharacteristicKind::Irreflexive, r.name, r.domain});

    emit_maplets(r.name, r.is_variable, /*declared_here=*/true, &rel_substs_);
  }

  void translate_attribute(const Attribute& a, int index) {
    Formula domain_f = a.domain.kind == DomainRef::Kind::Concept ? ident(a.domain.name)
                                                                 : *a.domain.expr;
    Formula range_f;
    switch (a.range.kind) {
      case RangeRef::Kind::Named: range_f = ident(a.range.name); break;
      case RangeRef::Kind::Default: range_f = ident(default_set_name(a.range.def)); break;
      case RangeRef::Kind::InlineEnum: range_f = ident(anon_names_.at({level_, index})); break;
      case RangeRef::Kind::Expr: range_f = *a.range.expr; break;
    }
    ArrowKind arrow = a.is_functional
                          ? (a.is_total ? ArrowKind::TotalFunction : ArrowKind::PartialFunction)
                          : ArrowKind::Relation;
    const bool indirect = a.domain.kind == DomainRef::Kind::Concept &&
                          (a.range.kind == RangeRef::Kind::Named ||
                           a.range.kind == RangeRef::Kind::InlineEnum);

    if (indirect) {
      const std::string type_name = "T_" + a.name;
      add_constant(type_name, ConstCategory::Attribute);
      result_.trace.add(trace_kind::AttributeType, qname(a.name), b_qname(type_name));
      record_typing(type_name, emit(TypeConstantForm{type_name, domain_f, range_f, arrow}));
      declare_attribute_element(a);
      record_typing(a.name, emit(BelongingForm{a.name, type_name}));
    } else {
      declare_attribute_element(a);
      record_typing(a.name, emit(ArrowTypingForm{a.name, domain_f, range_f, arrow}));
    }

    emit_maplets(a.name, a.is_variable, /*declared_here=*/true, &attr_substs_);
  }

  void declare_attribute_element(const Attribute& a) {
    if (a.is_variable) {
      comp_->variables.push_back(a.name);
      attr_variables_.push_back(a.name);
    } else {
      add_constant(a.name, ConstCategory::Attribute);
    }
    result_.trace.add(trace_kind::AttributeElement, qname(a.name), b_qname(a.name));
  }

  void emit_maplets(const std::string& owner, bool variable, bool declared_here,
                    std::vector<Substitution>* subst_sink) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const Maplet& m : model().maplets)
      if (m.owner == owner) pairs.emplace_back(m.antecedent, m.image);
    if (!variable) {
      if (!pairs.empty()) emit(MapletSetForm{owner, pairs});
      return;
    }
    if (pairs.empty() && !declared_here) return;
    Substitution s;
    s.target = owner;
    s.maplets = std::move(pairs);
    subst_sink->push_back(std::move(s));
  }

  void translate_foreign_maplets() {
    // maplets whose owner lives in an ancestor model
    std::vector<std::string> owners;
    for (const Maplet& m : model().maplets) {
      bool local = false;
      for (const Relation& r : model().relations)
        if (r.name == m.owner) local = true;
      for (const Attribute& a : model().attributes)
        if (a.name == m.owner) local = true;
      if (local) continue;
      if (std::find(owners.begin(), owners.end(), m.owner) == owners.end())
        owners.push_back(m.owner);
    }
    for (const std::string& owner : owners) {
      const Relation* r = scope_.find_relation(owner);
      const Attribute* a = r ? nullptr : scope_.find_attribute(owner);
      bool variable = r ? r->is_variable : a && a->is_variable;
      emit_maplets(owner, variable, /*declared_here=*/false,
                   r ? &rel_substs_ : &attr_substs_);
    }
  }

  void translate_concept_variability() {
    for (const Concept& c : model().concepts) {
      if (!c.is_variable) continue;
      const std::string x_name = "X_" + c.name;
      comp_->variables.push_back(x_name);
      concept_variables_.push_back(x_name);
      result_.trace.add(trace_kind::ConceptVariable, qname(c.name), b_qname(x_name));
      record_typing(x_name, emit(InclusionForm{x_name, c.name}));

      std::vector<Formula> members;
      for (const Individual& ind : model().individuals)
        if (ind.concept_name == c.name) members.push_back(ident(ind.name));
      Substitution s;
      s.target = x_name;
      if (members.empty())
        s.maplets = std::vector<std::pair<std::string, std::string>>{};
      else
        s.expr = set_literal(std::move(members));
      x_substs_.push_back(std::move(s));
    }
  }

  // --- predicates -----------------------------------------------------------

  Formula horn_atom_to_formula(const Formula& atom) {
    // unary atom over a concept or data set becomes a membership
    const std::string& symbol = atom.children[0].text;
    std::vector<Formula> args;
    for (std::size_t i = 1; i < atom.children.size(); ++i)
      args.push_back(strip_clause_markers(atom.children[i]));
    if (args.size() == 1 &&
        (scope_.find_concept(symbol) != nullptr || scope_.find_data_set(symbol) != nullptr))
      return binary(":", args[0], ident(symbol));
    Formula f{NodeKind::Apply, "", {}};
    f.children.push_back(ident(symbol));
    for (auto& a : args) f.children.push_back(std::move(a));
    return f;
  }

  static Formula strip_clause_markers(const Formula& f) {
    if (f.kind == NodeKind::Ident && !f.text.empty() && f.text[0] == '?')
      return ident(f.text.substr(1));
    if (f.kind == NodeKind::String) return ident(f.text);
    Formula out = f;
    for (auto& c : out.children) c = strip_clause_markers(c);
    return out;
  }

  static void collect_clause_vars(const Formula& f, std::vector<std::string>& vars) {
    if (f.kind == NodeKind::Ident && !f.text.empty() && f.text[0] == '?') {
      std::string name = f.text.substr(1);
      if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
      return;
    }
    for (const auto& c : f.children) collect_clause_vars(c, vars);
  }

  Formula render_horn(const HornClause& horn) {
    std::vector<std::string> vars;
    for (const Formula& a : horn.body) collect_clause_vars(a, vars);
    for (const Formula& a : horn.head) collect_clause_vars(a, vars);

    std::vector<Formula> body_parts, head_parts;
    for (const Formula& a : horn.body) body_parts.push_back(horn_atom_to_formula(a));
    for (const Formula& a : horn.head) head_parts.push_back(horn_atom_to_formula(a));
    Formula impl = binary("=>", conjoin(std::move(body_parts)), conjoin(std::move(head_parts)));
    if (vars.empty()) return impl;
    Formula q{NodeKind::Quantifier, "!", {}};
    for (const auto& v : vars) q.children.push_back(ident(v));
    q.children.push_back(std::move(impl));
    return q;
  }

  void translate_predicate(const Predicate& p) {
    Formula ast = p.horn ? render_horn(*p.horn) : *p.formula;
    std::vector<std::string> refs = free_names(ast);
    for (const std::string& name : refs) {
      if (!scope_.entries.count(name))
        throw TranslateError("unresolved reference '" + name + "' in predicate" +
                             (p.id.empty() ? "" : " " + p.id) + " of " + model().name);
    }
    FormulaForm form = TextForm{std::move(ast), std::move(refs)};
    Classification cls = p.is_gluing ? Classification::GluingInvariant
                                     : classify_formula(form, *comp_, ancestors());
    auto* clause = cls == Classification::Property ? &comp_->properties : &comp_->invariants;
    add_formula(std::move(form), cls, clause, p.id);
    pending_predicates_.emplace_back(&p, clause, clause->size() - 1);

    auto set_it = pending_set_typing_.find(p.id);
    if (!p.id.empty() && set_it != pending_set_typing_.end())
      pending_typing_.emplace_back(set_it->second, clause, clause->size() - 1);
  }

  void translate_predicates() {
    pending_predicates_.clear();
    for (const Predicate& p : model().predicates)
      if (!p.is_gluing) translate_predicate(p);
    for (const Predicate& p : model().predicates)
      if (p.is_gluing) translate_predicate(p);
  }

  // --- finalization ----------------------------------------------------------

  void finalize() {
    comp_->initialisation.clear();
    for (auto& s : x_substs_) comp_->initialisation.push_back(std::move(s));
    for (auto& s : rel_substs_) comp_->initialisation.push_back(std::move(s));
    for (auto& s : attr_substs_) comp_->initialisation.push_back(std::move(s));

    // presentation order of the CONSTANTS clause
    std::vector<std::string> ordered;
    auto take = [&](ConstCategory cat) {
      for (const auto& [name, c] : const_categories_)
        if (c == cat) ordered.push_back(name);
    };
    take(ConstCategory::ChildConcept);
    take(ConstCategory::Relation);
    take(ConstCategory::Attribute);
    take(ConstCategory::Individual);
    take(ConstCategory::DataValue);
    take(ConstCategory::CustomSet);
    assert(ordered.size() == comp_->constants.size());
    comp_->constants = std::move(ordered);

    std::vector<std::string> vars;
    for (const auto& v : rel_variables_) vars.push_back(v);
    for (const auto& v : attr_variables_) vars.push_back(v);
    for (const auto& v : concept_variables_) vars.push_back(v);
    comp_->variables = std::move(vars);

    auto label_of = [&](const std::string& current) {
      if (!current.empty()) return current;
      return "(" + std::to_string(level_) + "." + std::to_string(comp_->label_counter++) + ")";
    };
    for (LogicFormula& f : comp_->properties) f.label = label_of(f.label);
    for (LogicFormula& f : comp_->invariants) f.label = label_of(f.label);
    for (Substitution& s : comp_->initialisation) s.label = label_of(s.label);

    for (const auto& [name, clause, index] : pending_typing_)
      comp_->typing[name] = (*clause)[index].label;

    for (const auto& [pred, clause, index] : pending_predicates_) {
      const std::string& label = (*clause)[index].label;
      std::string domain_id = pred->id.empty() ? label : pred->id;
      result_.trace.add(trace_kind::Predicate, qname(domain_id), b_qname(label));
    }
  }

  std::span<const DomainModel> chain_;
  TranslateOptions opts_;
  std::map<std::pair<int, int>, std::string> anon_names_;
  TranslateResult result_;

  int level_ = 0;
  Component* comp_ = nullptr;
  SymbolTable scope_;
  std::vector<std::tuple<std::string, std::vector<LogicFormula>*, std::size_t>> pending_typing_;
  std::vector<std::tuple<const Predicate*, std::vector<LogicFormula>*, std::size_t>>
      pending_predicates_;
  std::vector<std::pair<std::string, ConstCategory>> const_categories_;
  std::vector<std::string> rel_variables_, attr_variables_, concept_variables_;
  std::vector<Substitution> x_substs_, rel_substs_, attr_substs_;
  std::map<std::string, std::string> pending_set_typing_;  // predicate id -> set constant
};

}  // namespace

TranslateResult translate_project(std::span<const DomainModel> chain,
                                  const TranslateOptions& options) {
  return Translator(chain, options).run();
}

std::vector<std::string> classification_soundness_issues(std::span<const Component> components) {
  std::vector<std::string> issues;
  std::set<std::string> variables;
  for (const Component& c : components)
    for (const auto& v : c.variables) variables.insert(v);

  for (const Component& c : components) {
    for (const LogicFormula& f : c.properties) {
      for (const auto& name : referenced_names(f.form)) {
        if (variables.count(name))
          issues.push_back(c.name + " " + f.label + ": property mentions variable '" + name +
                           "'");
      }
    }
    for (const LogicFormula& f : c.invariants) {
      if (f.classification == Classification::Theorem) continue;
      bool any = false;
      for (const auto& name : referenced_names(f.form))
        if (variables.count(name)) any = true;
      if (!any)
        issues.push_back(c.name + " " + f.label + ": invariant mentions no variable");
    }
  }
  return issues;
}

std::vector<std::string> typing_coverage_issues(const Component& comp) {
  std::vector<std::string> issues;
  auto check = [&](const std::string& name) {
    auto it = comp.typing.find(name);
    if (it == comp.typing.end()) {
      issues.push_back(comp.name + ": '" + name + "' has no typing formula");
      return;
    }
    if (!comp.find_formula(it->second))
      issues.push_back(comp.name + ": typing label " + it->second + " of '" + name +
                       "' does not resolve");
  };
  for (const auto& k : comp.constants) check(k);
  for (const auto& v : comp.variables) check(v);
  return issues;
}

}  // namespace kaos2b
