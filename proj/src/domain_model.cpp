#include "kaos2b/domain_model.hpp"

#include <algorithm>
#include <set>

namespace kaos2b {

std::string default_set_name(DefaultSet s) {
  switch (s) {
    case DefaultSet::Natural: return "NATURAL";
    case DefaultSet::Integer: return "INTEGER";
    case DefaultSet::Float: return "FLOAT";
    case DefaultSet::String: return "STRING";
    case DefaultSet::Bool: return "BOOL";
  }
  return "NATURAL";
}

std::optional<DefaultSet> default_set_from_name(std::string_view name) {
  if (name == "NATURAL") return DefaultSet::Natural;
  if (name == "INTEGER") return DefaultSet::Integer;
  if (name == "FLOAT") return DefaultSet::Float;
  if (name == "STRING") return DefaultSet::String;
  if (name == "BOOL") return DefaultSet::Bool;
  return std::nullopt;
}

const std::string& DataSet::name() const {
  if (const auto* e = std::get_if<EnumeratedDataSet>(&v)) return e->name;
  return std::get<CustomDataSet>(v).name;
}

const Symbol* SymbolTable::find_unique(const std::string& name) const {
  auto it = entries.find(name);
  if (it == entries.end() || it->second.size() != 1) return nullptr;
  return &it->second.front();
}

namespace {

template <typename T, typename Getter>
const T* find_element(const SymbolTable& table, const std::string& name, ElementKind kind,
                      Getter getter) {
  auto it = table.entries.find(name);
  if (it == table.entries.end()) return nullptr;
  for (const Symbol& s : it->second) {
    if (s.kind != kind) continue;
    const DomainModel& m = *table.models[static_cast<std::size_t>(s.level)];
    for (const T& e : getter(m))
      if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace

const Concept* SymbolTable::find_concept(const std::string& name) const {
  return find_element<Concept>(*this, name, ElementKind::Concept,
                               [](const DomainModel& m) -> const std::vector<Concept>& {
                                 return m.concepts;
                               });
}

const Relation* SymbolTable::find_relation(const std::string& name) const {
  return find_element<Relation>(*this, name, ElementKind::Relation,
                                [](const DomainModel& m) -> const std::vector<Relation>& {
                                  return m.relations;
                                });
}

const Attribute* SymbolTable::find_attribute(const std::string& name) const {
  return find_element<Attribute>(*this, name, ElementKind::Attribute,
                                 [](const DomainModel& m) -> const std::vector<Attribute>& {
                                   return m.attributes;
                                 });
}

const Individual* SymbolTable::find_individual(const std::string& name) const {
  return find_element<Individual>(*this, name, ElementKind::Individual,
                                  [](const DomainModel& m) -> const std::vector<Individual>& {
                                    return m.individuals;
                                  });
}

const DataSet* SymbolTable::find_data_set(const std::string& name) const {
  auto it = entries.find(name);
  if (it == entries.end()) return nullptr;
  for (const Symbol& s : it->second) {
    if (s.kind != ElementKind::DataSet) continue;
    const DomainModel& m = *models[static_cast<std::size_t>(s.level)];
    for (const DataSet& d : m.data_sets)
      if (d.name() == name) return &d;
  }
  return nullptr;
}

bool SymbolTable::concept_descends_from(const std::string& name,
                                        const std::string& ancestor) const {
  std::string cur = name;
  std::set<std::string> seen;
  while (true) {
    if (cur == ancestor) return true;
    if (!seen.insert(cur).second) return false;  // defensive: cycle
    const Concept* c = find_concept(cur);
    if (!c || !c->parent) return false;
    cur = *c->parent;
  }
}

SymbolTable resolve_scope(const DomainModel& model, std::span<const DomainModel> ancestors) {
  if (model.parent) {
    if (ancestors.empty() || ancestors.back().name != *model.parent)
      throw ScopeError(ScopeErrorCode::UnknownParent,
                       model.name + ": unknown parent domain model '" + *model.parent + "'");
  } else if (!ancestors.empty()) {
    throw ScopeError(ScopeErrorCode::UnknownParent,
                     model.name + ": has no parent but ancestors were supplied");
  }
  for (std::size_t i = 1; i < ancestors.size(); ++i) {
    if (!ancestors[i].parent || *ancestors[i].parent != ancestors[i - 1].name)
      throw ScopeError(ScopeErrorCode::UnknownParent,
                       ancestors[i].name + ": ancestor chain is not parent-linked");
  }

  std::set<std::string> chain_names;
  for (const DomainModel& a : ancestors) {
    if (!chain_names.insert(a.name).second)
      throw ScopeError(ScopeErrorCode::CyclicParentChain,
                       "domain model '" + a.name + "' occurs twice in the parent chain");
  }
  if (!chain_names.insert(model.name).second)
    throw ScopeError(ScopeErrorCode::CyclicParentChain,
                     "domain model '" + model.name + "' occurs twice in the parent chain");

  SymbolTable table;
  for (const DomainModel& a : ancestors) table.models.push_back(&a);
  table.models.push_back(&model);

  auto insert = [&](const std::string& name, Symbol sym) {
    auto& slot = table.entries[name];
    for (const Symbol& existing : slot) {
      // Enumerated members may share a name as long as they live in different
      // sets; everything else clashes.
      if (existing.enum_member && sym.enum_member && existing.owner_set != sym.owner_set)
        continue;
      throw ScopeError(ScopeErrorCode::DuplicateName,
                       "name '" + name + "' is declared more than once (levels " +
                           std::to_string(existing.level) + " and " + std::to_string(sym.level) +
                           ")");
    }
    slot.push_back(sym);
  };

  for (int level = 0; level < static_cast<int>(table.models.size()); ++level) {
    const DomainModel& m = *table.models[static_cast<std::size_t>(level)];
    for (const auto& c : m.concepts) insert(c.name, {ElementKind::Concept, level, false, ""});
    for (const auto& r : m.relations) insert(r.name, {ElementKind::Relation, level, false, ""});
    for (const auto& a : m.attributes) {
      insert(a.name, {ElementKind::Attribute, level, false, ""});
      if (a.range.kind == RangeRef::Kind::InlineEnum) {
        for (const auto& v : a.range.values)
          insert(v, {ElementKind::DataValue, level, true, "attr:" + a.name});
      }
    }
    for (const auto& d : m.data_sets) {
      insert(d.name(), {ElementKind::DataSet, level, false, ""});
      if (const auto* e = std::get_if<EnumeratedDataSet>(&d.v)) {
        for (const auto& v : e->values)
          insert(v, {ElementKind::DataValue, level, true, e->name});
      }
    }
    for (const auto& v : m.data_values) insert(v.name, {ElementKind::DataValue, level, false, ""});
    for (const auto& i : m.individuals) insert(i.name, {ElementKind::Individual, level, false, ""});
  }
  return table;
}

namespace {

bool range_has_value(const SymbolTable& scope, const RangeRef& range, const std::string& value) {
  switch (range.kind) {
    case RangeRef::Kind::InlineEnum:
      return std::find(range.values.begin(), range.values.end(), value) != range.values.end();
    case RangeRef::Kind::Named: {
      const DataSet* ds = scope.find_data_set(range.name);
      if (!ds) return false;
      if (const auto* e = std::get_if<EnumeratedDataSet>(&ds->v))
        return std::find(e->values.begin(), e->values.end(), value) != e->values.end();
      // custom set: accept any data value declared with that set as its type
      auto it = scope.entries.find(value);
      if (it == scope.entries.end()) return false;
      for (const Symbol& s : it->second) {
        if (s.kind != ElementKind::DataValue || s.enum_member) continue;
        const DomainModel& m = *scope.models[static_cast<std::size_t>(s.level)];
        for (const DataValue& dv : m.data_values)
          if (dv.name == value && dv.value_of.kind == RangeRef::Kind::Named &&
              dv.value_of.name == range.name)
            return true;
      }
      return false;
    }
    case RangeRef::Kind::Default: {
      auto it = scope.entries.find(value);
      if (it == scope.entries.end()) return false;
      for (const Symbol& s : it->second) {
        if (s.kind != ElementKind::DataValue || s.enum_member) continue;
        const DomainModel& m = *scope.models[static_cast<std::size_t>(s.level)];
        for (const DataValue& dv : m.data_values)
          if (dv.name == value && dv.value_of.kind == RangeRef::Kind::Default &&
              dv.value_of.def == range.def)
            return true;
      }
      return false;
    }
    case RangeRef::Kind::Expr:
      return true;  // pass-through ranges are not semantically resolved
  }
  return false;
}

bool has_reserved_prefix(const std::string& name) {
  return name.rfind("T_", 0) == 0 || name.rfind("X_", 0) == 0;
}

}  // namespace

std::vector<Violation> validate(const DomainModel& model, const SymbolTable& scope) {
  std::vector<Violation> out;
  auto flag = [&](const std::string& element, const std::string& rule, const std::string& msg) {
    out.push_back({model.name + "." + element, rule, msg});
  };

  auto check_reserved = [&](const std::string& name) {
    if (has_reserved_prefix(name))
      flag(name, "ReservedNamePrefix", "names starting with 'T_' or 'X_' are reserved");
  };

  for (const Concept& c : model.concepts) {
    check_reserved(c.name);
    if (c.parent) {
      if (!scope.find_concept(*c.parent)) {
        flag(c.name, "UnknownParentConcept", "parent concept '" + *c.parent + "' is not in scope");
      } else {
        // single inheritance is structural; cycles are not
        std::set<std::string> seen{c.name};
        std::string cur = *c.parent;
        while (true) {
          if (!seen.insert(cur).second) {
            flag(c.name, "CyclicInheritance",
                 "inheritance chain through '" + cur + "' forms a cycle");
            break;
          }
          const Concept* pc = scope.find_concept(cur);
          if (!pc || !pc->parent) break;
          cur = *pc->parent;
        }
      }
    }
  }

  for (const Relation& r : model.relations) {
    check_reserved(r.name);
    const Concept* dom = scope.find_concept(r.domain);
    const Concept* ran = scope.find_concept(r.range);
    if (!dom) flag(r.name, "UnknownRelationDomain", "domain '" + r.domain + "' is not a concept in scope");
    if (!ran) flag(r.name, "UnknownRelationRange", "range '" + r.range + "' is not a concept in scope");
    if (!r.is_variable && ((dom && dom->is_variable) || (ran && ran->is_variable)))
      flag(r.name, "VariableConceptRequiresVariableRelation",
           "relation over a variable concept must itself be variable");
    if (r.is_symmetric && r.is_asymmetric)
      flag(r.name, "SymmetricAsymmetricConflict", "a relation cannot be symmetric and asymmetric");
    if (r.is_reflexive && r.is_irreflexive)
      flag(r.name, "ReflexiveIrreflexiveConflict", "a relation cannot be reflexive and irreflexive");
    if (r.domain_cardinality.max && r.domain_cardinality.min > *r.domain_cardinality.max)
      flag(r.name, "MinExceedsMax", "domain cardinality min exceeds max");
    if (r.range_cardinality.max && r.range_cardinality.min > *r.range_cardinality.max)
      flag(r.name, "MinExceedsMax", "range cardinality min exceeds max");
  }

  for (const Attribute& a : model.attributes) {
    check_reserved(a.name);
    const Concept* dom = nullptr;
    if (a.domain.kind == DomainRef::Kind::Concept) {
      dom = scope.find_concept(a.domain.name);
      if (!dom)
        flag(a.name, "UnknownAttributeDomain",
             "domain '" + a.domain.name + "' is not a concept in scope");
    }
    if (a.range.kind == RangeRef::Kind::Named) {
      if (!scope.find_data_set(a.range.name)) {
        if (scope.entries.count(a.range.name))
          flag(a.name, "AttributeRangeNotDataSet",
               "range '" + a.range.name + "' does not name a data set");
        else
          flag(a.name, "UnknownAttributeRange",
               "range '" + a.range.name + "' is not in scope");
      }
    }
    if (a.is_total && !a.is_functional)
      flag(a.name, "TotalRequiresFunctional", "a total attribute must be functional");
    if (dom && dom->is_variable && !a.is_variable)
      flag(a.name, "VariableConceptRequiresVariableAttribute",
           "attribute over a variable concept must itself be variable");
  }

  for (const DataSet& d : model.data_sets) {
    check_reserved(d.name());
    if (const auto* e = std::get_if<EnumeratedDataSet>(&d.v)) {
      std::set<std::string> seen;
      for (const auto& v : e->values)
        if (!seen.insert(v).second)
          flag(e->name, "DuplicateEnumValue", "value '" + v + "' is listed twice");
    } else {
      const auto& c = std::get<CustomDataSet>(d.v);
      if (c.predicate_id) {
        bool found = false;
        for (const Predicate& p : model.predicates)
          if (p.id == *c.predicate_id) found = true;
        if (!found)
          flag(c.name, "UnknownDefiningPredicate",
               "defining predicate '" + *c.predicate_id + "' is not declared");
      }
    }
  }

  for (const DataValue& v : model.data_values) {
    check_reserved(v.name);
    if (v.value_of.kind == RangeRef::Kind::Named && !scope.find_data_set(v.value_of.name))
      flag(v.name, "UnknownValueSet", "data set '" + v.value_of.name + "' is not in scope");
  }

  for (const Individual& i : model.individuals) {
    check_reserved(i.name);
    if (!scope.find_concept(i.concept_name))
      flag(i.name, "UnknownIndividualConcept",
           "concept '" + i.concept_name + "' is not in scope");
  }

  for (const Maplet& m : model.maplets) {
    const Relation* rel = scope.find_relation(m.owner);
    const Attribute* attr = rel ? nullptr : scope.find_attribute(m.owner);
    if (!rel && !attr) {
      flag(m.owner, "UnknownMapletOwner", "'" + m.owner + "' is not a relation or attribute");
      continue;
    }
    const Individual* ante = scope.find_individual(m.antecedent);
    if (!ante) {
      flag(m.owner, "UnknownMapletAntecedent",
           "antecedent '" + m.antecedent + "' is not an individual");
    } else {
      const std::string* domain_concept = nullptr;
      if (rel) domain_concept = &rel->domain;
      if (attr && attr->domain.kind == DomainRef::Kind::Concept)
        domain_concept = &attr->domain.name;
      if (domain_concept && !scope.concept_descends_from(ante->concept_name, *domain_concept))
        flag(m.owner, "MapletAntecedentTypeMismatch",
             "antecedent '" + m.antecedent + "' is not an individual of '" + *domain_concept + "'");
    }
    if (rel) {
      const Individual* img = scope.find_individual(m.image);
      if (!img)
        flag(m.owner, "UnknownMapletImage", "image '" + m.image + "' is not an individual");
      else if (!scope.concept_descends_from(img->concept_name, rel->range))
        flag(m.owner, "MapletImageTypeMismatch",
             "image '" + m.image + "' is not an individual of '" + rel->range + "'");
    } else if (attr) {
      if (attr->range.kind != RangeRef::Kind::Expr &&
          !range_has_value(scope, attr->range, m.image))
        flag(m.owner, "MapletImageTypeMismatch",
             "image '" + m.image + "' is not a value of the attribute range");
    }
  }

  std::set<std::string> predicate_ids;
  for (const auto* m : scope.models) {
    if (m == &model) continue;
    for (const Predicate& p : m->predicates)
      if (!p.id.empty()) predicate_ids.insert(p.id);
  }
  for (const Predicate& p : model.predicates) {
    if (!p.id.empty() && !predicate_ids.insert(p.id).second)
      flag(p.id, "DuplicatePredicateId", "predicate id '" + p.id + "' is declared twice");
    if (p.horn) {
      if (p.horn->body.empty())
        flag(p.id.empty() ? "<horn>" : p.id, "EmptyHornBody", "horn clause body is empty");
      if (p.horn->head.empty())
        flag(p.id.empty() ? "<horn>" : p.id, "EmptyHornHead", "horn clause head is empty");
    }
  }

  return out;
}

std::vector<Violation> validate_chain(std::span<const DomainModel> chain) {
  std::vector<Violation> all;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    SymbolTable scope = resolve_scope(chain[i], chain.subspan(0, i));
    auto v = validate(chain[i], scope);
    all.insert(all.end(), v.begin(), v.end());
  }
  return all;
}

}  // namespace kaos2b
