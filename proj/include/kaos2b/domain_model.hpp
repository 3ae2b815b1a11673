#ifndef KAOS2B_DOMAIN_MODEL_HPP
#define KAOS2B_DOMAIN_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kaos2b/diag.hpp"
#include "kaos2b/formula.hpp"

namespace kaos2b {

enum class DefaultSet { Natural, Integer, Float, String, Bool };

std::string default_set_name(DefaultSet s);
std::optional<DefaultSet> default_set_from_name(std::string_view name);

/// min..max bounds; an absent max means unbounded (`*`).
struct Cardinality {
  std::uint32_t min = 0;
  std::optional<std::uint32_t> max;

  bool vacuous() const { return min == 0 && !max; }
  bool operator==(const Cardinality&) const = default;
};

struct Concept {
  std::string name;
  std::optional<std::string> parent;
  bool is_variable = false;

  bool operator==(const Concept&) const = default;
};

struct Relation {
  std::string name;
  std::string domain;
  std::string range;
  bool is_variable = false;
  bool is_transitive = false;
  bool is_symmetric = false;
  bool is_asymmetric = false;
  bool is_reflexive = false;
  bool is_irreflexive = false;
  Cardinality domain_cardinality;  // defaults to 0..*
  Cardinality range_cardinality;

  bool operator==(const Relation&) const = default;
};

/// Attribute domain: a plain concept name or a pass-through expression such as
/// dom(connectedTrain). Pass-through expressions are emitted verbatim.
struct DomainRef {
  enum class Kind { Concept, Expr };
  Kind kind = Kind::Concept;
  std::string name;              // Kind::Concept
  std::optional<Formula> expr;   // Kind::Expr

  bool operator==(const DomainRef&) const = default;
};

/// Attribute range / data-value type: declared data set, default set, inline
/// enumeration (anonymous set), or a pass-through expression like POW(TRACK).
struct RangeRef {
  enum class Kind { Named, Default, InlineEnum, Expr };
  Kind kind = Kind::Named;
  std::string name;                  // Kind::Named
  DefaultSet def = DefaultSet::Natural;
  std::vector<std::string> values;   // Kind::InlineEnum
  std::optional<Formula> expr;       // Kind::Expr

  bool operator==(const RangeRef&) const = default;
};

struct Attribute {
  std::string name;
  DomainRef domain;
  RangeRef range;
  bool is_variable = false;
  bool is_functional = false;
  bool is_total = false;

  bool operator==(const Attribute&) const = default;
};

struct EnumeratedDataSet {
  std::string name;
  std::vector<std::string> values;

  bool operator==(const EnumeratedDataSet&) const = default;
};

struct CustomDataSet {
  std::string name;
  std::optional<std::string> predicate_id;  // defining predicate, when any

  bool operator==(const CustomDataSet&) const = default;
};

struct DataSet {
  std::variant<EnumeratedDataSet, CustomDataSet> v;

  const std::string& name() const;
  bool operator==(const DataSet&) const = default;
};

struct Individual {
  std::string name;
  std::string concept_name;

  bool operator==(const Individual&) const = default;
};

struct DataValue {
  std::string name;
  RangeRef value_of;  // Named or Default

  bool operator==(const DataValue&) const = default;
};

struct Maplet {
  std::string owner;       // relation or attribute name
  std::string antecedent;  // individual
  std::string image;       // individual (relations) or data value (attributes)

  bool operator==(const Maplet&) const = default;
};

struct HornClause {
  std::vector<Formula> body;
  std::vector<Formula> head;

  bool operator==(const HornClause&) const = default;
};

struct Predicate {
  std::string id;  // may be empty; a label is generated at translation
  bool is_gluing = false;
  std::optional<HornClause> horn;
  std::optional<Formula> formula;  // plain form

  bool operator==(const Predicate&) const = default;
};

/// One ontology refinement level.
struct DomainModel {
  std::string name;
  std::optional<std::string> parent;
  std::vector<Concept> concepts;
  std::vector<Relation> relations;
  std::vector<Attribute> attributes;
  std::vector<DataSet> data_sets;
  std::vector<DataValue> data_values;
  std::vector<Individual> individuals;
  std::vector<Maplet> maplets;
  std::vector<Predicate> predicates;

  bool operator==(const DomainModel&) const = default;
};

enum class ElementKind { Concept, Relation, Attribute, DataSet, DataValue, Individual };

struct Symbol {
  ElementKind kind;
  int level = 0;       // 0 = root of the chain
  bool enum_member = false;
  std::string owner_set;  // for enumerated members

  bool operator==(const Symbol&) const = default;
};

/// Name visibility across a model and its transitive parents. Enumerated-set
/// members are scoped to their owning set; every other element name is unique
/// across the whole chain.
struct SymbolTable {
  std::map<std::string, std::vector<Symbol>> entries;
  std::vector<const DomainModel*> models;  // root first; last = the model itself

  const Symbol* find_unique(const std::string& name) const;
  const Concept* find_concept(const std::string& name) const;
  const DataSet* find_data_set(const std::string& name) const;
  const Relation* find_relation(const std::string& name) const;
  const Attribute* find_attribute(const std::string& name) const;
  const Individual* find_individual(const std::string& name) const;
  bool concept_descends_from(const std::string& name, const std::string& ancestor) const;

  bool operator==(const SymbolTable& o) const { return entries == o.entries; }
};

/// Builds the visibility table. `ancestors` is ordered root first and must end
/// with the model named by `model.parent` (when present).
SymbolTable resolve_scope(const DomainModel& model, std::span<const DomainModel> ancestors);

/// Checks every type invariant; returns all violations in declaration order.
std::vector<Violation> validate(const DomainModel& model, const SymbolTable& scope);

/// Convenience: scope + validate over a root-first chain; throws ScopeError,
/// returns violations for all levels.
std::vector<Violation> validate_chain(std::span<const DomainModel> chain);

}  // namespace kaos2b

#endif
