#ifndef KAOS2B_BACKPROP_HPP
#define KAOS2B_BACKPROP_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kaos2b/bsystem.hpp"
#include "kaos2b/domain_model.hpp"
#include "kaos2b/translate.hpp"

namespace kaos2b {

enum class AdditionKind {
  AbstractSet,
  EnumeratedSet,
  SetItem,
  Constant,
  Variable,
  Formula,
  SubstitutionEntry,
};

/// One element present in the edited component but absent from the baseline.
struct Addition {
  AdditionKind kind = AdditionKind::Formula;
  std::string name;                       // set/constant/variable/item name
  std::string owner;                      // SetItem: owning enumerated set
  std::vector<std::string> items;         // EnumeratedSet
  std::string annotation;                 // sets: /*@ dataset */ directive
  std::optional<LogicFormula> typing;     // Constant/Variable: matched typing formula
  std::optional<LogicFormula> formula;    // Formula
  std::optional<Substitution> subst;      // SubstitutionEntry
};

/// Additions only; any deletion or in-place modification of a baseline
/// element raises UnsupportedEdit. Event bodies are outside the
/// correspondence and are ignored. Throws BackpropError.
std::vector<Addition> diff_component(const Component& baseline, const Component& edited);

// --- domain-model delta -----------------------------------------------------

struct AddConcept { Concept concept_decl; };
struct SetConceptVariable { std::string concept_name; std::string variable_name; };
struct AddEnumSet { EnumeratedDataSet set_decl; };
struct AddEnumValue { std::string set_name; std::string value; };
struct AddCustomSet { CustomDataSet set_decl; };
struct AddIndividual { Individual individual; };
struct AddDataValue { DataValue value; };
struct AddRelation { Relation relation; };
struct AddAttribute { Attribute attribute; };
struct AddPredicate { Predicate predicate; };
struct AddMaplet { Maplet maplet; };

using DeltaPayload =
    std::variant<AddConcept, SetConceptVariable, AddEnumSet, AddEnumValue, AddCustomSet,
                 AddIndividual, AddDataValue, AddRelation, AddAttribute, AddPredicate, AddMaplet>;

struct DeltaEntry {
  std::string rule;  // rule_101 ... rule_108, r3, r4, predicate
  int target_level = 0;
  DeltaPayload payload;
};

struct DomainDelta {
  std::vector<DeltaEntry> entries;
};

/// Applies the first matching rule per addition and extends the trace so that
/// re-translating the updated chain regenerates the additions.
/// Throws BackpropError (NoMatchingRule, AmbiguousPattern, ...) and
/// ValidationFailed when the delta result would not validate.
DomainDelta backprop(std::span<const Addition> additions, const CorrespondenceTrace& trace,
                     std::span<const DomainModel> chain, int edited_level,
                     CorrespondenceTrace* extended_trace = nullptr);

/// Pure application of a delta to the chain.
std::vector<DomainModel> apply_delta(std::span<const DomainModel> chain, const DomainDelta& delta);

}  // namespace kaos2b

#endif
