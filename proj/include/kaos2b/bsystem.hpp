#ifndef KAOS2B_BSYSTEM_HPP
#define KAOS2B_BSYSTEM_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kaos2b/diag.hpp"
#include "kaos2b/formula.hpp"

namespace kaos2b {

enum class ArrowKind {
  Relation,          // <->
  TotalFunction,     // -->
  PartialFunction,   // +->
  TotalInjection,    // >->
  PartialInjection,  // >+>
  TotalSurjection,   // ->>
  PartialSurjection, // +->>
  Bijection,         // >->>
};

std::string arrow_token(ArrowKind k);
std::optional<ArrowKind> arrow_from_token(std::string_view tok);

enum class Classification { Property, Invariant, GluingInvariant, Theorem };

enum class OperatorTag { Inclusion, Belonging, BecomeEqualToSet, Other };

// --- structured formula shapes produced by the translation rules ---

struct InclusionForm {  // left <: right
  std::string left;
  std::string right;
  bool operator==(const InclusionForm&) const = default;
};

struct BelongingForm {  // element : set
  std::string element;
  std::string set_name;
  bool operator==(const BelongingForm&) const = default;
};

struct ArrowTypingForm {  // element : domain ARROW range
  std::string element;
  Formula domain;
  Formula range;
  ArrowKind arrow = ArrowKind::Relation;
  bool operator==(const ArrowTypingForm&) const = default;
};

struct TypeConstantForm {  // type_name = domain ARROW range
  std::string type_name;
  Formula domain;
  Formula range;
  ArrowKind arrow = ArrowKind::Relation;
  bool operator==(const TypeConstantForm&) const = default;
};

struct ExtentForm {  // set_name = {members...}
  std::string set_name;
  std::vector<std::string> members;
  bool operator==(const ExtentForm&) const = default;
};

struct MapletSetForm {  // owner = {a |-> i, ...}
  std::string owner;
  std::vector<std::pair<std::string, std::string>> maplets;
  bool operator==(const MapletSetForm&) const = default;
};

enum class CardComparison { Interval, Equal, AtLeast };

struct CardinalityForm {
  // !xx.(xx : over_set => card(relation[{xx}]) CMP), inverse image when
  // inverse is set.
  std::string relation;
  std::string over_set;
  bool inverse = false;
  CardComparison cmp = CardComparison::Equal;
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  bool operator==(const CardinalityForm&) const = default;
};

enum class CharacteristicKind { Transitive, Symmetric, Asymmetric, Reflexive, Irreflexive };

struct CharacteristicForm {
  CharacteristicKind kind = CharacteristicKind::Transitive;
  std::string relation;
  std::string domain_concept;
  bool operator==(const CharacteristicForm&) const = default;
};

struct TextForm {  // free-form predicate kept as a tree plus its name set
  Formula ast;
  std::vector<std::string> refs;
  bool operator==(const TextForm&) const = default;
};

using FormulaForm =
    std::variant<InclusionForm, BelongingForm, ArrowTypingForm, TypeConstantForm, ExtentForm,
                 MapletSetForm, CardinalityForm, CharacteristicForm, TextForm>;

struct LogicFormula {
  std::string label;  // "(1.9)", "p0.3", "inv6", "s1"
  FormulaForm form;
  Classification classification = Classification::Invariant;

  bool operator==(const LogicFormula&) const = default;
};

/// Identifiers a formula mentions; structured shapes derive it, text keeps it.
std::vector<std::string> referenced_names(const FormulaForm& form);

/// Renders any form in the requested notation (no label, no join).
std::string render_form(const FormulaForm& form, Notation notation);

/// The leading operator in the structured encoding sense.
OperatorTag primary_operator(const FormulaForm& form);

struct SetDecl {
  std::string name;
  std::optional<std::vector<std::string>> items;  // enumerated when present
  std::string annotation;                         // from /*@ ... */ directives

  bool operator==(const SetDecl&) const = default;
};

struct Substitution {
  std::string label;  // may be empty until labeling
  std::string target;
  // either explicit maplets or an arbitrary expression
  std::optional<std::vector<std::pair<std::string, std::string>>> maplets;
  std::optional<Formula> expr;

  bool operator==(const Substitution&) const = default;
};

struct Guard {
  std::string label;
  Formula pred;

  bool operator==(const Guard&) const = default;
};

enum class ActionKind { Assign, BecomesIn };

struct Action {
  ActionKind kind = ActionKind::Assign;
  Formula target;  // Ident or Apply
  Formula expr;

  bool operator==(const Action&) const = default;
};

enum class EventStatus { Ordinary, Convergent };

struct Event {
  std::string name;
  std::vector<std::string> params;
  std::vector<Guard> guards;
  std::vector<Action> actions;
  EventStatus status = EventStatus::Ordinary;

  bool operator==(const Event&) const = default;
};

/// One B System unit: a SYSTEM (no refines link) or a REFINEMENT.
struct Component {
  std::string name;
  std::optional<std::string> refines;
  std::vector<SetDecl> sets;
  std::vector<std::string> constants;
  std::vector<std::string> variables;
  std::vector<LogicFormula> properties;
  std::vector<LogicFormula> invariants;
  std::vector<Substitution> initialisation;
  std::vector<Event> events;

  // element name -> label of its typing formula
  std::map<std::string, std::string> typing;

  int level = 0;
  int label_counter = 1;    // next (level.n) index
  int theorem_counter = 1;  // next s-index

  bool has_set(const std::string& name) const;
  bool has_constant(const std::string& name) const;
  bool has_variable(const std::string& name) const;
  const Event* find_event(const std::string& name) const;
  Event* find_event(const std::string& name);
  const LogicFormula* find_formula(const std::string& label) const;

  bool operator==(const Component& o) const {
    return name == o.name && refines == o.refines && sets == o.sets && constants == o.constants &&
           variables == o.variables && properties == o.properties && invariants == o.invariants &&
           initialisation == o.initialisation && events == o.events;
  }
};

class UnknownNameError : public std::runtime_error {
public:
  explicit UnknownNameError(const std::string& name)
      : std::runtime_error("unknown name '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

/// Property when no variable is mentioned; gluing invariant when the formula
/// ties the component's own variables to strictly more abstract ones;
/// invariant otherwise. Throws UnknownNameError for undeclared identifiers.
Classification classify_formula(const FormulaForm& form, const Component& comp,
                                std::span<const Component> ancestors);

/// The unique typing formula attached to a constant or variable, if any.
const LogicFormula* lookup_typing(const Component& comp, const std::string& name);

}  // namespace kaos2b

#endif
