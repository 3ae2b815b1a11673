#ifndef KAOS2B_PARSE_HPP
#define KAOS2B_PARSE_HPP

#include <string_view>

#include "kaos2b/bsystem.hpp"
#include "kaos2b/domain_model.hpp"
#include "kaos2b/goal_model.hpp"

namespace kaos2b {

/// Parses `.dmod` text. Throws SyntaxError with exact line/column.
DomainModel parse_domain_model(std::string_view text);

/// Parses `.gmod` text.
GoalModel parse_goal_model(std::string_view text);

/// Parses `.bsys` text in the emitter's output grammar. All formulas are kept
/// as text forms with extracted name sets.
Component parse_bsystem(std::string_view text);

/// Event-body fragment: VARIABLES / INVARIANT / INITIALISATION clauses and
/// Event blocks, without the component header.
struct ComponentFragment {
  std::vector<std::string> variables;
  std::vector<LogicFormula> invariants;
  std::vector<Substitution> initialisation;
  std::vector<Event> events;
};

ComponentFragment parse_bsystem_fragment(std::string_view text);

}  // namespace kaos2b

#endif
