#ifndef KAOS2B_GOAL_ENGINE_HPP
#define KAOS2B_GOAL_ENGINE_HPP

#include <span>
#include <string>
#include <vector>

#include "kaos2b/bsystem.hpp"
#include "kaos2b/goal_model.hpp"
#include "kaos2b/parse.hpp"

namespace kaos2b {

/// Adds one empty event per goal to the component of the goal's level.
/// Throws GoalEngineError on LevelMismatch (goal levels != component count).
void build_skeleton(std::span<Component> components, const GoalModel& gm);

/// Merges a fragment into the given level: bodies replace skeleton events of
/// that level's goals; bodies named after ancestor-level goals are appended as
/// refining events; unknown names are an error. Extra variables, invariants
/// and initialisations are appended (unlabeled entries get generated labels).
void attach_event_bodies(std::span<Component> components, const GoalModel& gm, int level,
                         const ComponentFragment& fragment);

/// Conjunction of the event's guards; TRUE when there are none. The event's
/// parameters are the open variables.
Formula expand_guard(const Event& e);

/// Conjunction of `target' = expr` atoms over the event's actions; TRUE when
/// there are none. Throws GoalEngineError for non-assignment substitutions.
Formula expand_post(const Event& e);

struct GeneratedTheorem {
  std::string label;                 // s1, s2, ...
  Formula symbolic;                  // e.g. ChildA_Guard => Parent_Guard
  Formula expanded;                  // universal closure over the parameters
  std::vector<std::string> params;
};

/// Proof-obligation theorems for one refinement step. Labels start at
/// `label_start`. Throws GoalEngineError on arity violations.
std::vector<GeneratedTheorem> generate_po_theorems(RefinementOp op, const Event& parent,
                                                   std::span<const Event> children,
                                                   int label_start = 1);

/// Runs skeleton + bodies + theorem generation over translated components.
/// Returns the expanded-theorem text blocks per component for the `.po` file.
struct PoBlock {
  std::string component;
  std::vector<GeneratedTheorem> theorems;
};

std::vector<PoBlock> apply_goal_model(std::span<Component> components, const GoalModel& gm,
                                      std::span<const std::pair<int, ComponentFragment>> fragments);

}  // namespace kaos2b

#endif
