#ifndef KAOS2B_GOAL_MODEL_HPP
#define KAOS2B_GOAL_MODEL_HPP

#include <string>
#include <vector>

namespace kaos2b {

enum class RefinementOp { And, Or, Milestone };

std::string refinement_op_name(RefinementOp op);

struct Refinement {
  std::string parent;
  RefinementOp op = RefinementOp::And;
  std::vector<std::string> children;  // order matters for MILESTONE

  bool operator==(const Refinement&) const = default;
};

/// Goal hierarchy: one root, every other goal introduced by exactly one
/// refinement. Levels follow from the refinement structure.
struct GoalModel {
  std::string name;
  std::string root;
  std::vector<Refinement> refinements;

  /// levels()[i] lists the goals at refinement level i, declaration order.
  std::vector<std::vector<std::string>> levels() const;
  int level_of(const std::string& goal) const;  // -1 when unknown

  bool operator==(const GoalModel&) const = default;
};

}  // namespace kaos2b

#endif
