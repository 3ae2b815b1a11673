#include "kaos2b/goal_model.hpp"

#include <map>

namespace kaos2b {

std::string refinement_op_name(RefinementOp op) {
  switch (op) {
    case RefinementOp::And: return "and";
    case RefinementOp::Or: return "or";
    case RefinementOp::Milestone: return "milestone";
  }
  return "and";
}

std::vector<std::vector<std::string>> GoalModel::levels() const {
  std::map<std::string, int> level;
  level[root] = 0;
  std::vector<std::vector<std::string>> out{{root}};
  for (const Refinement& r : refinements) {
    auto it = level.find(r.parent);
    if (it == level.end()) continue;  // parse_goal_model rejects this already
    int child_level = it->second + 1;
    if (static_cast<int>(out.size()) <= child_level) out.resize(child_level + 1);
    for (const std::string& c : r.children) {
      if (level.emplace(c, child_level).second)
        out[static_cast<std::size_t>(child_level)].push_back(c);
    }
  }
  return out;
}

int GoalModel::level_of(const std::string& goal) const {
  auto ls = levels();
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (const auto& g : ls[i])
      if (g == goal) return static_cast<int>(i);
  return -1;
}

}  // namespace kaos2b
