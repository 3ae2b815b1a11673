#include "kaos2b/goal_engine.hpp"

#include <algorithm>

namespace kaos2b {

namespace {

std::string fresh_label(Component& comp) {
  return "(" + std::to_string(comp.level) + "." + std::to_string(comp.label_counter++) + ")";
}

Formula prime_target(const Formula& target) {
  Formula out = target;
  if (out.kind == NodeKind::Ident) {
    out.text += "'";
  } else if (out.kind == NodeKind::Apply && out.children[0].kind == NodeKind::Ident) {
    out.children[0].text += "'";
  } else {
    throw GoalEngineError("action target is not a variable or an application");
  }
  return out;
}

}  // namespace

void build_skeleton(std::span<Component> components, const GoalModel& gm) {
  auto levels = gm.levels();
  if (levels.size() != components.size())
    throw GoalEngineError("goal model has " + std::to_string(levels.size()) +
                          " level(s) but the project has " + std::to_string(components.size()) +
                          " component(s)");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (const std::string& goal : levels[i]) {
      if (components[i].find_event(goal))
        throw GoalEngineError("component '" + components[i].name + "' already defines event '" +
                              goal + "'");
      Event e;
      e.name = goal;
      components[i].events.push_back(std::move(e));
    }
  }
}

void attach_event_bodies(std::span<Component> components, const GoalModel& gm, int level,
                         const ComponentFragment& fragment) {
  if (level < 0 || level >= static_cast<int>(components.size()))
    throw GoalEngineError("fragment level " + std::to_string(level) + " is out of range");
  Component& comp = components[static_cast<std::size_t>(level)];

  for (const std::string& v : fragment.variables) {
    if (comp.has_variable(v))
      throw GoalEngineError("fragment re-declares variable '" + v + "'");
    comp.variables.push_back(v);
  }
  for (LogicFormula f : fragment.invariants) {
    if (f.label.empty()) f.label = fresh_label(comp);
    // fragment invariants typing new variables feed the typing index
    if (const auto* text = std::get_if<TextForm>(&f.form)) {
      const Formula& ast = text->ast;
      if (ast.kind == NodeKind::Binary && (ast.text == ":" || ast.text == "<:") &&
          ast.children[0].kind == NodeKind::Ident)
        comp.typing.emplace(ast.children[0].text, f.label);
    }
    comp.invariants.push_back(std::move(f));
  }
  for (Substitution s : fragment.initialisation) {
    if (s.label.empty()) s.label = fresh_label(comp);
    comp.initialisation.push_back(std::move(s));
  }

  for (const Event& body : fragment.events) {
    int goal_level = gm.level_of(body.name);
    if (goal_level < 0)
      throw GoalEngineError("event body '" + body.name + "' does not name a goal");
    if (goal_level > level)
      throw GoalEngineError("event body '" + body.name + "' belongs to level " +
                            std::to_string(goal_level) + ", not " + std::to_string(level));
    if (goal_level == level) {
      Event* skeleton = comp.find_event(body.name);
      if (!skeleton)
        throw GoalEngineError("no skeleton event for goal '" + body.name + "'");
      *skeleton = body;
    } else {
      // refining re-specification of an ancestor-level goal
      if (comp.find_event(body.name))
        throw GoalEngineError("duplicate event body '" + body.name + "'");
      comp.events.push_back(body);
    }
  }
}

Formula expand_guard(const Event& e) {
  std::vector<Formula> parts;
  for (const Guard& g : e.guards) parts.push_back(g.pred);
  return conjoin(std::move(parts));
}

Formula expand_post(const Event& e) {
  std::vector<Formula> parts;
  for (const Action& a : e.actions) {
    if (a.kind != ActionKind::Assign)
      throw GoalEngineError("event '" + e.name + "' uses a non-assignment substitution");
    parts.push_back(binary("=", prime_target(a.target), a.expr));
  }
  return conjoin(std::move(parts));
}

namespace {

std::vector<std::string> union_params(const Event& a, const Event& b) {
  std::vector<std::string> params = a.params;
  for (const std::string& p : b.params)
    if (std::find(params.begin(), params.end(), p) == params.end()) params.push_back(p);
  return params;
}

Formula closure(const std::vector<std::string>& params, Formula body) {
  if (params.empty()) return body;
  Formula q{NodeKind::Quantifier, "!", {}};
  for (const auto& p : params) q.children.push_back(ident(p));
  q.children.push_back(std::move(body));
  return q;
}

Formula symbolic_ref(const std::string& event, const char* part) {
  return ident(event + "_" + part);
}

struct TheoremSink {
  std::vector<GeneratedTheorem> out;
  int next_label;

  void add(const Event& lhs_event, bool lhs_guard, const Event& rhs_event, bool rhs_guard,
           bool negate_rhs) {
    GeneratedTheorem t;
    t.label = "s" + std::to_string(next_label++);
    Formula sym_lhs = symbolic_ref(lhs_event.name, lhs_guard ? "Guard" : "Post");
    Formula sym_rhs = symbolic_ref(rhs_event.name, rhs_guard ? "Guard" : "Post");
    if (negate_rhs) sym_rhs = apply("not", {std::move(sym_rhs)});
    t.symbolic = binary("=>", std::move(sym_lhs), std::move(sym_rhs));

    Formula lhs = lhs_guard ? expand_guard(lhs_event) : expand_post(lhs_event);
    Formula rhs = rhs_guard ? expand_guard(rhs_event) : expand_post(rhs_event);
    if (negate_rhs) rhs = apply("not", {std::move(rhs)});
    t.params = union_params(lhs_event, rhs_event);
    t.expanded = closure(t.params, binary("=>", std::move(lhs), std::move(rhs)));
    out.push_back(std::move(t));
  }

  // (/\ children posts) => parent post
  void add_joint_post(std::span<const Event> children, const Event& parent) {
    GeneratedTheorem t;
    t.label = "s" + std::to_string(next_label++);
    std::vector<Formula> sym_parts, parts;
    for (const Event& c : children) {
      sym_parts.push_back(symbolic_ref(c.name, "Post"));
      parts.push_back(expand_post(c));
    }
    // parameters listed child-first, parent extras last, as in the pairwise case
    for (const Event& c : children)
      for (const std::string& p : c.params)
        if (std::find(t.params.begin(), t.params.end(), p) == t.params.end())
          t.params.push_back(p);
    for (const std::string& p : parent.params)
      if (std::find(t.params.begin(), t.params.end(), p) == t.params.end())
        t.params.push_back(p);
    t.symbolic = binary("=>", conjoin(std::move(sym_parts)), symbolic_ref(parent.name, "Post"));
    t.expanded =
        closure(t.params, binary("=>", conjoin(std::move(parts)), expand_post(parent)));
    out.push_back(std::move(t));
  }
};

}  // namespace

std::vector<GeneratedTheorem> generate_po_theorems(RefinementOp op, const Event& parent,
                                                   std::span<const Event> children,
                                                   int label_start) {
  const std::size_t n = children.size();
  if (op == RefinementOp::Milestone) {
    if (n < 1) throw GoalEngineError("MILESTONE requires at least one subgoal");
  } else if (n < 2) {
    throw GoalEngineError(std::string(op == RefinementOp::And ? "AND" : "OR") +
                          " requires at least two subgoals");
  }

  TheoremSink sink{{}, label_start};
  switch (op) {
    case RefinementOp::And: {
      for (const Event& c : children) sink.add(c, true, parent, true, false);
      sink.add_joint_post(children, parent);
      break;
    }
    case RefinementOp::Or: {
      for (const Event& c : children) sink.add(c, true, parent, true, false);
      for (const Event& c : children) sink.add(c, false, parent, false, false);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) sink.add(children[i], false, children[j], true, true);
      break;
    }
    case RefinementOp::Milestone: {
      sink.add(children[0], true, parent, true, false);
      for (std::size_t i = 0; i + 1 < n; ++i)
        sink.add(children[i], false, children[i + 1], true, false);
      sink.add(children[n - 1], false, parent, false, false);
      break;
    }
  }
  return sink.out;
}

std::vector<PoBlock> apply_goal_model(
    std::span<Component> components, const GoalModel& gm,
    std::span<const std::pair<int, ComponentFragment>> fragments) {
  build_skeleton(components, gm);
  for (const auto& [level, fragment] : fragments)
    attach_event_bodies(components, gm, level, fragment);

  std::vector<PoBlock> po;
  for (const Refinement& r : gm.refinements) {
    int parent_level = gm.level_of(r.parent);
    int child_level = parent_level + 1;
    Component& target = components[static_cast<std::size_t>(child_level)];
    const Component& parent_comp = components[static_cast<std::size_t>(parent_level)];
    const Event* parent_event = parent_comp.find_event(r.parent);
    if (!parent_event)
      throw GoalEngineError("no event for parent goal '" + r.parent + "'");
    std::vector<Event> children;
    for (const std::string& c : r.children) {
      const Event* e = target.find_event(c);
      if (!e) throw GoalEngineError("no event for subgoal '" + c + "'");
      children.push_back(*e);
    }
    auto theorems = generate_po_theorems(r.op, *parent_event, children, target.theorem_counter);
    target.theorem_counter += static_cast<int>(theorems.size());
    for (const GeneratedTheorem& t : theorems) {
      LogicFormula f;
      f.label = t.label;
      f.classification = Classification::Theorem;
      f.form = TextForm{t.symbolic, {}};
      target.invariants.push_back(std::move(f));
    }
    PoBlock block;
    block.component = target.name;
    block.theorems = std::move(theorems);
    bool merged = false;
    for (PoBlock& existing : po) {
      if (existing.component == block.component) {
        for (auto& t : block.theorems) existing.theorems.push_back(std::move(t));
        merged = true;
        break;
      }
    }
    if (!merged) po.push_back(std::move(block));
  }
  return po;
}

}  // namespace kaos2b
