#include "kaos2b/bsystem.hpp"

#include <algorithm>
#include <set>

namespace kaos2b {

std::string arrow_token(ArrowKind k) {
  switch (k) {
    case ArrowKind::Relation: return "<->";
    case ArrowKind::TotalFunction: return "-->";
    case ArrowKind::PartialFunction: return "+->";
    case ArrowKind::TotalInjection: return ">->";
    case ArrowKind::PartialInjection: return ">+>";
    case ArrowKind::TotalSurjection: return "->>";
    case ArrowKind::PartialSurjection: return "+->>";
    case ArrowKind::Bijection: return ">->>";
  }
  return "<->";
}

std::optional<ArrowKind> arrow_from_token(std::string_view tok) {
  if (tok == "<->") return ArrowKind::Relation;
  if (tok == "-->") return ArrowKind::TotalFunction;
  if (tok == "+->") return ArrowKind::PartialFunction;
  if (tok == ">->") return ArrowKind::TotalInjection;
  if (tok == ">+>") return ArrowKind::PartialInjection;
  if (tok == "->>") return ArrowKind::TotalSurjection;
  if (tok == "+->>") return ArrowKind::PartialSurjection;
  if (tok == ">->>") return ArrowKind::Bijection;
  return std::nullopt;
}

namespace {

void add_names(std::set<std::string>& out, const Formula& f) {
  for (auto& n : free_names(f)) out.insert(n);
}

}  // namespace

std::vector<std::string> referenced_names(const FormulaForm& form) {
  std::set<std::string> out;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, InclusionForm>) {
          out.insert(f.left);
          out.insert(f.right);
        } else if constexpr (std::is_same_v<T, BelongingForm>) {
          out.insert(f.element);
          if (!is_builtin_name(f.set_name)) out.insert(f.set_name);
        } else if constexpr (std::is_same_v<T, ArrowTypingForm>) {
          out.insert(f.element);
          add_names(out, f.domain);
          add_names(out, f.range);
        } else if constexpr (std::is_same_v<T, TypeConstantForm>) {
          out.insert(f.type_name);
          add_names(out, f.domain);
          add_names(out, f.range);
        } else if constexpr (std::is_same_v<T, ExtentForm>) {
          out.insert(f.set_name);
          for (const auto& m : f.members) out.insert(m);
        } else if constexpr (std::is_same_v<T, MapletSetForm>) {
          out.insert(f.owner);
          for (const auto& [a, i] : f.maplets) {
            out.insert(a);
            out.insert(i);
          }
        } else if constexpr (std::is_same_v<T, CardinalityForm>) {
          out.insert(f.relation);
          out.insert(f.over_set);
        } else if constexpr (std::is_same_v<T, CharacteristicForm>) {
          out.insert(f.relation);
          if (f.kind == CharacteristicKind::Asymmetric ||
              f.kind == CharacteristicKind::Reflexive ||
              f.kind == CharacteristicKind::Irreflexive)
            out.insert(f.domain_concept);
        } else if constexpr (std::is_same_v<T, TextForm>) {
          for (const auto& n : f.refs) out.insert(n);
        }
      },
      form);
  return {out.begin(), out.end()};
}

std::string render_form(const FormulaForm& form, Notation n) {
  auto op = [&](std::string_view ascii, std::string_view uni) {
    return n == Notation::Ascii ? std::string(ascii) : std::string(uni);
  };
  return std::visit(
      [&](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, InclusionForm>) {
          return f.left + " " + op("<:", "⊆") + " " + f.right;
        } else if constexpr (std::is_same_v<T, BelongingForm>) {
          return f.element + " " + op(":", "∈") + " " + f.set_name;
        } else if constexpr (std::is_same_v<T, ArrowTypingForm>) {
          Formula typ = binary(arrow_token(f.arrow), f.domain, f.range);
          return f.element + " " + op(":", "∈") + " " + print_formula(typ, n);
        } else if constexpr (std::is_same_v<T, TypeConstantForm>) {
          Formula typ = binary(arrow_token(f.arrow), f.domain, f.range);
          return f.type_name + " = " + print_formula(typ, n);
        } else if constexpr (std::is_same_v<T, ExtentForm>) {
          std::string s = f.set_name + " = {";
          for (std::size_t i = 0; i < f.members.size(); ++i) {
            if (i) s += ", ";
            s += f.members[i];
          }
          return s + "}";
        } else if constexpr (std::is_same_v<T, MapletSetForm>) {
          std::string s = f.owner + " = {";
          for (std::size_t i = 0; i < f.maplets.size(); ++i) {
            if (i) s += ", ";
            s += f.maplets[i].first + " " + op("|->", "↦") + " " + f.maplets[i].second;
          }
          return s + "}";
        } else if constexpr (std::is_same_v<T, CardinalityForm>) {
          std::string img = f.relation + (f.inverse ? op("~", "⁻¹") : "") + "[{xx}]";
          std::string cmp;
          switch (f.cmp) {
            case CardComparison::Equal: cmp = " = " + std::to_string(f.lo); break;
            case CardComparison::AtLeast:
              cmp = " " + op(">=", "≥") + " " + std::to_string(f.lo);
              break;
            case CardComparison::Interval:
              cmp = " " + op(":", "∈") + " " + std::to_string(f.lo) + ".." +
                    std::to_string(f.hi);
              break;
          }
          return op("!", "∀") + "xx.(xx " + op(":", "∈") + " " + f.over_set + " " +
                 op("=>", "⇒") + " card(" + img + ")" + cmp + ")";
        } else if constexpr (std::is_same_v<T, CharacteristicForm>) {
          const std::string& r = f.relation;
          std::string inv = r + op("~", "⁻¹");
          switch (f.kind) {
            case CharacteristicKind::Transitive:
              return "(" + r + " ; " + r + ") " + op("<:", "⊆") + " " + r;
            case CharacteristicKind::Symmetric:
              return inv + " = " + r;
            case CharacteristicKind::Asymmetric:
              return "(" + inv + " " + op("/\\", "∩") + " " + r + ") " +
                     op("<:", "⊆") + " id(" + f.domain_concept + ")";
            case CharacteristicKind::Reflexive:
              return "id(" + f.domain_concept + ") " + op("<:", "⊆") + " " + r;
            case CharacteristicKind::Irreflexive:
              return "id(" + f.domain_concept + ") " + op("/\\", "∩") + " " + r + " = {}";
          }
          return "";
        } else if constexpr (std::is_same_v<T, TextForm>) {
          return print_formula(f.ast, n);
        }
      },
      form);
}

OperatorTag primary_operator(const FormulaForm& form) {
  return std::visit(
      [](const auto& f) -> OperatorTag {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, InclusionForm>) return OperatorTag::Inclusion;
        else if constexpr (std::is_same_v<T, BelongingForm>) return OperatorTag::Belonging;
        else if constexpr (std::is_same_v<T, ArrowTypingForm>) return OperatorTag::Belonging;
        else if constexpr (std::is_same_v<T, TextForm>) {
          if (f.ast.kind == NodeKind::Binary) {
            if (f.ast.text == "<:") return OperatorTag::Inclusion;
            if (f.ast.text == ":") return OperatorTag::Belonging;
          }
          return OperatorTag::Other;
        } else {
          return OperatorTag::Other;
        }
      },
      form);
}

bool Component::has_set(const std::string& n) const {
  return std::any_of(sets.begin(), sets.end(), [&](const SetDecl& s) { return s.name == n; });
}

bool Component::has_constant(const std::string& n) const {
  return std::find(constants.begin(), constants.end(), n) != constants.end();
}

bool Component::has_variable(const std::string& n) const {
  return std::find(variables.begin(), variables.end(), n) != variables.end();
}

const Event* Component::find_event(const std::string& n) const {
  for (const Event& e : events)
    if (e.name == n) return &e;
  return nullptr;
}

Event* Component::find_event(const std::string& n) {
  for (Event& e : events)
    if (e.name == n) return &e;
  return nullptr;
}

const LogicFormula* Component::find_formula(const std::string& label) const {
  for (const LogicFormula& f : properties)
    if (f.label == label) return &f;
  for (const LogicFormula& f : invariants)
    if (f.label == label) return &f;
  return nullptr;
}

namespace {

enum class DeclKind { Set, SetItem, Constant, Variable };

struct DeclEnv {
  std::map<std::string, std::pair<DeclKind, int>> first;  // name -> kind, level

  void add(const std::string& name, DeclKind kind, int level) {
    first.emplace(name, std::make_pair(kind, level));
  }
};

DeclEnv build_env(const Component& comp, std::span<const Component> ancestors) {
  DeclEnv env;
  auto add_component = [&](const Component& c, int level) {
    for (const SetDecl& s : c.sets) {
      env.add(s.name, DeclKind::Set, level);
      if (s.items)
        for (const auto& i : *s.items) env.add(i, DeclKind::SetItem, level);
    }
    for (const auto& k : c.constants) env.add(k, DeclKind::Constant, level);
    for (const auto& v : c.variables) env.add(v, DeclKind::Variable, level);
  };
  for (std::size_t i = 0; i < ancestors.size(); ++i)
    add_component(ancestors[i], static_cast<int>(i));
  add_component(comp, static_cast<int>(ancestors.size()));
  return env;
}

}  // namespace

Classification classify_formula(const FormulaForm& form, const Component& comp,
                                std::span<const Component> ancestors) {
  DeclEnv env = build_env(comp, ancestors);
  const int own_level = static_cast<int>(ancestors.size());

  bool has_own_variable = false;
  bool has_ancestor_variable = false;
  for (const std::string& name : referenced_names(form)) {
    auto it = env.first.find(name);
    if (it == env.first.end()) throw UnknownNameError(name);
    if (it->second.first != DeclKind::Variable) continue;
    if (it->second.second == own_level)
      has_own_variable = true;
    else
      has_ancestor_variable = true;
  }
  if (!has_own_variable && !has_ancestor_variable) return Classification::Property;
  if (has_own_variable && has_ancestor_variable) return Classification::GluingInvariant;
  return Classification::Invariant;
}

const LogicFormula* lookup_typing(const Component& comp, const std::string& name) {
  auto it = comp.typing.find(name);
  if (it == comp.typing.end()) return nullptr;
  return comp.find_formula(it->second);
}

}  // namespace kaos2b
