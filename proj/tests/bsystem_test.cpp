#include <doctest.h>

#include "kaos2b/bsystem.hpp"
#include "kaos2b/parse.hpp"
#include "kaos2b/translate.hpp"
#include "test_util.hpp"

using namespace kaos2b;
using namespace kaos2b::test;

namespace {

FormulaForm text_form(const std::string& src) {
  Formula ast = parse_formula(src);
  return TextForm{ast, free_names(ast)};
}

TranslateResult lg_translation() {
  std::vector<DomainModel> chain{parse_domain_model(read_file(testdata("lg0.dmod"))),
                                 parse_domain_model(read_file(testdata("lg1.dmod")))};
  return translate_project(chain, {true});
}

}  // namespace

TEST_CASE("formulas over constants only are properties") {
  Component comp;
  comp.name = "root";
  comp.constants = {"a", "b", "TRACK"};
  CHECK(classify_formula(text_form("TRACK = a..b"), comp, {}) == Classification::Property);
  CHECK(classify_formula(text_form("a < b"), comp, {}) == Classification::Property);
}

TEST_CASE("formulas over same-level variables are invariants") {
  Component comp;
  comp.name = "root";
  comp.variables = {"front", "rear"};
  CHECK(classify_formula(text_form("!tr.(tr : dom(rear) => rear(tr) < front(tr))"), comp, {}) ==
        Classification::Invariant);
}

TEST_CASE("formulas linking own and ancestor variables are gluing invariants") {
  Component root;
  root.name = "root";
  root.variables = {"front", "rear"};
  Component mid;
  mid.name = "mid";
  mid.refines = "root";
  Component leaf;
  leaf.name = "leaf";
  leaf.refines = "mid";
  leaf.sets.push_back({"TTD", std::nullopt, ""});
  leaf.sets.push_back({"TTD_STATES", std::vector<std::string>{"OCCUPIED", "FREE"}, ""});
  leaf.variables = {"stateTTD"};
  std::vector<Component> ancestors{root, mid};
  auto form = text_form(
      "!ttd,tr.(tr : dom(front) \\ dom(rear) & ttd : TTD & front(tr) : ttd"
      " => (ttd |-> OCCUPIED) : stateTTD)");
  CHECK(classify_formula(form, leaf, ancestors) == Classification::GluingInvariant);
}

TEST_CASE("classification rejects undeclared names") {
  Component comp;
  comp.name = "root";
  CHECK_THROWS_AS(classify_formula(text_form("mystery = 1"), comp, {}), UnknownNameError);
}

TEST_CASE("classification is idempotent") {
  Component comp;
  comp.name = "root";
  comp.variables = {"x"};
  comp.constants = {"k"};
  auto form = text_form("x <: k");
  auto first = classify_formula(form, comp, {});
  CHECK(classify_formula(form, comp, {}) == first);
}

TEST_CASE("lookup_typing finds the generated typing formulas") {
  TranslateResult result = lg_translation();
  const Component& ref0 = result.components[0];
  const Component& ref1 = result.components[1];

  const LogicFormula* state = lookup_typing(ref0, "landingGearState");
  REQUIRE(state != nullptr);
  CHECK(state->label == "(0.4)");
  CHECK(state->classification == Classification::Invariant);

  const LogicFormula* rel = lookup_typing(ref1, "LgOfHd");
  REQUIRE(rel != nullptr);
  CHECK(rel->label == "(1.8)");
  CHECK(rel->classification == Classification::Property);

  CHECK(lookup_typing(ref0, "nothing_here") == nullptr);
}

TEST_CASE("every constant and variable has exactly one typing formula") {
  TranslateResult result = lg_translation();
  for (const Component& comp : result.components)
    CHECK(typing_coverage_issues(comp).empty());
}

TEST_CASE("parsed components index typing formulas too") {
  Component comp = parse_bsystem(read_file(testdata("lg_system_ref_0.golden.bsys")));
  const LogicFormula* typing = lookup_typing(comp, "T_landingGearState");
  REQUIRE(typing != nullptr);
  CHECK(typing->label == "(0.3)");
  CHECK(lookup_typing(comp, "LandingGear") == nullptr);  // extent equality is not typing
}

TEST_CASE("structured forms expose their operator tag and names") {
  FormulaForm inclusion = InclusionForm{"co", "pco"};
  CHECK(primary_operator(inclusion) == OperatorTag::Inclusion);
  CHECK(referenced_names(inclusion) == std::vector<std::string>{"co", "pco"});

  FormulaForm belonging = BelongingForm{"LG1", "LandingGear"};
  CHECK(primary_operator(belonging) == OperatorTag::Belonging);

  FormulaForm card = CardinalityForm{"LgOfLs", "LandingGear", true, CardComparison::Equal, 3, 3};
  CHECK(primary_operator(card) == OperatorTag::Other);
  CHECK(referenced_names(card) == std::vector<std::string>{"LandingGear", "LgOfLs"});
  CHECK(render_form(card, Notation::Ascii) ==
        "!xx.(xx : LandingGear => card(LgOfLs~[{xx}]) = 3)");
}
