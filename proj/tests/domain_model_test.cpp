#include <doctest.h>

#include "generators.hpp"
#include "kaos2b/domain_model.hpp"
#include "kaos2b/parse.hpp"
#include "test_util.hpp"

using namespace kaos2b;
using namespace kaos2b::test;

namespace {

std::vector<DomainModel> lg_chain() {
  return {parse_domain_model(read_file(testdata("lg0.dmod"))),
          parse_domain_model(read_file(testdata("lg1.dmod")))};
}

}  // namespace

TEST_CASE("resolve_scope attributes names to their levels") {
  auto chain = lg_chain();
  SymbolTable scope = resolve_scope(chain[1], std::span(chain.data(), 1));
  const Symbol* gear = scope.find_unique("LandingGear");
  REQUIRE(gear != nullptr);
  CHECK(gear->kind == ElementKind::Concept);
  CHECK(gear->level == 0);
  const Symbol* set = scope.find_unique("LandingSet");
  REQUIRE(set != nullptr);
  CHECK(set->level == 1);
}

TEST_CASE("resolve_scope of an empty model is empty") {
  DomainModel m;
  m.name = "m";
  SymbolTable scope = resolve_scope(m, {});
  CHECK(scope.entries.empty());
}

TEST_CASE("redeclaring a parent-level concept is a duplicate name") {
  DomainModel parent;
  parent.name = "p";
  parent.concepts.push_back({"TRAIN", std::nullopt, false});
  DomainModel child;
  child.name = "c";
  child.parent = "p";
  child.concepts.push_back({"TRAIN", std::nullopt, false});
  std::vector<DomainModel> ancestors{parent};
  try {
    resolve_scope(child, ancestors);
    FAIL("expected DuplicateName");
  } catch (const ScopeError& e) {
    CHECK(e.code() == ScopeErrorCode::DuplicateName);
  }
}

TEST_CASE("parent chain cycles are rejected") {
  DomainModel a;
  a.name = "a";
  DomainModel b;
  b.name = "b";
  b.parent = "a";
  DomainModel a2;
  a2.name = "a";
  a2.parent = "b";
  std::vector<DomainModel> ancestors{a, b};
  CHECK_THROWS_AS(resolve_scope(a2, ancestors), ScopeError);
}

TEST_CASE("resolve_scope is deterministic") {
  auto chain = lg_chain();
  SymbolTable s1 = resolve_scope(chain[1], std::span(chain.data(), 1));
  SymbolTable s2 = resolve_scope(chain[1], std::span(chain.data(), 1));
  CHECK(s1 == s2);
}

TEST_CASE("duplicate enumerated values across different sets are accepted") {
  DomainModel m;
  m.name = "m";
  m.data_sets.push_back({EnumeratedDataSet{"A_STATES", {"ON", "OFF"}}});
  m.data_sets.push_back({EnumeratedDataSet{"B_STATES", {"ON", "OFF"}}});
  SymbolTable scope = resolve_scope(m, {});
  CHECK(validate(m, scope).empty());
}

TEST_CASE("well-formed landing gear models validate cleanly") {
  auto chain = lg_chain();
  CHECK(validate_chain(chain).empty());
}

TEST_CASE("attribute over a variable concept must be variable") {
  DomainModel m;
  m.name = "m";
  m.concepts.push_back({"Train", std::nullopt, true});
  Attribute a;
  a.name = "speed";
  a.domain = {DomainRef::Kind::Concept, "Train", std::nullopt};
  a.range.kind = RangeRef::Kind::Default;
  a.range.def = DefaultSet::Natural;
  a.is_functional = true;
  a.is_variable = false;
  m.attributes.push_back(a);
  auto violations = validate(m, resolve_scope(m, {}));
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "VariableConceptRequiresVariableAttribute");
}

TEST_CASE("relations inherit the variability constraint on both endpoints") {
  DomainModel m;
  m.name = "m";
  m.concepts.push_back({"A", std::nullopt, false});
  m.concepts.push_back({"B", std::nullopt, true});
  Relation r;
  r.name = "rel";
  r.domain = "A";
  r.range = "B";
  r.is_variable = false;
  m.relations.push_back(r);
  auto violations = validate(m, resolve_scope(m, {}));
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "VariableConceptRequiresVariableRelation");
}

TEST_CASE("inheritance cycles are violations") {
  DomainModel m;
  m.name = "m";
  m.concepts.push_back({"A", "B", false});
  m.concepts.push_back({"B", "A", false});
  auto violations = validate(m, resolve_scope(m, {}));
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].rule == "CyclicInheritance");

  DomainModel self;
  self.name = "m";
  self.concepts.push_back({"A", "A", false});
  auto self_violations = validate(self, resolve_scope(self, {}));
  REQUIRE(self_violations.size() == 1);
  CHECK(self_violations[0].rule == "CyclicInheritance");
}

TEST_CASE("cardinality bounds must be ordered") {
  DomainModel m;
  m.name = "m";
  m.concepts.push_back({"A", std::nullopt, false});
  Relation r;
  r.name = "rel";
  r.domain = "A";
  r.range = "A";
  r.domain_cardinality = {2, 1};
  m.relations.push_back(r);
  auto violations = validate(m, resolve_scope(m, {}));
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].rule == "MinExceedsMax");
}

namespace {

struct Breach {
  std::string rule;
  void (*apply)(DomainModel&);
};

const Breach kBreaches[] = {
    {"MinExceedsMax",
     [](DomainModel& m) {
       Relation r;
       r.name = "zz_rel";
       r.domain = m.concepts.front().name;
       r.range = m.concepts.front().name;
       r.is_variable = true;
       r.range_cardinality = {3, 1};
       m.relations.push_back(r);
     }},
    {"TotalRequiresFunctional",
     [](DomainModel& m) {
       Attribute a;
       a.name = "zz_attr";
       a.domain = {DomainRef::Kind::Concept, m.concepts.front().name, std::nullopt};
       a.range.kind = RangeRef::Kind::Default;
       a.range.def = DefaultSet::Bool;
       a.is_variable = true;
       a.is_functional = false;
       a.is_total = true;
       m.attributes.push_back(a);
     }},
    {"SymmetricAsymmetricConflict",
     [](DomainModel& m) {
       Relation r;
       r.name = "zz_rel";
       r.domain = m.concepts.front().name;
       r.range = m.concepts.front().name;
       r.is_variable = true;
       r.is_symmetric = true;
       r.is_asymmetric = true;
       m.relations.push_back(r);
     }},
    {"ReflexiveIrreflexiveConflict",
     [](DomainModel& m) {
       Relation r;
       r.name = "zz_rel";
       r.domain = m.concepts.front().name;
       r.range = m.concepts.front().name;
       r.is_variable = true;
       r.is_reflexive = true;
       r.is_irreflexive = true;
       m.relations.push_back(r);
     }},
    {"UnknownRelationDomain",
     [](DomainModel& m) {
       Relation r;
       r.name = "zz_rel";
       r.domain = "zz_missing";
       r.range = m.concepts.front().name;
       r.is_variable = true;
       m.relations.push_back(r);
     }},
    {"UnknownIndividualConcept",
     [](DomainModel& m) { m.individuals.push_back({"zz_ind", "zz_missing"}); }},
    {"UnknownValueSet",
     [](DomainModel& m) {
       DataValue v;
       v.name = "zz_val";
       v.value_of.kind = RangeRef::Kind::Named;
       v.value_of.name = "zz_missing";
       m.data_values.push_back(v);
     }},
    {"ReservedNamePrefix",
     [](DomainModel& m) { m.concepts.push_back({"T_zz", std::nullopt, false}); }},
    {"UnknownMapletOwner",
     [](DomainModel& m) { m.maplets.push_back({"zz_missing", "zz_a", "zz_b"}); }},
    {"EmptyHornBody",
     [](DomainModel& m) {
       Predicate p;
       p.id = "zz_p";
       p.horn = HornClause{{}, {apply("f", {ident(m.concepts.front().name)})}};
       m.predicates.push_back(p);
     }},
};

}  // namespace

TEST_CASE("each targeted breach yields exactly its violation") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto chain = random_chain(seed, 2, 12);
    DomainModel& target = chain.back();
    if (target.concepts.empty()) continue;
    REQUIRE(validate_chain(chain).empty());
    for (const Breach& breach : kBreaches) {
      auto mutated = chain;
      breach.apply(mutated.back());
      auto violations = validate_chain(mutated);
      CAPTURE(breach.rule);
      CAPTURE(seed);
      // UnknownMapletOwner also misses its endpoints; every reported rule
      // must concern the mutation, and the targeted rule must be present
      bool found = false;
      for (const Violation& v : violations) {
        if (v.rule == breach.rule) found = true;
        CHECK(v.element.find("zz") != std::string::npos);
      }
      CHECK(found);
    }
  }
}
