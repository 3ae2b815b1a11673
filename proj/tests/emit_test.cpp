#include <doctest.h>

#include "generators.hpp"
#include "kaos2b/emit.hpp"
#include "kaos2b/parse.hpp"
#include "kaos2b/translate.hpp"
#include "test_util.hpp"

using namespace kaos2b;
using namespace kaos2b::test;

TEST_CASE("printing an empty system gives exactly three lines") {
  Component c;
  c.name = "m";
  CHECK(print_component(c) == "SYSTEM\n  m\nEND\n");
}

TEST_CASE("printing an empty domain model") {
  DomainModel m;
  m.name = "m";
  CHECK(print_domain_model(m) == "domain model m {\n}\n");
  CHECK(parse_domain_model(print_domain_model(m)) == m);
}

TEST_CASE("print is idempotent through parse for all three formats") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    CAPTURE(seed);
    Component c = random_component(seed);
    std::string once = print_component(c);
    CHECK(print_component(parse_bsystem(once)) == once);

    auto chain = random_chain(seed, 2, 10);
    std::string dm = print_domain_model(chain.back());
    CHECK(print_domain_model(parse_domain_model(dm)) == dm);

    GoalModel gm = random_goal_model(seed);
    std::string gs = print_goal_model(gm);
    CHECK(print_goal_model(parse_goal_model(gs)) == gs);
  }
}

TEST_CASE("golden landing-gear files re-print to their own token stream") {
  for (const char* name : {"lg_system_ref_0.golden.bsys", "lg_system_ref_1.golden.bsys"}) {
    CAPTURE(name);
    std::string text = read_file(testdata(name));
    Component c = parse_bsystem(text);
    CHECK(tokens_equal(print_component(c, Notation::Unicode), text));
    CHECK(tokens_equal(print_component(c, Notation::Ascii), text));
  }
}

TEST_CASE("trace files round trip") {
  std::vector<DomainModel> chain{parse_domain_model(read_file(testdata("lg0.dmod"))),
                                 parse_domain_model(read_file(testdata("lg1.dmod")))};
  TranslateResult result = translate_project(chain, {true});
  std::vector<std::string> header{"tool x", "input y"};
  std::string text = print_trace(result.trace, header);
  CorrespondenceTrace loaded = load_trace(text);
  CHECK(loaded == result.trace);
  CHECK(text.rfind("# tool x\n", 0) == 0);
}

TEST_CASE("the landing-gear trace records the root concept correspondence") {
  std::vector<DomainModel> chain{parse_domain_model(read_file(testdata("lg0.dmod"))),
                                 parse_domain_model(read_file(testdata("lg1.dmod")))};
  TranslateResult result = translate_project(chain, {true});
  CHECK(result.trace.find(trace_kind::ConceptSet, "lg_system_ref_0.LandingGear") ==
        "lg_system_ref_0.LandingGear");
  std::string text = print_trace(result.trace);
  CHECK(text.find("concept_set\tlg_system_ref_0.LandingGear\tlg_system_ref_0.LandingGear\n") !=
        std::string::npos);
}

TEST_CASE("trace records are sorted by kind then domain name") {
  CorrespondenceTrace trace;
  trace.add("zz_kind", "m.b", "m.b");
  trace.add("zz_kind", "m.a", "m.a");
  trace.add("aa_kind", "m.z", "m.z");
  std::string text = print_trace(trace);
  auto a = text.find("aa_kind");
  auto z1 = text.find("zz_kind\tm.a");
  auto z2 = text.find("zz_kind\tm.b");
  CHECK(a < z1);
  CHECK(z1 < z2);
}

TEST_CASE("unicode and ascii renderings normalize identically") {
  std::vector<DomainModel> chain{parse_domain_model(read_file(testdata("lg0.dmod"))),
                                 parse_domain_model(read_file(testdata("lg1.dmod")))};
  TranslateResult result = translate_project(chain, {true});
  for (const Component& c : result.components)
    CHECK(normalize_tokens(print_component(c, Notation::Ascii)) ==
          normalize_tokens(print_component(c, Notation::Unicode)));
}
