#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace orwell;
using orwell::testing::reference_interference_holds;

namespace {

Lts fixture(const std::string& name) { return load_model(std::string(ORWELL_MODELS_DIR) + "/" + name); }

}  // namespace

TEST_CASE("prefix closure of h d l separates NI from INI") {
  const Lts g = fixture("hdl.lts");
  const auto ni = check_ni(g);
  CHECK_FALSE(ni.holds);
  CHECK(*ni.witness == Word{"l"});
  CHECK(*ni.source == Word{"h", "d", "l"});
  CHECK(check_ini_direct(g).holds);
  const auto ini = check_ini_decomposed(g);
  CHECK(ini.holds);
  REQUIRE(ini.breakdown.size() == 2);
  CHECK(ini.breakdown[0].state == "0");
  CHECK(ini.breakdown[1].state == "2");
  CHECK(check_ini(g).holds);
}

TEST_CASE("a High event without a later downgrade violates INI") {
  const Lts g = parse_model(R"(
alphabet obs l
alphabet unobs h
alphabet down d
states 0 1 2
init 0
trans 0 h 1
trans 1 l 2
)");
  for (auto method : {IniMethod::direct, IniMethod::decomposed}) {
    const auto v = check_ini(g, method);
    CHECK_FALSE(v.holds);
    CHECK(*v.witness == Word{"l"});
    CHECK(*v.source == Word{"h", "l"});
  }
}

TEST_CASE("NI of a language closed under removing High events holds") {
  const Lts g = parse_model(R"(
alphabet obs l
alphabet unobs h
states 0
init 0
trans 0 l 0
trans 0 h 0
)");
  CHECK(check_ni(g).holds);
  CHECK(check_ini(g).holds);
}

TEST_CASE("random: interference deciders agree with the reference walk") {
  std::mt19937 rng(41);
  for (int i = 0; i < 500; ++i) {
    const Lts g = orwell::testing::random_system(rng);
    INFO(render_model(g));
    const auto ni = check_ni(g);
    CHECK(ni.holds == reference_interference_holds(g, false));
    const auto direct = check_ini_direct(g);
    const auto decomposed = check_ini_decomposed(g);
    CHECK(direct.holds == reference_interference_holds(g, true));
    CHECK(direct.holds == decomposed.holds);
    const auto low = g.alphabet().event_set(kLow);
    const auto down = g.alphabet().event_set(kDown);
    if (!ni.holds) {
      CHECK_FALSE(accepts(g, kLanguageSet, *ni.witness));
      CHECK(accepts(g, kLanguageSet, *ni.source));
      CHECK(project_natural(*ni.source, low) == *ni.witness);
    }
    for (const auto* v : {&direct, &decomposed}) {
      if (v->holds) continue;
      CHECK_FALSE(accepts(g, kLanguageSet, *v->witness));
      REQUIRE(v->source.has_value());
      CHECK(accepts(g, kLanguageSet, *v->source));
      CHECK(project_orwellian(*v->source, low, down) == *v->witness);
    }
  }
}
