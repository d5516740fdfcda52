#include <doctest.h>

#include <string>

#include "share/scenario.hpp"

using namespace share;

TEST_CASE("the shipped fig2 scenario loads with defaults applied") {
  const Scenario sc = load_scenario(std::string(SHARE_SOURCE_DIR) + "/scenarios/fig2.toml");
  CHECK(sc.channels == 20);
  REQUIRE(sc.networks.size() == 2);
  CHECK(sc.networks[0].id == "net1");
  CHECK(sc.networks[0].requirement == 2);
  CHECK(sc.networks[1].requirement == 3);
  CHECK(sc.params.alpha == doctest::Approx(0.9));
  CHECK(sc.params.r == doctest::Approx(1.95));
  CHECK(sc.params.capacity == doctest::Approx(18.0));

  // Defaults echoed back through the metadata string.
  CHECK(sc.params.tolerance == doctest::Approx(1e-6));
  CHECK(sc.params.step == doctest::Approx(1.0));
  CHECK(sc.params.max_rounds == 10000);
  CHECK(sc.s0 == doctest::Approx(0.1));
  CHECK(sc.share_mode == ShareMode::Normalized);
  const std::string meta = sc.canonical_description();
  CHECK(meta.find("tolerance=") != std::string::npos);
  CHECK(meta.find("share_mode=normalized") != std::string::npos);
}

TEST_CASE("the shipped fig3 scenario carries both disturbances") {
  const Scenario sc = load_scenario(std::string(SHARE_SOURCE_DIR) + "/scenarios/fig3.toml");
  REQUIRE(sc.disturbances.size() == 2);
  CHECK(sc.disturbances[0].kind == DisturbanceEvent::Kind::Silence);
  CHECK(sc.disturbances[0].start_round == 500);
  CHECK(sc.disturbances[0].end_round == 519);
  CHECK(sc.disturbances[1].kind == DisturbanceEvent::Kind::Delete);
}

TEST_CASE("constraint violations name the offending field") {
  const char* too_few_channels = R"(
channels = 1
[[networks]]
id = "a"
requirement = 1
[[networks]]
id = "b"
requirement = 1
)";
  CHECK_THROWS_WITH_AS(scenario_from_json(parse_toml_subset(too_few_channels)),
                       "scenario field 'channels': N < n", Error);

  const char* bad_requirement = R"(
channels = 9
[[networks]]
id = "a"
requirement = 0
)";
  CHECK_THROWS_WITH_AS(scenario_from_json(parse_toml_subset(bad_requirement)),
                       "scenario field 'networks.requirement': must be >= 1", Error);

  const char* random_without_seed = R"(
channels = 9
strategy = "all_random"
[[networks]]
id = "a"
requirement = 1
)";
  CHECK_THROWS_WITH_AS(scenario_from_json(parse_toml_subset(random_without_seed)),
                       "scenario field 'master_seed': required for randomized strategies", Error);

  const char* duplicate_id = R"(
channels = 9
[[networks]]
id = "a"
requirement = 1
[[networks]]
id = "a"
requirement = 2
)";
  CHECK_THROWS_AS(scenario_from_json(parse_toml_subset(duplicate_id)), Error);
}

TEST_CASE("toml subset parser") {
  SUBCASE("tables, arrays of tables, scalars and comments") {
    const auto doc = parse_toml_subset(R"(
# header comment
top = "value"  # trailing comment
count = 3
ratio = 0.5
flag = true
list = [1, 2, 3]
[table]
x = 1e-6
[[rows]]
a = 1
[[rows]]
a = 2
)");
    CHECK(doc.at("top") == "value");
    CHECK(doc.at("count") == 3);
    CHECK(doc.at("ratio") == 0.5);
    CHECK(doc.at("flag") == true);
    CHECK(doc.at("list").size() == 3);
    CHECK(doc.at("table").at("x") == 1e-6);
    REQUIRE(doc.at("rows").size() == 2);
    CHECK(doc.at("rows")[1].at("a") == 2);
  }
  SUBCASE("diagnostics carry the line number") {
    CHECK_THROWS_WITH_AS(parse_toml_subset("\nnot a kv pair\n"),
                         "toml: expected key = value (line 2)", Error);
  }
}

TEST_CASE("scenario hash is stable and sensitive") {
  Scenario a = scenario_from_json(parse_toml_subset(R"(
channels = 20
[[networks]]
id = "net1"
requirement = 2
[[networks]]
id = "net2"
requirement = 3
)"));
  Scenario b = a;
  CHECK(a.hash() == b.hash());
  b.params.r = 1.9;
  CHECK(a.hash() != b.hash());
}
