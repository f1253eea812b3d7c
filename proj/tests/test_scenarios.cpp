#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "slantpath/scenario.hpp"

using namespace slantpath;
using testutil::TestRng;

TEST_CASE("built-in scenarios match their defining triplets") {
    CHECK_THROWS_AS(builtin_scenario(0), DomainError);
    CHECK_THROWS_AS(builtin_scenario(6), DomainError);

    const ScenarioSpec rainy = builtin_scenario(1);
    CHECK(rainy.name == "Rainy weather");
    REQUIRE(rainy.profile.slabs.size() == 3);
    CHECK(rainy.profile.slabs[0].extent_km() == 0.8);
    REQUIRE(rainy.profile.slabs[0].states.size() == 2);
    CHECK(rainy.profile.slabs[0].states[0].label == "nimbostratus");
    CHECK(rainy.profile.slabs[0].states[0].attenuation.value == 8.2425);
    CHECK(rainy.profile.slabs[0].states[0].probability == 0.9);
    CHECK(rainy.profile.slabs[0].states[1].probability == 0.1);
    CHECK(rainy.profile.slabs[1].extent_km() == 14.2);

    const ScenarioSpec clear = builtin_scenario(3);
    CHECK(clear.profile.slabs[0].states[0].attenuation.value == 0.034);
    CHECK(clear.profile.slabs[0].extent_km() == 3.0);

    const ScenarioSpec snowy = builtin_scenario(5);
    const Slab& stratosphere = snowy.profile.slabs.back();
    CHECK(stratosphere.base_km == 15.0);
    CHECK(stratosphere.top_km == 30.0);
    REQUIRE(stratosphere.states.size() == 2);
    CHECK(stratosphere.states[0].probability + stratosphere.states[1].probability ==
          1.0);

    SUBCASE("every built-in validates cleanly") {
        for (int id = 1; id <= kBuiltinScenarioCount; ++id) {
            CHECK(validate_profile(builtin_scenario(id).profile).empty());
        }
    }

    SUBCASE("built-ins default to physical mode") {
        for (int id = 1; id <= kBuiltinScenarioCount; ++id) {
            CHECK(builtin_scenario(id).profile.mode == EvalMode::Physical);
        }
    }
}

TEST_CASE("built-in values survive canonical rendering verbatim") {
    const std::string rainy = serialize_scenario(builtin_scenario(1));
    CHECK(rainy.find("scenario \"Rainy weather\"") == 0);
    CHECK(rainy.find("mode physical") != std::string::npos);
    CHECK(rainy.find("slab 0.0 0.8") != std::string::npos);
    CHECK(rainy.find("att_db_per_km=8.2425 eta=0.9") != std::string::npos);
    CHECK(rainy.find("att_db_per_km=0.034 eta=0.1") != std::string::npos);
    CHECK(rainy.find("slab 0.8 15.0") != std::string::npos);
    CHECK(rainy.find("slab 15.0 30.0") != std::string::npos);
    CHECK(rainy.find("att_db_per_km=0.0104 eta=0.5") != std::string::npos);
    CHECK(rainy.find("att_db_per_km=0.0002036 eta=0.5") != std::string::npos);

    const std::string clear = serialize_scenario(builtin_scenario(3));
    CHECK(clear.find("slab 3.0 15.0") != std::string::npos);
    CHECK(clear.find("state \"clear\" att_db_per_km=0.0025 eta=1.0") !=
          std::string::npos);

    const std::string foggy = serialize_scenario(builtin_scenario(2));
    CHECK(foggy.find("att_db_per_km=1.768 eta=1.0") != std::string::npos);
    CHECK(foggy.find("att_db_per_km=0.4592 eta=1.0") != std::string::npos);

    const std::string polluted = serialize_scenario(builtin_scenario(4));
    CHECK(polluted.find("att_db_per_km=0.3536 eta=0.7") != std::string::npos);

    const std::string snowy = serialize_scenario(builtin_scenario(5));
    CHECK(snowy.find("slab 0.0 2.0") != std::string::npos);
    CHECK(snowy.find("att_db_per_km=0.2 eta=1.0") != std::string::npos);
}

TEST_CASE("scenario files round-trip") {
    SUBCASE("built-ins parse back structurally equal") {
        for (int id = 1; id <= kBuiltinScenarioCount; ++id) {
            const ScenarioSpec original = builtin_scenario(id);
            const std::string text = serialize_scenario(original);
            const ScenarioSpec reparsed = parse_scenario_file(text);
            CHECK(structurally_equal(original, reparsed));
            CHECK(!reparsed.id.has_value());
            CHECK(serialize_scenario(reparsed) == text);
        }
    }

    SUBCASE("serialize-parse-serialize is byte-stable for random specs") {
        TestRng rng(41);
        for (int i = 0; i < 50; ++i) {
            ScenarioSpec spec;
            spec.name = "random " + std::to_string(i);
            spec.profile = testutil::random_profile(rng);
            spec.profile.name = spec.name;
            if (i % 3 == 0) spec.notes = "first line\nsecond \"quoted\" line";
            const std::string once = serialize_scenario(spec);
            const ScenarioSpec reparsed = parse_scenario_file(once);
            CHECK(structurally_equal(spec, reparsed));
            CHECK(serialize_scenario(reparsed) == once);
        }
    }
}

TEST_CASE("scenario grammar") {
    SUBCASE("minimal lossless file") {
        const ScenarioSpec spec = parse_scenario_file(
            "scenario \"void\"\n"
            "mode physical\n"
            "slab 0 1\n"
            "  state \"empty\" att_db_per_km=0 eta=1\n");
        CHECK(spec.name == "void");
        CHECK(spec.notes.empty());
        for (const double z : {0.0, 45.0, 85.0}) {
            CHECK(effective_transmittance(spec.profile, z).transmittance == 1.0);
        }
    }

    SUBCASE("comments, blank lines, and quoted hashes") {
        const ScenarioSpec spec = parse_scenario_file(
            "# header comment\n"
            "scenario \"a#b\"   # trailing comment\n"
            "\n"
            "mode paper\n"
            "slab 0 1   # slab comment\n"
            "  state \"s\" att_db_per_km=1 eta=1\n");
        CHECK(spec.name == "a#b");
        CHECK(spec.profile.mode == EvalMode::Paper);
    }

    SUBCASE("notes are kept in order and omitted when empty") {
        const ScenarioSpec spec = parse_scenario_file(
            "scenario \"n\"\nmode physical\n"
            "note \"alpha\"\nnote \"beta\"\n"
            "slab 0 1\n  state \"s\" att_db_per_km=0 eta=1\n");
        CHECK(spec.notes == "alpha\nbeta");

        ScenarioSpec plain = spec;
        plain.notes.clear();
        CHECK(serialize_scenario(plain).find("note ") == std::string::npos);
    }

    SUBCASE("escapes in quoted strings") {
        const ScenarioSpec spec = parse_scenario_file(
            "scenario \"a \\\"b\\\" \\\\ c\"\nmode physical\n"
            "slab 0 1\n  state \"s\" att_db_per_km=0 eta=1\n");
        CHECK(spec.name == "a \"b\" \\ c");
        const std::string text = serialize_scenario(spec);
        CHECK(structurally_equal(parse_scenario_file(text), spec));
    }

    SUBCASE("visibility is optional per state") {
        const ScenarioSpec spec = parse_scenario_file(
            "scenario \"v\"\nmode physical\n"
            "slab 0 1\n"
            "  state \"with\" att_db_per_km=1 eta=0.5 visibility_km=10\n"
            "  state \"without\" att_db_per_km=0 eta=0.5\n");
        CHECK(spec.profile.slabs[0].states[0].visibility_km == 10.0);
        CHECK(!spec.profile.slabs[0].states[1].visibility_km.has_value());
    }
}

TEST_CASE("scenario parse and validation errors") {
    SUBCASE("syntax errors carry line numbers") {
        try {
            parse_scenario_file("scenario \"x\"\nmode physical\nslab 0 1\n  state \"s\" att_db_per_km=zzz eta=1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
            CHECK(std::string(e.what()).find("line 4") != std::string::npos);
        }

        CHECK_THROWS_AS(parse_scenario_file(""), ParseError);
        CHECK_THROWS_AS(parse_scenario_file("mode physical\n"), ParseError);
        CHECK_THROWS_AS(parse_scenario_file("scenario \"x\"\nslab 0 1\n"), ParseError);
        CHECK_THROWS_AS(parse_scenario_file("scenario \"x\"\nmode maybe\n"), ParseError);
        CHECK_THROWS_AS(
            parse_scenario_file("scenario \"x\"\nmode physical\n"
                                "  state \"s\" att_db_per_km=1 eta=1\n"),
            ParseError);
        CHECK_THROWS_AS(
            parse_scenario_file("scenario \"x\"\nmode physical\nslab 0 1\n"),
            ParseError);
        CHECK_THROWS_AS(
            parse_scenario_file("scenario \"x\"\nmode physical\nslab 0 1\n"
                                "  state \"s\" att_db_per_km=1 eta=1 eta=1\n"),
            ParseError);
        CHECK_THROWS_AS(
            parse_scenario_file("scenario \"x\"\nmode physical\nslab 0 1\n"
                                "  state \"s\" att_db_per_km=1 eta=1 color=red\n"),
            ParseError);
        CHECK_THROWS_AS(
            parse_scenario_file("scenario \"unterminated\nmode physical\n"),
            ParseError);
        CHECK_THROWS_AS(
            parse_scenario_file("scenario \"x\" extra\nmode physical\n"),
            ParseError);
    }

    SUBCASE("validation failures name the rule and slab") {
        const char* text =
            "scenario \"bad\"\nmode physical\n"
            "slab 0 1\n"
            "  state \"a\" att_db_per_km=1 eta=0.7\n"
            "  state \"b\" att_db_per_km=0 eta=0.2\n";
        CHECK_THROWS_WITH_AS(parse_scenario_file(text),
                             doctest::Contains("probability_normalization"),
                             ValidationError);
        CHECK_THROWS_WITH_AS(parse_scenario_file(text), doctest::Contains("slab 0"),
                             ValidationError);
    }

    SUBCASE("duplicate slab ranges are overlap violations") {
        const char* text =
            "scenario \"dup\"\nmode physical\n"
            "slab 0 2\n  state \"a\" att_db_per_km=1 eta=1\n"
            "slab 1 3\n  state \"b\" att_db_per_km=1 eta=1\n";
        CHECK_THROWS_WITH_AS(parse_scenario_file(text),
                             doctest::Contains("slab_overlap"), ValidationError);
    }
}
