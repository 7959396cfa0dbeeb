#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotstar/config.hpp"
#include "rotstar/errors.hpp"

using namespace rotstar;
using config::RunConfig;

TEST_CASE("values parse with comments, blanks and whitespace") {
    const auto cfg = RunConfig::parse_string(
        "# reference problem\n"
        "gamma = 1.5\n"
        "\n"
        "grid.nr = 96   # resolution\n"
        "rotation.kind = power_decay\n"
        "scf.tol=1e-7\n");
    CHECK(cfg.get_double("gamma") == 1.5);
    CHECK(cfg.get_int("grid.nr") == 96);
    CHECK(cfg.get_string("rotation.kind") == "power_decay");
    CHECK(cfg.get_double("scf.tol") == 1e-7);
    CHECK(cfg.get_double("scf.relax", 0.5) == 0.5);
    CHECK(!cfg.has("mass"));
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        (void)RunConfig::parse_string("gamma = 1.5\nscf.bogus = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("scf.bogus") != std::string::npos);
    }
}

TEST_CASE("malformed lines and duplicates are rejected") {
    CHECK_THROWS_AS((void)RunConfig::parse_string("gamma 1.5\n"), ConfigError);
    CHECK_THROWS_AS((void)RunConfig::parse_string("= 3\n"), ConfigError);
    CHECK_THROWS_AS((void)RunConfig::parse_string("gamma =\n"), ConfigError);
    CHECK_THROWS_AS((void)RunConfig::parse_string("gamma = 1\ngamma = 2\n"), ConfigError);
}

TEST_CASE("type errors name the key") {
    const auto cfg = RunConfig::parse_string("gamma = fast\ngrid.nr = 12.5\n");
    try {
        (void)cfg.get_double("gamma");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("gamma") != std::string::npos);
    }
    CHECK_THROWS_AS((void)cfg.get_int("grid.nr"), ConfigError);
}

TEST_CASE("missing required keys are named") {
    const auto cfg = RunConfig::parse_string("gamma = 1.5\n");
    try {
        cfg.require("grid.nr");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("grid.nr") != std::string::npos);
    }
}

TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS((void)RunConfig::parse_file("/nonexistent/rotstar.cfg"), ConfigError);
}
