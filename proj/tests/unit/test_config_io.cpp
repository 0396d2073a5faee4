#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "giantwg/config_io.hpp"
#include "helpers.hpp"

using namespace giantwg;

TEST_SUITE("config_io") {
  TEST_CASE("parse a full config") {
    const char* text =
        "# two legs\n"
        "omega = 10\n"
        "gamma_scale = 0.5   # rate\n"
        "gamma_e = 0\n"
        "leg = 0.0, 1.0, 0.0\n"
        "leg = 0.5, 2.0, length:0.25\n";
    const GiantAtomConfig c = build_config(parse_config_text(text));
    REQUIRE(c.size() == 2);
    CHECK(c.legs()[1].coupling_phase == doctest::Approx(2.5));
    CHECK(c.legs()[1].coupling_magnitude == 2.0);
  }

  TEST_CASE("parse errors carry the line number") {
    try {
      parse_config_text("omega = 1\ngamma_scale = abc\n");
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("leg = 1, 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("colour = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("omega 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("omega = 1,5\n"), ConfigError);
  }

  TEST_CASE("numbers ignore the locale and must be complete") {
    CHECK(parse_number(" 1.5 ") == 1.5);
    CHECK(parse_number("+2e-3") == 2e-3);
    CHECK_THROWS_AS(parse_number("1.5x"), ConfigError);
    CHECK_THROWS_AS(parse_number(""), ConfigError);
    CHECK_THROWS_AS(parse_number("1,000"), ConfigError);
  }

  TEST_CASE("format and parse round trip") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      const GiantAtomConfig c = testutil::random_config(rng, 1, 4, 0.25);
      CHECK(build_config(parse_config_text(format_config(c))) == c);
    }
  }

  TEST_CASE("load from file") {
    const auto path = std::filesystem::temp_directory_path() / "giantwg_config_io_test.cfg";
    {
      std::ofstream out(path);
      out << "omega=3\ngamma_scale=1\ngamma_e=0\nleg=0,1,0\n";
    }
    CHECK(load_config(path).omega() == 3.0);
    std::filesystem::remove(path);
    CHECK_THROWS(load_config(path));
  }
}
