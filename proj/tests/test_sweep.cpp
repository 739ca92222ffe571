#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "spinsqueeze/sweep.hpp"

using namespace spinsqueeze;

TEST_CASE("run_sweep grid") {
  SweepConfig config;
  config.two_j = 4;
  config.eta = Complex(0.2, 0.0);
  config.t_min = 0.0;
  config.t_max = 2.0;
  config.steps = 5;
  SECTION("rows are evenly spaced and strictly increasing") {
    const std::vector<SweepRow> rows = run_sweep(config);
    REQUIRE(rows.size() == 5);
    CHECK(rows.front().t == 0.0);
    CHECK(rows.back().t == 2.0);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].t > rows[i - 1].t);
  }
  SECTION("a degenerate interval collapses to one row") {
    config.t_min = config.t_max = 0.7;
    const std::vector<SweepRow> rows = run_sweep(config);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].t == 0.7);
  }
  SECTION("at t = 0 the state is the SCS, so xi^2 = 1 everywhere") {
    config.t_min = config.t_max = 0.0;
    for (const SweepRow& row : run_sweep(config)) {
      for (int a = 0; a < 3; ++a) {
        REQUIRE(row.xi2[a].has_value());
        CHECK(std::abs(*row.xi2[a] - 1.0) <= 1e-10);
      }
    }
  }
  SECTION("steps = N matches the union of N single-point runs") {
    const std::vector<SweepRow> swept = run_sweep(config);
    for (std::size_t i = 0; i < swept.size(); ++i) {
      SweepConfig single = config;
      single.t_min = single.t_max =
          config.t_min + double(i) * (config.t_max - config.t_min) / (config.steps - 1);
      single.steps = 1;
      const std::vector<SweepRow> one = run_sweep(single);
      REQUIRE(one.size() == 1);
      CHECK(sweep_csv_text(config.axes, {one[0]}) == sweep_csv_text(config.axes, {swept[i]}));
    }
  }
}

TEST_CASE("run_sweep error paths") {
  SweepConfig config;
  SECTION("parse failure precedes computation") {
    config.f_expr = "N^^2";
    CHECK_THROWS_AS(run_sweep(config), parse_error);
  }
  SECTION("invalid grid") {
    config.steps = 0;
    CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
    config.steps = 10;
    config.t_min = 2.0;
    config.t_max = 1.0;
    CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
  }
  SECTION("empty axes") {
    config.axes = SweepAxes{false, false, false};
    CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
  }
}

TEST_CASE("undef cells") {
  SECTION("eta = 0 leaves exactly the z axis undefined") {
    SweepConfig config;
    config.two_j = 6;
    config.eta = Complex(0.0, 0.0);
    config.steps = 3;
    config.t_max = 1.0;
    for (const SweepRow& row : run_sweep(config)) {
      REQUIRE(row.xi2[0].has_value());
      REQUIRE(row.xi2[1].has_value());
      CHECK_FALSE(row.xi2[2].has_value());
      CHECK(std::abs(*row.xi2[0] - 1.0) <= 1e-10);
      CHECK(std::abs(*row.xi2[1] - 1.0) <= 1e-10);
    }
  }
  SECTION("no undef on z for the reference parameter sets") {
    for (double mod : {0.1, 0.2, 0.3}) {
      SweepConfig config;
      config.eta = Complex(mod, 0.0);
      config.f_expr = "sin(2*N)";
      config.axes = SweepAxes{false, false, true};
      config.steps = 151;
      for (const SweepRow& row : run_sweep(config)) CHECK(row.xi2[2].has_value());
    }
  }
}

TEST_CASE("csv format") {
  SECTION("fixed formatting of floats") {
    CHECK(format_float(0.005) == "5.00000000000e-03");
    CHECK(format_float(0.0) == "0.00000000000e+00");
    CHECK(format_float(-0.0) == "0.00000000000e+00");
    CHECK(format_float(1.0) == "1.00000000000e+00");
    CHECK(format_float(-12345.678) == "-1.23456780000e+04");
  }
  SECTION("header reflects the requested axes, in x, y, z order") {
    SweepConfig config;
    config.two_j = 2;
    config.steps = 1;
    config.t_max = 0.0;
    config.axes = SweepAxes{true, false, true};
    const std::string text = sweep_csv_text(config.axes, run_sweep(config));
    CHECK(text.substr(0, text.find('\n')) == "t,xi2_x,xi2_z");
  }
  SECTION("read + re-emit is byte identical") {
    SweepConfig config;
    config.two_j = 6;
    config.eta = Complex(0.3, 0.1);
    config.steps = 17;
    const std::string text = sweep_csv_text(config.axes, run_sweep(config));
    std::istringstream in(text);
    const ParsedSweep parsed = read_sweep_csv(in);
    CHECK(sweep_csv_text(parsed.axes, parsed.rows) == text);
  }
  SECTION("round trip preserves undef") {
    SweepConfig config;
    config.two_j = 4;
    config.eta = Complex(0.0, 0.0);  // z column becomes undef
    config.steps = 3;
    config.t_max = 1.0;
    const std::string text = sweep_csv_text(config.axes, run_sweep(config));
    CHECK(text.find("undef") != std::string::npos);
    std::istringstream in(text);
    const ParsedSweep parsed = read_sweep_csv(in);
    CHECK(sweep_csv_text(parsed.axes, parsed.rows) == text);
  }
  SECTION("reader rejects malformed input") {
    std::istringstream bad_header("time,xi2_x\n");
    CHECK_THROWS_AS(read_sweep_csv(bad_header), std::invalid_argument);
    std::istringstream bad_column("t,xi2_w\n");
    CHECK_THROWS_AS(read_sweep_csv(bad_column), std::invalid_argument);
    std::istringstream bad_cell("t,xi2_x\n0.0,abc\n");
    CHECK_THROWS_AS(read_sweep_csv(bad_cell), std::invalid_argument);
    std::istringstream short_row("t,xi2_x,xi2_y\n0.0,1.0\n");
    CHECK_THROWS_AS(read_sweep_csv(short_row), std::invalid_argument);
  }
}

TEST_CASE("eta wire format") {
  CHECK(parse_eta("0.5") == Complex(0.5, 0.0));
  CHECK(parse_eta("-2") == Complex(-2.0, 0.0));
  CHECK(parse_eta("1e-3") == Complex(1e-3, 0.0));
  CHECK(parse_eta("0.5+0.3i") == Complex(0.5, 0.3));
  CHECK(parse_eta("0.5-0.3i") == Complex(0.5, -0.3));
  CHECK(parse_eta("-1.5+2e-3i") == Complex(-1.5, 2e-3));

  CHECK_THROWS_AS(parse_eta(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_eta("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_eta("0.5+0.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_eta("0.5 + 0.3i"), std::invalid_argument);
  CHECK_THROWS_AS(parse_eta("1i"), std::invalid_argument);
  CHECK_THROWS_AS(parse_eta("0.5+0.3ix"), std::invalid_argument);

  CHECK(format_eta(Complex(0.5, 0.3)) == "5.00000000000e-01+3.00000000000e-01i");
  CHECK(format_eta(Complex(0.5, -0.3)) == "5.00000000000e-01-3.00000000000e-01i");
  CHECK(format_eta(Complex(0.5, 0.0)) == "5.00000000000e-01");
  CHECK(parse_eta(format_eta(Complex(-0.125, 0.75))) == Complex(-0.125, 0.75));
}

TEST_CASE("axes wire format") {
  CHECK(parse_axes("xy") == SweepAxes{true, true, false});
  CHECK(parse_axes("zyx") == SweepAxes{true, true, true});
  CHECK(parse_axes("z") == SweepAxes{false, false, true});
  CHECK_THROWS_AS(parse_axes(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_axes("xx"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axes("xw"), std::invalid_argument);
}

TEST_CASE("config file") {
  SECTION("full file with comments") {
    std::istringstream file(
        "# reproduction recipe\n"
        "two_j = 10\n"
        "eta = 0.1\n"
        "f = N^2 - N   # kerr-like\n"
        "t_min = 0\n"
        "t_max = 3\n"
        "steps = 601\n"
        "axes = xy\n"
        "out = fig1.csv\n"
        "\n");
    const SweepOverrides overrides = read_sweep_config(file);
    REQUIRE(overrides.two_j.has_value());
    CHECK(*overrides.two_j == 10);
    CHECK(*overrides.eta == Complex(0.1, 0.0));
    CHECK(*overrides.f_expr == "N^2 - N");
    CHECK(*overrides.t_min == 0.0);
    CHECK(*overrides.t_max == 3.0);
    CHECK(*overrides.steps == 601);
    CHECK(*overrides.axes == SweepAxes{true, true, false});
    CHECK(*overrides.out == "fig1.csv");

    SweepConfig config;
    config.steps = 11;  // pre-existing value, overridden by the file
    apply_overrides(config, overrides);
    CHECK(config.steps == 601);
    CHECK(config.axes == SweepAxes{true, true, false});
  }
  SECTION("partial files leave defaults alone") {
    std::istringstream file("steps = 7\n");
    SweepConfig config;
    apply_overrides(config, read_sweep_config(file));
    CHECK(config.steps == 7);
    CHECK(config.two_j == 10);
    CHECK(config.f_expr == "N^2");
  }
  SECTION("errors name the line") {
    std::istringstream unknown("two_j = 4\nbogus = 1\n");
    CHECK_THROWS_MATCHES(read_sweep_config(unknown), std::invalid_argument,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("line 2")));
    std::istringstream no_eq("two_j\n");
    CHECK_THROWS_AS(read_sweep_config(no_eq), std::invalid_argument);
    std::istringstream bad_value("steps = soon\n");
    CHECK_THROWS_AS(read_sweep_config(bad_value), std::invalid_argument);
  }
}
