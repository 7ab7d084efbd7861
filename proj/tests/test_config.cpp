#include "geomgate/config.hpp"

#include "test_support.hpp"

using namespace geomgate;

namespace {

std::vector<std::string> problems_of(const std::string& text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& ps, const std::string& needle) {
  for (const auto& p : ps) {
    if (p.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("frequencies are ordinary frequencies times 2 pi") {
  const RunConfig c = parse_config("experiment = figure2\nomega0 = 6.25 khz\n");
  CHECK(c.options.physical.omega0 == doctest::Approx(2.0 * kPi * 6250.0).epsilon(1e-15));
  CHECK(parse_frequency("10mhz") == doctest::Approx(2.0 * kPi * 1e7));
  CHECK(parse_frequency("1 GHz") == doctest::Approx(2.0 * kPi * 1e9));
  CHECK(parse_frequency("5 rad/s") == 5.0);
  CHECK_THROWS_AS(parse_frequency("6.25"), GeomgateError);
  CHECK_THROWS_AS(parse_frequency("6.25 parsec"), GeomgateError);
}

TEST_CASE("empty config lists every required key") {
  const auto ps = problems_of("");
  CHECK(ps.size() == 2);
  CHECK(mentions(ps, "run.experiment"));
  CHECK(mentions(ps, "physics.omega0"));
}

TEST_CASE("rydberg detuning ratio") {
  const RunConfig c =
      parse_config("[run]\nexperiment = figure5\n[physics]\nomega0 = 6.25 khz\n[rydberg]\nomega_t = 10 mhz\ndelta_over_omega = 17\n");
  const RydbergParams p = c.options.physical.rydberg();
  CHECK(p.delta == doctest::Approx(17.0 * 2.0 * kPi * 1e7));
}

TEST_CASE("interaction from C6 and distance") {
  const RunConfig c = parse_config(
      "experiment = figure5\nomega0 = 6.25 khz\n[rydberg]\nomega_t = 10 mhz\nr_um = 2\nc6_ghz_um6 = 64\n");
  // C6 / r^6 = 1 GHz
  CHECK(c.options.physical.rydberg().v == doctest::Approx(2.0 * kPi * 1e9));
  CHECK(mentions(problems_of("experiment = figure5\nomega0 = 1 khz\nr_um = 2\n"), "together"));
  CHECK(mentions(problems_of("experiment = figure5\nomega0 = 1 khz\nr_um = 2\nc6_ghz_um6 = 1\nv_over_omega = 3\n"),
                 "either"));
}

TEST_CASE("all problems are reported with line numbers") {
  const auto ps = problems_of("omega0 = 6.25\nbogus = 1\n[physics]\ngamma1 = 3 khz\n[nope]\nx = 1\njobs = -2\n");
  CHECK(mentions(ps, "t.cfg:1:"));
  CHECK(mentions(ps, "t.cfg:2: unknown key 'bogus'"));
  CHECK(mentions(ps, "t.cfg:4:"));
  CHECK(mentions(ps, "unknown section [nope]"));
  CHECK(mentions(ps, "run.experiment"));
  CHECK(ps.size() >= 5);
}

TEST_CASE("rates take no frequency unit") {
  const RunConfig c = parse_config("experiment = figure2\nomega0 = 1 khz\ngamma1 = 12.5 /s\ngamma2 = 40\n");
  CHECK(c.options.physical.gamma1 == 12.5);
  CHECK(c.options.physical.gamma2 == 40.0);
  CHECK(mentions(problems_of("experiment = figure2\nomega0 = 1 khz\ngamma2 = 4 khz\n"), "unit mismatch"));
  CHECK(mentions(problems_of("experiment = figure2\nomega0 = 1 khz\nerror_span = 0.1 hz\n"), "unit mismatch"));
}

TEST_CASE("duplicate keys and sweep requirements") {
  CHECK(mentions(problems_of("experiment = figure2\nomega0 = 1 khz\nomega0 = 2 khz\n"), "duplicate"));
  const auto ps = problems_of("experiment = sweep\nomega0 = 1 khz\n");
  CHECK(mentions(ps, "sweep.scheme"));
  CHECK(mentions(ps, "sweep.axis1"));
}

TEST_CASE("echoed config reproduces the parsed config") {
  const std::string text =
      "# reference settings\n[run]\nexperiment = sweep\nout = results\njobs = 3\n[physics]\nomega0 = 6.25 khz\n"
      "gamma1 = 7.85\ngamma2 = 78.5\ndephasing = coherence\n[sweep]\nscheme = dg\ngate = U2\n"
      "axis1 = zeta, -0.05, 0.05, 7\naxis2 = gamma2, 0, 300, 4\nmetric = state_fidelity\ndelta = 0.01\n"
      "[numerics]\nunitary_tol = 1e-11\nerror_grid = 9\n[rydberg]\nomega1 = 8 mhz\nomega_t = 10 mhz\n";
  const RunConfig a = parse_config(text);
  const std::string echoed = echo_config(a);
  const RunConfig b = parse_config(echoed, "echo");
  CHECK(echo_config(b) == echoed);
  CHECK(b.options.physical.omega0 == a.options.physical.omega0);
  CHECK(b.options.physical.rydberg_omega1 == a.options.physical.rydberg_omega1);
  CHECK(b.options.physical.convention == DephasingConvention::kCoherence);
  REQUIRE(b.sweep.has_value());
  CHECK(b.sweep->axis1.min == -0.05);
  CHECK(b.sweep->axis2.count == 4);
  CHECK(b.sweep->scheme == Scheme::kDg);
  CHECK(b.sweep->delta == 0.01);
  CHECK(b.out_dir == "results");
  CHECK(b.options.jobs == 3);
}

TEST_CASE("command-line experiment satisfies the requirement") {
  const RunConfig c = parse_config("omega0 = 6.25 khz\n", "t.cfg", "durations");
  CHECK(c.experiment == "durations");
}
