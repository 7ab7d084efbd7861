#include "geomgate/pulse_synth.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "geomgate/dynamics.hpp"
#include "test_support.hpp"

using namespace geomgate;

namespace {
const double kOmega0 = 2.0 * kPi * 6.25e3;
}

TEST_CASE("U1 family synthesizes two equal segments with a quarter-turn phase step") {
  const PulseSchedule s = synth_nngqc(u1_family(kOmega0));
  REQUIRE(s.segments.size() == 2);
  const double tau = kPi / kOmega0;
  CHECK(s.total_duration() == doctest::Approx(tau).epsilon(1e-15));
  CHECK(s.segments[0].duration == doctest::Approx(tau / 2));
  CHECK(s.segments[0].rabi == kOmega0);
  CHECK(s.segments[0].phase == doctest::Approx(0.0));
  CHECK(s.segments[1].phase == doctest::Approx(kPi / 2));
  CHECK(s.pulse_area() == doctest::Approx(kPi));
}

TEST_CASE("family boundary values") {
  const BoundaryValues b = family_boundaries(u1_family(kOmega0));
  const BoundaryValues e = u1_boundaries();
  CHECK(b.gamma == doctest::Approx(e.gamma));
  CHECK(b.chi_plus == doctest::Approx(e.chi_plus).epsilon(1e-12));
  CHECK(b.chi_minus == doctest::Approx(e.chi_minus));
  CHECK(b.eta_plus == doctest::Approx(e.eta_plus));
  CHECK(b.eta_minus == doctest::Approx(e.eta_minus));
}

TEST_CASE("family validation") {
  NngqcFamily f = u1_family(kOmega0);
  f.omega0 = 0.0;
  CHECK_THROWS_AS(f.validate(), GeomgateError);
  f = u1_family(kOmega0);
  f.chi0 = 4.0;  // jump after tau
  CHECK_THROWS_AS(synth_nngqc(f), GeomgateError);
}

TEST_CASE("control inversion reproduces the auxiliary-path rates") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.3, 1.3), r(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const double chi = u(rng), eta = 3.0 * u(rng), chi_rate = r(rng), eta_rate = r(rng);
    const auto [rabi, phi] = control_at(chi, chi_rate, eta, eta_rate);
    CHECK(rabi >= 0.0);
    CHECK(rabi * std::sin(phi - eta) == doctest::Approx(chi_rate).epsilon(1e-9));
    CHECK(rabi * std::cos(phi - eta) == doctest::Approx(-eta_rate * std::tan(chi)).epsilon(1e-9));
  }
}

TEST_CASE("control solver on the step family's smooth piece") {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(1e-5 + k * 1e-6);
  const ControlSamples c =
      solve_control_fields([](double t) { return kOmega0 * t - 0.3; }, [](double) { return 0.4; }, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(c.rabi[k] == doctest::Approx(kOmega0).epsilon(1e-6));
    CHECK(c.phase[k] == doctest::Approx(0.4 + kPi / 2).epsilon(1e-9));
  }
}

TEST_CASE("control solver rejects an unreachable path") {
  // chi' != 0 while eta' tan(chi) diverges.
  CHECK_THROWS_AS(control_at(kPi / 2, 1.0, 0.0, 1.0), GeomgateError);
}

TEST_CASE("cyclic schedule has area 2 pi and realizes the cyclic gate") {
  const CyclicGateParams p{kPi / 3, std::acos(1.0 / std::sqrt(3.0)), -3.0 * kPi / 4};
  const PulseSchedule s = synth_ngqc(p.gamma, p.mu, p.eta0, kOmega0);
  CHECK(s.segments.size() == 3);
  CHECK(s.pulse_area() == doctest::Approx(2.0 * kPi));
  CHECK(s.total_duration() == doctest::Approx(2.0 * kPi / kOmega0));
  for (const auto& seg : s.segments) CHECK(seg.rabi == kOmega0);
  const Matrix u = propagate_unitary(schedule_to_hamiltonian(s));
  CHECK(phase_insensitive_distance(u, ngqc_gate(p.gamma, p.mu, p.eta0)) < 1e-12);
}

TEST_CASE("cyclic schedule property over random parameters") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> g(0.05, kPi / 2), mu(0.05, kPi - 0.05), e(-kPi, kPi);
  for (int k = 0; k < 30; ++k) {
    const double a = g(rng), b = mu(rng), c = e(rng);
    const Matrix u = propagate_unitary(schedule_to_hamiltonian(synth_ngqc(a, b, c, 1.0)));
    CHECK(phase_insensitive_distance(u, ngqc_gate(a, b, c)) < 1e-12);
  }
}

TEST_CASE("dynamical schedule for U1 lasts five half periods") {
  const PulseSchedule s = synth_dg(u1_angles(), kOmega0);
  CHECK(s.total_duration() / (kPi / kOmega0) == 2.5);
  const Matrix u = propagate_unitary(schedule_to_hamiltonian(s));
  CHECK(phase_insensitive_distance(u, zxz_gate(u1_angles())) < 1e-12);
}

TEST_CASE("schedule text round trip is exact") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(1e-7, 1e-3), r(0.0, 1e8), p(-10.0, 10.0);
  PulseSchedule s;
  s.label = "random";
  for (int k = 0; k < 25; ++k) s.segments.push_back({d(rng), r(rng), p(rng)});
  s.segments.push_back({std::nextafter(1e-5, 1.0), std::numeric_limits<double>::min() * 1e10, -0.0});
  const PulseSchedule back = schedule_from_string(schedule_to_string(s));
  REQUIRE(back.segments.size() == s.segments.size());
  CHECK(back.label == "random");
  for (std::size_t k = 0; k < s.segments.size(); ++k) {
    CHECK(back.segments[k].duration == s.segments[k].duration);
    CHECK(back.segments[k].rabi == s.segments[k].rabi);
    CHECK(back.segments[k].phase == s.segments[k].phase);
  }
}

TEST_CASE("malformed schedule text is rejected") {
  CHECK_THROWS_AS(schedule_from_string("1e-5,3.0\n"), GeomgateError);
  CHECK_THROWS_AS(schedule_from_string("abc,1,2\n"), GeomgateError);
  CHECK_THROWS_AS(schedule_from_string("-1e-5,1,0\n"), GeomgateError);
}
