#include "doctest.h"

#include <cmath>

#include "polsim/core.hpp"

using namespace polsim;

namespace {

MaterialSpec paper_like_material() {
    MaterialSpec m;
    m.name = "test";
    m.W13 = kTwoPi * 1e9;
    m.W12 = kTwoPi * 1e4;
    m.gamma3 = 1e7;
    m.gamma12 = 1e2;
    m.gamma13 = 1e7;
    m.gamma23 = 1e7;
    m.d13 = 1e-30;
    m.density = 1e24;
    m.wavelength = 1000e-9;
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("core");

TEST_CASE("coupling constant zero dipole") {
    MaterialSpec m = paper_like_material();
    m.d13 = 0.0;
    CHECK(coupling_constant(m, 1e-6) == 0.0);
}

TEST_CASE("coupling constant reproduces g^2 N ~ N/V") {
    // d13 = 1e-30 Cm, lambda = 1000 nm: the collective coupling equals the
    // number density to within a factor of order one.
    MaterialSpec m = paper_like_material();
    const double volume = 1e-6;  // m^3
    const double g = coupling_constant(m, volume);
    const double N = m.density * volume;
    const double ratio = g * g * N / (N / volume);
    CHECK(ratio > 0.5);
    CHECK(ratio < 2.0);
}

TEST_CASE("coupling constant square-root volume scaling") {
    MaterialSpec m = paper_like_material();
    const double g1 = coupling_constant(m, 1e-6);
    const double g4 = coupling_constant(m, 4e-6);
    CHECK(g1 == doctest::Approx(2.0 * g4).epsilon(1e-12));
    CHECK_THROWS_AS(coupling_constant(m, 0.0), std::domain_error);
}

TEST_CASE("rabi to intensity matches the worked order of magnitude") {
    CHECK(rabi_to_intensity(0.0, 1e-30) == 0.0);
    // Omega^2 = 1e19, d13 = 1e-30 Cm: roughly 15 kW/cm^2.
    const double I = rabi_to_intensity(std::sqrt(1e19), 1e-30);
    const double kWcm2 = I / 1e7;
    CHECK(kWcm2 > 5.0);
    CHECK(kWcm2 < 50.0);
    CHECK_THROWS_AS(rabi_to_intensity(1.0, 0.0), std::domain_error);
}

TEST_CASE("rabi/intensity round trip") {
    const double Om = 3.7e8;
    const double back = intensity_to_rabi(rabi_to_intensity(Om, 1e-30), 1e-30);
    CHECK(back == doctest::Approx(Om).epsilon(1e-12));
}

TEST_CASE("collective cooperativity in the quoted range") {
    MaterialSpec m = paper_like_material();
    for (double density : {1e23, 1e24, 1e25}) {
        m.density = density;
        const double g2N = collective_cooperativity(m);
        CHECK(g2N > 0.5e23);
        CHECK(g2N < 2e25);
    }
}

TEST_CASE("collective cooperativity scalings") {
    MaterialSpec m = paper_like_material();
    const double base = collective_cooperativity(m);
    m.density *= 2.0;
    CHECK(collective_cooperativity(m) == doctest::Approx(2.0 * base).epsilon(1e-12));
    m.density /= 2.0;
    m.d13 = 1e-29;
    CHECK(collective_cooperativity(m) == doctest::Approx(100.0 * base).epsilon(1e-12));
}

TEST_CASE("material validation") {
    MaterialSpec m = paper_like_material();
    CHECK(m.validate().empty());
    m.W12 = m.W13 / 50.0;  // ratio below 100: warn, above 10: no throw
    CHECK(m.validate().size() == 1);
    m.W12 = m.W13 / 5.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = paper_like_material();
    m.density = 0.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("drive schedule shapes") {
    DriveSchedule d;
    d.shape = DriveSchedule::Shape::kLinearRamp;
    d.Omega0 = 10.0;
    d.OmegaTau = 2.0;
    d.tStart = 1.0;
    d.tEnd = 3.0;
    d.holdDuration = 2.0;
    d.retrieve = true;
    d.validate();

    CHECK(d.omega(0.0) == 10.0);
    CHECK(d.omega(2.0) == doctest::Approx(6.0));
    CHECK(d.omega(4.0) == 2.0);
    CHECK(d.omega(6.0) == doctest::Approx(6.0));  // mirrored ramp up
    CHECK(d.omega(10.0) == 10.0);
    CHECK(d.omega_dot(2.0) == doctest::Approx(-4.0));
    CHECK(d.omega_dot(5.5) == doctest::Approx(4.0));
    CHECK(d.omega_dot(4.0) == 0.0);

    // tanh ramp hits its endpoints exactly and stays monotone
    d.shape = DriveSchedule::Shape::kTanhRamp;
    CHECK(d.omega(1.0) == doctest::Approx(10.0));
    CHECK(d.omega(3.0) == doctest::Approx(2.0));
    double prev = d.omega(1.0);
    for (double t = 1.05; t <= 3.0; t += 0.05) {
        CHECK(d.omega(t) <= prev + 1e-12);
        prev = d.omega(t);
    }

    DriveSchedule bad = d;
    bad.OmegaTau = 20.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("piecewise drive interpolates between nodes") {
    DriveSchedule d;
    d.shape = DriveSchedule::Shape::kPiecewise;
    d.nodes = {{0.0, 8.0}, {1.0, 4.0}, {3.0, 4.0}, {4.0, 0.0}};
    d.validate();
    CHECK(d.omega(-1.0) == 8.0);
    CHECK(d.omega(0.5) == doctest::Approx(6.0));
    CHECK(d.omega(2.0) == 4.0);
    CHECK(d.omega(3.5) == doctest::Approx(2.0));
    CHECK(d.omega(9.0) == 0.0);
    CHECK(d.omega_dot(0.5) == doctest::Approx(-4.0));
    CHECK(d.omega_dot(2.0) == 0.0);
    DriveSchedule bad = d;
    bad.nodes[2].first = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("probe envelope shapes") {
    ProbeSpec p;
    p.peakAmplitude = 2.0;
    p.duration = 1.0;
    p.arrivalTime = 5.0;
    CHECK(std::abs(p.envelope(5.0)) == doctest::Approx(2.0));
    CHECK(std::abs(p.envelope(6.0)) == doctest::Approx(2.0 * std::exp(-1.0)));
    p.shape = ProbeSpec::Shape::kSech;
    CHECK(std::abs(p.envelope(5.0)) == doctest::Approx(2.0));
    CHECK(std::abs(p.envelope(6.0)) == doctest::Approx(2.0 / std::cosh(1.0)));
}

TEST_CASE("grid validation enforces CFL and atomic resolution") {
    MaterialSpec m = paper_like_material();
    SimGrid g;
    g.zMin = 0.0;
    g.zMax = 300.0;
    g.nZ = 100;                      // dz = 3 m
    g.dt = 3.0 / kSpeedOfLight;      // nu = 1
    g.tMax = 1e-6;
    g.nDetuning12 = 4;
    g.nDetuning13 = 4;
    g.lorentzCutoff = 30.0;
    // RK4 needs dt <= 0.1/(cutoff W13): violated here for a GHz-wide line
    CHECK_THROWS_AS(g.validate(m), std::invalid_argument);
    m.W13 = kTwoPi * 1e4;
    m.W12 = kTwoPi * 1e2;
    m.density = 1e10;  // modest collective coupling: stability bound satisfied
    CHECK_NOTHROW(g.validate(m));
    g.dt *= 1.01;  // CFL broken
    CHECK_THROWS_AS(g.validate(m), std::invalid_argument);
}

TEST_SUITE_END();
