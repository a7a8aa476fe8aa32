#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "polsim/ensemble.hpp"

using namespace polsim;

TEST_SUITE_BEGIN("ensemble");

TEST_CASE("homogeneous limit n = 1") {
    const auto g = build_lorentzian_grid(1e6, 1, 30.0,
                                         GridScheme::kMidpointEqualProb);
    REQUIRE(g.size() == 1);
    CHECK(g[0].delta == 0.0);
    CHECK(g[0].weight == 1.0);
    CHECK_THROWS_AS(build_lorentzian_grid(1e6, 0, 30.0,
                                          GridScheme::kMidpointEqualProb),
                    std::domain_error);
}

TEST_CASE("weights normalized and symmetric") {
    for (auto scheme : {GridScheme::kMidpointEqualProb, GridScheme::kGauss}) {
        for (int n : {2, 7, 64, 301}) {
            const auto g = build_lorentzian_grid(2.5e4, n, 50.0, scheme);
            double sum = 0.0;
            for (const auto& c : g) sum += c.weight;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            // symmetry: node i pairs with node n-1-i
            for (int i = 0; i < n / 2; ++i) {
                CHECK(g[i].delta == doctest::Approx(-g[n - 1 - i].delta));
                CHECK(g[i].weight == doctest::Approx(g[n - 1 - i].weight));
            }
            // average of f(dw) = dw vanishes by symmetry
            double avg = 0.0;
            for (const auto& c : g) avg += c.weight * c.delta;
            CHECK(std::abs(avg) < 1e-9 * 2.5e4 * 50.0);
        }
    }
}

TEST_CASE("nodes stay inside the cutoff") {
    const double W = 3.3e5, cut = 30.0;
    for (auto scheme : {GridScheme::kMidpointEqualProb, GridScheme::kGauss}) {
        const auto g = build_lorentzian_grid(W, 101, cut, scheme);
        for (const auto& c : g) CHECK(std::abs(c.delta) <= cut * W * (1.0 + 1e-12));
    }
}

TEST_CASE("averaging oracle: 1/(dw^2 + W^2)") {
    // The full Lorentzian integral of 1/(dw^2 + W^2) is 1/(2 W^2); the
    // truncated quadrature must land within half a percent.
    const double W = 7e5;
    const auto g = build_lorentzian_grid(W, 2000, 200.0,
                                         GridScheme::kMidpointEqualProb);
    std::vector<cplx> vals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        vals[i] = 1.0 / (g[i].delta * g[i].delta + W * W);
    const cplx avg = ensemble_average(vals, std::span<const DetuningClass>(g));
    CHECK(std::abs(avg.real() - 0.5 / (W * W)) * 2.0 * W * W < 0.005);
    CHECK(std::abs(avg.imag()) < 1e-18);
}

TEST_CASE("averaging oracle: contour-integral reference") {
    // f(dw) = 1/(W^2 + i dw W). Closing the contour in the lower half-plane
    // picks up only the Lorentzian pole at dw = -iW, giving exactly
    // f(-iW) weight: (W/pi)/(2iW) * 2 pi i * 1/(W^2 + W^2) = 1/(2W^2).
    // A brute-force transformed quadrature confirms the same value.
    const double W = 4.2e4;
    double bruteRe = 0.0, bruteIm = 0.0;
    const int nB = 2000001;
    for (int i = 0; i < nB; ++i) {
        // substitution dw = W tan(u), du uniform: Lorentzian weight becomes flat
        const double u = -0.5 * kPi + kPi * (i + 0.5) / nB;
        const double dw = W * std::tan(u);
        const cplx f = 1.0 / cplx(W * W, dw * W);
        bruteRe += f.real();
        bruteIm += f.imag();
    }
    const cplx brute(bruteRe / nB, bruteIm / nB);
    const cplx residue(0.5 / (W * W), 0.0);
    CHECK(std::abs(brute - residue) / std::abs(residue) < 1e-4);

    const auto g = build_lorentzian_grid(W, 4000, 300.0,
                                         GridScheme::kMidpointEqualProb);
    std::vector<cplx> vals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        vals[i] = 1.0 / cplx(W * W, g[i].delta * W);
    const cplx avg = ensemble_average(vals, std::span<const DetuningClass>(g));
    CHECK(std::abs(avg - residue) / std::abs(residue) < 5e-3);
}

TEST_CASE("refinement is a Cauchy sequence") {
    // Doubling n changes the average of a smooth function by less than the
    // previous change.
    const double W = 1e5;
    auto avg_of = [&](int n) {
        const auto g = build_lorentzian_grid(W, n, 40.0,
                                             GridScheme::kMidpointEqualProb);
        cplx s(0.0, 0.0);
        for (const auto& c : g)
            s += c.weight / cplx(4.0 * W * W, c.delta * 2.0 * W);
        return s;
    };
    const cplx a1 = avg_of(250), a2 = avg_of(500), a3 = avg_of(1000);
    CHECK(std::abs(a3 - a2) < std::abs(a2 - a1));
}

TEST_CASE("averaging is linear") {
    const double W = 1e5;
    const auto g = build_lorentzian_grid(W, 37, 30.0,
                                         GridScheme::kMidpointEqualProb);
    std::vector<cplx> f(g.size()), h(g.size()), combo(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        f[i] = cplx(std::sin(0.1 * i), std::cos(0.2 * i));
        h[i] = cplx(1.0 / (1.0 + i), -0.5);
        combo[i] = 2.5 * f[i] + cplx(0.0, -1.25) * h[i];
    }
    const auto span_g = std::span<const DetuningClass>(g);
    const cplx left = ensemble_average(combo, span_g);
    const cplx right = 2.5 * ensemble_average(f, span_g) +
                       cplx(0.0, -1.25) * ensemble_average(h, span_g);
    CHECK(std::abs(left - right) < 1e-15);
}

TEST_CASE("constant value averages to itself") {
    const auto g = build_lorentzian_grid(5e4, 33, 30.0, GridScheme::kGauss);
    std::vector<cplx> vals(g.size(), cplx(3.0, -2.0));
    const cplx avg = ensemble_average(vals, std::span<const DetuningClass>(g));
    CHECK(std::abs(avg - cplx(3.0, -2.0)) < 1e-12);
    std::vector<cplx> wrong(g.size() + 1);
    CHECK_THROWS_AS(ensemble_average(wrong, std::span<const DetuningClass>(g)),
                    std::domain_error);
}

TEST_CASE("joint grid weights") {
    MaterialSpec m;
    m.W12 = 1e4;
    m.W13 = 1e6;
    const auto grid = DetuningGrid::build(m, 8, 16, 30.0);
    CHECK(grid.joint_size() == 128);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.classes12.size(); ++i)
        for (std::size_t j = 0; j < grid.classes13.size(); ++j)
            sum += grid.joint_weight(i, j);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_SUITE_END();
