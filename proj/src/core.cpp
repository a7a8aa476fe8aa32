#include "polsim/core.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace polsim {

std::vector<std::string> MaterialSpec::validate() const {
    auto bad = [](const std::string& what) {
        throw std::invalid_argument("MaterialSpec: " + what);
    };
    if (!(W12 > 0.0)) bad("W12 must be > 0");
    if (!(W13 > 0.0)) bad("W13 must be > 0");
    if (!(gamma12 > 0.0) || !(gamma13 > 0.0) || !(gamma23 > 0.0))
        bad("coherence decay rates must be > 0");
    if (gamma1 < 0.0 || gamma2 < 0.0 || gamma3 < 0.0)
        bad("population decay rates must be >= 0");
    if (!(density > 0.0)) bad("density must be > 0");
    if (!(wavelength > 0.0)) bad("wavelength must be > 0");
    if (d13 < 0.0) bad("d13 must be >= 0");
    if (W13 / W12 < 10.0)
        bad("W13/W12 < 10: reduced model drops terms assuming W12 << W13");

    std::vector<std::string> warnings;
    if (W13 / W12 < 100.0)
        warnings.push_back("W13/W12 < 100: W12 << W13 only marginally satisfied");
    if (gamma12 > W12)
        warnings.push_back("gamma12 > W12: solids of interest have gamma12 << W12");
    if (gamma12 / W12 > 0.1 || gamma13 / W13 > 0.1)
        warnings.push_back("gamma/W > 0.1: Lorentzian-averaged closed forms degrade");
    return warnings;
}

namespace {

// Smooth 0->1 ramp profile on s in [0,1], endpoints exact.
double tanh_profile(double s) {
    constexpr double kSteep = 2.5;
    const double t0 = std::tanh(-kSteep);
    const double t1 = std::tanh(+kSteep);
    return (std::tanh(kSteep * (2.0 * s - 1.0)) - t0) / (t1 - t0);
}

double tanh_profile_dot(double s) {
    constexpr double kSteep = 2.5;
    const double t0 = std::tanh(-kSteep);
    const double t1 = std::tanh(+kSteep);
    const double u = std::tanh(kSteep * (2.0 * s - 1.0));
    return 2.0 * kSteep * (1.0 - u * u) / (t1 - t0);
}

}  // namespace

double DriveSchedule::retrieval_end() const {
    const double dur = retrieveDuration > 0.0 ? retrieveDuration : (tEnd - tStart);
    return retrieval_start() + dur;
}

double DriveSchedule::omega(double t) const {
    switch (shape) {
        case Shape::kConstant:
            return Omega0;
        case Shape::kPiecewise: {
            if (nodes.empty()) return 0.0;
            if (t <= nodes.front().first) return nodes.front().second;
            if (t >= nodes.back().first) return nodes.back().second;
            for (std::size_t i = 1; i < nodes.size(); ++i) {
                if (t <= nodes[i].first) {
                    const auto& [ta, va] = nodes[i - 1];
                    const auto& [tb, vb] = nodes[i];
                    return va + (vb - va) * (t - ta) / (tb - ta);
                }
            }
            return nodes.back().second;
        }
        case Shape::kLinearRamp:
        case Shape::kTanhRamp:
            break;
    }
    if (t <= tStart) return Omega0;
    if (t < tEnd) {
        const double s = (t - tStart) / (tEnd - tStart);
        const double w = (shape == Shape::kTanhRamp) ? tanh_profile(s) : s;
        return Omega0 + (OmegaTau - Omega0) * w;
    }
    if (!retrieve || t <= retrieval_start()) return OmegaTau;
    if (t < retrieval_end()) {
        const double dur = retrieval_end() - retrieval_start();
        const double s = (t - retrieval_start()) / dur;
        const double w = (shape == Shape::kTanhRamp) ? tanh_profile(s) : s;
        return OmegaTau + (Omega0 - OmegaTau) * w;
    }
    return Omega0;
}

double DriveSchedule::omega_dot(double t) const {
    switch (shape) {
        case Shape::kConstant:
            return 0.0;
        case Shape::kPiecewise: {
            if (nodes.size() < 2) return 0.0;
            if (t <= nodes.front().first || t >= nodes.back().first) return 0.0;
            for (std::size_t i = 1; i < nodes.size(); ++i) {
                if (t <= nodes[i].first) {
                    const auto& [ta, va] = nodes[i - 1];
                    const auto& [tb, vb] = nodes[i];
                    return (vb - va) / (tb - ta);
                }
            }
            return 0.0;
        }
        case Shape::kLinearRamp:
        case Shape::kTanhRamp:
            break;
    }
    if (t > tStart && t < tEnd) {
        const double dur = tEnd - tStart;
        const double s = (t - tStart) / dur;
        const double rate = (OmegaTau - Omega0) / dur;
        return (shape == Shape::kTanhRamp) ? rate * tanh_profile_dot(s) : rate;
    }
    if (retrieve && t > retrieval_start() && t < retrieval_end()) {
        const double dur = retrieval_end() - retrieval_start();
        const double s = (t - retrieval_start()) / dur;
        const double rate = (Omega0 - OmegaTau) / dur;
        return (shape == Shape::kTanhRamp) ? rate * tanh_profile_dot(s) : rate;
    }
    return 0.0;
}

std::vector<std::string> DriveSchedule::validate() const {
    auto bad = [](const std::string& what) {
        throw std::invalid_argument("DriveSchedule: " + what);
    };
    if (shape == Shape::kPiecewise) {
        if (nodes.empty()) bad("piecewise schedule needs nodes");
        for (std::size_t i = 1; i < nodes.size(); ++i)
            if (nodes[i].first <= nodes[i - 1].first) bad("node times must ascend");
        return {};
    }
    if (Omega0 < 0.0 || OmegaTau < 0.0) bad("Rabi frequencies must be >= 0");
    if (shape != Shape::kConstant) {
        if (!(tEnd > tStart)) bad("tEnd must exceed tStart");
        if (OmegaTau > Omega0) bad("storage ramp requires Omega0 >= OmegaTau");
    }
    if (holdDuration < 0.0) bad("holdDuration must be >= 0");
    return {};
}

cplx ProbeSpec::envelope(double t) const {
    const double x = (t - arrivalTime) / duration;
    switch (shape) {
        case Shape::kGaussian:
            return cplx(peakAmplitude * std::exp(-x * x), 0.0);
        case Shape::kSech:
            return cplx(peakAmplitude / std::cosh(x), 0.0);
    }
    return cplx(0.0, 0.0);
}

void SimGrid::validate(const MaterialSpec& m, bool fullSolver) const {
    auto bad = [](const std::string& what) {
        throw std::invalid_argument("SimGrid: " + what);
    };
    if (nZ < 2) bad("nZ must be >= 2");
    if (!(dt > 0.0)) bad("dt must be > 0");
    if (!(zMax > zMin)) bad("zMax must exceed zMin");
    if (nDetuning12 < 1 || nDetuning13 < 1) bad("detuning class counts must be >= 1");
    if (lorentzCutoff < 3.0) bad("lorentzCutoff must be >= 3");
    if (!fullSolver) return;
    if (kSpeedOfLight * dt > dz() * (1.0 + 1e-12)) bad("CFL violated: c dt > dz");
    // The fastest atomic phase is lorentzCutoff * W13. RK4 must resolve it;
    // the split integrator propagates it exactly and only needs to stay clear
    // of aliasing.
    const double wfast = lorentzCutoff * m.W13;
    if (wfast > 0.0) {
        const double limit =
            (integrator == Integrator::kRk4) ? 0.1 / wfast : 2.2 / wfast;
        if (dt > limit) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.4g", limit);
            bad("dt too coarse for the detuning grid (need dt <= " +
                std::string(buf) + " s)");
        }
    }
    // Stability of the explicit field-atom exchange: the collective coupling
    // angle per step must stay small (empirical blow-up near 0.3).
    const double gc = std::sqrt(collective_cooperativity(m));
    if (gc * dt > 0.15) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4g", 0.15 / gc);
        bad("sqrt(g^2 N) dt > 0.15: explicit coupling unstable (need dt <= " +
            std::string(buf) + " s)");
    }
}

double coupling_constant(const MaterialSpec& m, double volume) {
    if (!(volume > 0.0))
        throw std::domain_error("coupling_constant: volume must be > 0");
    const double nu = kTwoPi * kSpeedOfLight / m.wavelength;
    return m.d13 * std::sqrt(nu / (2.0 * kHbar * kEpsilon0 * volume));
}

double rabi_to_intensity(double Omega, double d13) {
    if (!(d13 > 0.0))
        throw std::domain_error("rabi_to_intensity: d13 must be > 0");
    return Omega * Omega * kHbar * kHbar * kSpeedOfLight * kEpsilon0 /
           (2.0 * d13 * d13);
}

double intensity_to_rabi(double intensity, double d13) {
    if (!(d13 > 0.0))
        throw std::domain_error("intensity_to_rabi: d13 must be > 0");
    return d13 * std::sqrt(2.0 * intensity /
                           (kHbar * kHbar * kSpeedOfLight * kEpsilon0));
}

double collective_cooperativity(const MaterialSpec& m) {
    const double nu = kTwoPi * kSpeedOfLight / m.wavelength;
    return m.density * m.d13 * m.d13 * nu / (2.0 * kHbar * kEpsilon0);
}

}  // namespace polsim
