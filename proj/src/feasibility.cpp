#include "polsim/feasibility.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "polsim/polariton.hpp"

namespace polsim {

std::vector<ConditionEntry> evaluate_conditions(const MaterialSpec& m, double g2N,
                                                double Omega0, double OmegaTau) {
    if (!(g2N > 0.0) || !(Omega0 > 0.0) || OmegaTau < 0.0)
        throw std::domain_error("evaluate_conditions: inputs must be positive");
    const double P = m.W12 * m.W13;
    std::vector<ConditionEntry> cond;

    // Final control field must dominate the broadening product.
    {
        ConditionEntry e;
        e.name = "power condition";
        e.formulaId = "Omega(tau)^2 >= 3 W12 W13";
        e.lhs = OmegaTau * OmegaTau;
        e.rhs = 3.0 * P;
        e.margin = e.lhs / e.rhs;
        e.pass = e.margin >= 1.0 - 1e-12;  // boundary counts as met
        cond.push_back(e);
    }
    // Collective coupling must dwarf the broadening product.
    {
        ConditionEntry e;
        e.name = "collective dominance";
        e.formulaId = "g^2 N >> W12 W13";
        e.lhs = g2N;
        e.rhs = P;
        e.margin = e.lhs / e.rhs;
        e.pass = e.margin >= kMuchGreaterFactor * (1.0 - 1e-12);
        cond.push_back(e);
    }
    // Slow-entry regime: W12 W13 << Omega0^2 << g^2 N.
    {
        ConditionEntry e;
        e.name = "slow-entry lower";
        e.formulaId = "W12 W13 <= Omega0^2 / 10";
        e.lhs = P;
        e.rhs = Omega0 * Omega0 / 10.0;
        e.margin = e.rhs / std::max(e.lhs, 1e-300);
        e.pass = e.lhs <= e.rhs;
        e.required = false;
        cond.push_back(e);
    }
    {
        ConditionEntry e;
        e.name = "slow-entry upper";
        e.formulaId = "Omega0^2 <= g^2 N / 10";
        e.lhs = Omega0 * Omega0;
        e.rhs = g2N / 10.0;
        e.margin = e.rhs / e.lhs;
        e.pass = e.lhs <= e.rhs;
        e.required = false;
        cond.push_back(e);
    }
    return cond;
}

double transparency_window(double Omega, double W13) {
    if (!(W13 > 0.0))
        throw std::domain_error("transparency_window: W13 must be > 0");
    return Omega * Omega / W13;
}

NonadiabaticBounds nonadiabatic_bounds(const MaterialSpec& m, double g2N,
                                       double Omega0, double k, double Lp) {
    if (!(k > 1.0))
        throw std::domain_error("nonadiabatic_bounds: k must exceed 1");
    if (!(Lp > 0.0))
        throw std::domain_error("nonadiabatic_bounds: Lp must be > 0");
    NonadiabaticBounds b;
    const double P = m.W12 * m.W13;
    b.tauMin = m.gamma13 * Omega0 / (std::pow(k, 7) * std::pow(P, 1.5));
    b.zPrinted = g2N / (m.gamma13 * Lp * Lp);
    b.extrapolated = k > 10.0;
    return b;
}

double suppression_factor(double k) {
    if (!(k > 0.0))
        throw std::domain_error("suppression_factor: k must be > 0");
    const double k2 = k * k;
    const double expo =
        (3.0 + 2.0 * k2) / ((1.0 + k2) * (1.0 + k2)) + 2.0 * std::log(k2 / (1.0 + k2));
    return std::exp(expo);
}

double stopping_distance(double Omega0, double g2N, double tau,
                         StoppingRegime regime) {
    if (!(tau > 0.0))
        throw std::domain_error("stopping_distance: tau must be > 0");
    switch (regime) {
        case StoppingRegime::kNaive:
            return kSpeedOfLight * tau;
        case StoppingRegime::kSlowEntry:
            return Omega0 * Omega0 * kSpeedOfLight * tau / (3.0 * g2N);
    }
    return 0.0;
}

StorageTimeLimits storage_time_limit(const MaterialSpec& m) {
    if (!(m.W12 > 0.0) || !(m.gamma12 > 0.0))
        throw std::domain_error("storage_time_limit: rates must be > 0");
    StorageTimeLimits s;
    s.tW12 = 1.0 / m.W12;
    s.tGamma12 = 1.0 / m.gamma12;
    s.practical = std::min(s.tW12, s.tGamma12);
    return s;
}

FeasibilityReport feasibility_report(const MaterialSpec& m, double g2N,
                                     const DriveSchedule& drive,
                                     const ProbeSpec& probe) {
    FeasibilityReport r;
    for (auto& w : m.validate()) r.flags.push_back("material: " + w);
    const double P = m.W12 * m.W13;
    const double Omega0 = drive.Omega0;
    const double OmegaTau =
        drive.shape == DriveSchedule::Shape::kConstant ? drive.Omega0
                                                       : drive.OmegaTau;
    r.g2N = g2N;
    r.conditions = evaluate_conditions(m, g2N, Omega0, OmegaTau);
    r.vGmin = min_group_velocity(m, g2N);
    r.GammaEIT = transparency_window(Omega0, m.W13);
    r.fieldRatioK = OmegaTau / std::sqrt(P);
    r.eta = r.fieldRatioK > 0.0 ? suppression_factor(r.fieldRatioK) : 0.0;
    if (m.d13 > 0.0) {
        r.intensity0 = rabi_to_intensity(Omega0, m.d13);
        r.intensityTau = rabi_to_intensity(OmegaTau, m.d13);
    } else {
        r.flags.push_back("d13 = 0: intensities not computed");
    }

    const double tau =
        drive.shape == DriveSchedule::Shape::kConstant ? 0.0 : drive.tEnd - drive.tStart;
    if (tau > 0.0) {
        r.zStopNaive = stopping_distance(Omega0, g2N, tau, StoppingRegime::kNaive);
        r.zStopSlowEntry =
            stopping_distance(Omega0, g2N, tau, StoppingRegime::kSlowEntry);
    }
    const auto st = storage_time_limit(m);
    r.storageTimeW12 = st.tW12;
    r.storageTimeGamma12 = st.tGamma12;

    // Pulse spectrum must fit inside the entry transparency window. This is
    // the normative medium-length criterion; the printed z-bound form is
    // dimensionally inconsistent and carried as a flag only.
    {
        ConditionEntry e;
        e.name = "bandwidth fits EIT window";
        e.formulaId = "1/duration <= Gamma_EIT(Omega0)";
        e.lhs = probe.duration > 0.0 ? 1.0 / probe.duration : 1e300;
        e.rhs = r.GammaEIT;
        e.margin = e.rhs / e.lhs;
        e.pass = e.lhs <= e.rhs;
        r.conditions.push_back(e);
    }
    if (r.fieldRatioK > 1.0 && tau > 0.0) {
        const auto nb = nonadiabatic_bounds(m, g2N, Omega0, r.fieldRatioK,
                                            std::max(r.vGmin, 1.0) * probe.duration);
        r.tauMin = nb.tauMin;
        if (nb.extrapolated)
            r.flags.push_back("field ratio k > 10: ramp-time bound extrapolated");
        ConditionEntry e;
        e.name = "ramp slow enough";
        e.formulaId = "tau >> gamma13 Omega0 / (k^7 (W12 W13)^{3/2})";
        e.lhs = tau;
        e.rhs = nb.tauMin;
        e.margin = e.lhs / std::max(e.rhs, 1e-300);
        e.pass = e.margin >= 1.0;
        r.conditions.push_back(e);
        char zbuf[32];
        std::snprintf(zbuf, sizeof(zbuf), "%.4g", nb.zPrinted);
        r.flags.push_back(
            std::string("printed medium-length bound z << g2N/(gamma13 Lp^2) = ") +
            zbuf +
            " (dimensionally inconsistent as printed; bandwidth check is "
            "normative)");
    } else if (tau > 0.0) {
        r.flags.push_back("field ratio k <= 1: ramp-time bound not applicable");
    }

    r.verdict = true;
    for (const auto& c : r.conditions)
        if (c.required && !c.pass) r.verdict = false;
    return r;
}

namespace {

std::vector<MaterialPreset> make_presets() {
    std::vector<MaterialPreset> out;
    {
        MaterialSpec m;
        m.name = "rare-earth-crystal-typical";
        m.W13 = kTwoPi * 1e9;   // optical inhomogeneous width, GHz scale
        m.W12 = kTwoPi * 1e4;   // spin inhomogeneous width, 10 kHz scale
        m.gamma1 = 0.0;
        m.gamma2 = 0.0;
        m.gamma3 = 1e7;
        m.gamma12 = 1e2;
        m.gamma13 = 1e7;
        m.gamma23 = 1e7;
        m.d13 = 1e-30;
        m.density = 1e24;       // 1e18 cm^-3
        m.wavelength = 1000e-9;
        out.push_back({m,
                       "rare-earth doped crystal, representative values from the "
                       "stated ranges: W13 1-10 GHz, W12 100 Hz - 1 MHz, dipole "
                       "1e-30 Cm, density 1e17-1e19 cm^-3"});
    }
    {
        MaterialSpec m;
        m.name = "rare-earth-optimistic";
        m.W13 = kTwoPi * 1e6;   // spectral hole burning narrows the line
        m.W12 = kTwoPi * 1e2;
        m.gamma1 = 0.0;
        m.gamma2 = 0.0;
        m.gamma3 = 1e5;
        m.gamma12 = 6e1;
        m.gamma13 = 1e5;
        m.gamma23 = 1e5;
        m.d13 = 1e-30;
        m.density = 1e23;       // 1000x dilution from hole burning
        m.wavelength = 1000e-9;
        out.push_back({m,
                       "rare-earth crystal after hole-burning preparation: "
                       "1000x narrower optical line traded against 1000x lower "
                       "interacting density; spin width at the low end of the "
                       "stated range"});
    }
    {
        MaterialSpec m;
        m.name = "NV-diamond-indicative";
        m.W13 = kTwoPi * 5e9;
        m.W12 = kTwoPi * 1e6;
        m.gamma1 = 0.0;
        m.gamma2 = 0.0;
        m.gamma3 = 7e7;
        m.gamma12 = 1e4;
        m.gamma13 = 5e7;
        m.gamma23 = 5e7;
        m.d13 = 1e-29;          // strong oscillator strength
        m.density = 1e23;
        m.wavelength = 637e-9;
        out.push_back({m,
                       "indicative, non-paper numbers: nitrogen-vacancy ensemble "
                       "with strong dipole and long spin coherence; zero-phonon "
                       "line values are order-of-magnitude guesses"});
    }
    {
        MaterialSpec m;
        m.name = "doped-fiber-indicative";
        m.W13 = kTwoPi * 5e10;  // glass host: extreme optical broadening
        m.W12 = kTwoPi * 1e6;
        m.gamma1 = 0.0;
        m.gamma2 = 0.0;
        m.gamma3 = 1e7;
        m.gamma12 = 1e3;
        m.gamma13 = 1e7;
        m.gamma23 = 1e7;
        m.d13 = 1e-30;
        m.density = 1e22;
        m.wavelength = 1550e-9;
        out.push_back({m,
                       "indicative, non-paper numbers: rare-earth doped glass "
                       "fiber; both inhomogeneous widths much larger than in "
                       "crystals, telecom wavelength"});
    }
    return out;
}

}  // namespace

const std::vector<MaterialPreset>& material_presets() {
    static const std::vector<MaterialPreset> presets = make_presets();
    return presets;
}

const MaterialPreset& material_preset(const std::string& name) {
    for (const auto& p : material_presets())
        if (p.material.name == name) return p;
    throw std::invalid_argument("unknown material preset: " + name);
}

}  // namespace polsim
