#ifndef POLSIM_CORE_HPP_
#define POLSIM_CORE_HPP_

#include <complex>
#include <string>
#include <vector>

#include "polsim/constants.hpp"

namespace polsim {

using cplx = std::complex<double>;

// Medium parameters for a three-level lambda system in a solid host.
// W12/W13 are the inhomogeneous widths (HWHM of the Lorentzian detuning
// distribution) of the spin and optical transitions.
struct MaterialSpec {
    std::string name;
    double W12 = 0.0;        // rad/s, |1>-|2> inhomogeneous width
    double W13 = 0.0;        // rad/s, |1>-|3> inhomogeneous width
    double gamma1 = 0.0;     // rad/s, population decay of |1>
    double gamma2 = 0.0;     // rad/s, population decay of |2>
    double gamma3 = 0.0;     // rad/s, population decay of |3>
    double gamma12 = 0.0;    // rad/s, spin coherence decay
    double gamma13 = 0.0;    // rad/s, optical coherence decay
    double gamma23 = 0.0;    // rad/s, |2>-|3> coherence decay
    double d13 = 0.0;        // C m, |1>-|3> dipole moment
    double density = 0.0;    // m^-3, dopant number density
    double wavelength = 0.0; // m, probe wavelength

    // Throws std::invalid_argument on hard violations; returns soft warnings
    // (reduced-model validity) without failing.
    std::vector<std::string> validate() const;
};

// Control-field schedule Omega(t). A storage protocol is
// constant -> ramp down -> hold -> (optional mirrored ramp up) -> constant.
struct DriveSchedule {
    enum class Shape { kConstant, kLinearRamp, kTanhRamp, kPiecewise };

    Shape shape = Shape::kConstant;
    double Omega0 = 0.0;       // rad/s before the ramp
    double OmegaTau = 0.0;     // rad/s after the ramp
    double tStart = 0.0;       // s, ramp-down begins
    double tEnd = 0.0;         // s, ramp-down complete
    double holdDuration = 0.0; // s
    bool retrieve = false;     // mirrored ramp back up after the hold
    double retrieveDuration = 0.0; // s; 0 -> same as the down ramp
    // kPiecewise: (t, Omega) nodes, linearly interpolated, t ascending.
    std::vector<std::pair<double, double>> nodes;

    double omega(double t) const;
    double omega_dot(double t) const;
    double retrieval_start() const { return tEnd + holdDuration; }
    double retrieval_end() const;
    std::vector<std::string> validate() const;
};

// Weak probe pulse injected at z = zMin. Amplitude is a mean-field envelope
// in collective units; |E|^2 is proportional to photon flux.
struct ProbeSpec {
    enum class Shape { kGaussian, kSech };
    Shape shape = Shape::kGaussian;
    double peakAmplitude = 1e-4;
    double duration = 0.0;    // s, 1/e half-width of the envelope
    double arrivalTime = 0.0; // s, peak reaches z = zMin

    cplx envelope(double t) const;
};

// Space/time/ensemble discretization.
struct SimGrid {
    enum class Integrator { kRk4, kSplit };

    double zMin = 0.0, zMax = 0.0; // m
    int nZ = 0;
    double dt = 0.0;   // s
    double tMax = 0.0; // s
    int nDetuning12 = 1, nDetuning13 = 1;
    double lorentzCutoff = 30.0; // truncation in units of W
    Integrator integrator = Integrator::kRk4;
    double sampleInterval = 0.0; // s between trajectory snapshots; 0 -> auto

    double dz() const { return (zMax - zMin) / nZ; }
    int steps() const { return static_cast<int>(tMax / dt + 0.5); }
    // Throws on structural violations; with fullSolver set, also on CFL
    // violation, an atomic time step too coarse for the chosen integrator,
    // and an unstable field-atom coupling step.
    void validate(const MaterialSpec& m, bool fullSolver = true) const;
};

// g = d13 sqrt(nu / 2 hbar eps0 V) with nu the angular optical frequency
// 2 pi c / lambda.
double coupling_constant(const MaterialSpec& m, double volume);

// I = Omega^2 hbar^2 c eps0 / (2 d13^2) and its inverse.
double rabi_to_intensity(double Omega, double d13);
double intensity_to_rabi(double intensity, double d13);

// g^2 N = density d13^2 nu / (2 hbar eps0); the interaction volume cancels.
double collective_cooperativity(const MaterialSpec& m);

// Weak-probe expansion parameter epsilon = g E / Omega; warn above this.
inline constexpr double kWeakProbeThreshold = 1e-2;

}  // namespace polsim

#endif  // POLSIM_CORE_HPP_
