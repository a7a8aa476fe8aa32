#ifndef POLSIM_BLOCH_HPP_
#define POLSIM_BLOCH_HPP_

#include <optional>
#include <string>
#include <vector>

#include "polsim/core.hpp"
#include "polsim/ensemble.hpp"

namespace polsim {

// Density-matrix elements of one detuning class at one grid cell.
// sigma21, sigma31, sigma32 are held as conjugates, never integrated.
struct AtomClassState {
    double s11 = 0.0, s22 = 0.0, s33 = 0.0;
    cplx s12{}, s13{}, s23{};
};

// Right-hand sides of the six atomic equations of motion, Langevin terms
// omitted, both lasers on resonance with the inhomogeneous line centers so
// the class detunings are (dw12, dw13, dw13 - dw12).
AtomClassState atom_derivatives(const AtomClassState& s, cplx E, cplx Omega,
                                double g, double dw12, double dw13,
                                const MaterialSpec& m);

// Full ensemble: per-cell-per-class atomic states coupled to the 1D probe
// envelope. Works in collective units: the per-atom coupling is
// sqrt(g^2 N) and N = 1, which leaves every observable of the linear
// (weak-probe) theory unchanged.
struct EnsembleState {
    MaterialSpec material;
    SimGrid grid;
    DetuningGrid detuning;
    double g2N = 0.0;
    double gc = 0.0;  // sqrt(g2N)
    double t = 0.0;
    std::vector<AtomClassState> atoms;  // [cell * nClasses + class]
    std::vector<cplx> E;                // per cell
    std::vector<cplx> sigma13bar;       // per cell, at time t

    // flattened joint-class tables, i12-major
    std::vector<double> clsDw12, clsDw13, clsWeight;
    // half-step phase/decay factors for the split integrator
    std::vector<cplx> clsF12, clsF13, clsF23;
    double popF1 = 1.0, popF2 = 1.0, popF3 = 1.0;

    static EnsembleState initial(const MaterialSpec& m, const SimGrid& grid);
    std::size_t n_classes() const { return detuning.joint_size(); }
    // Ensemble averages over classes at one cell, fixed summation order.
    cplx average_s12(int cell) const;
    cplx average_s13(int cell) const;
    double average_s33(int cell) const;
};

// One operator-split step: atoms advance holding the field fixed (explicit
// RK4, or the exact-phase split integrator selected by the grid), then the
// field advects along characteristics with the averaged sigma13 source.
// `inject` is the probe boundary value at the new time.
void step_system(EnsembleState& st, const DriveSchedule& drive, cplx inject);

struct TrajectorySample {
    double t = 0.0;
    std::vector<cplx> E;
    std::vector<cplx> sigma12bar;
    std::vector<cplx> sigma13bar;
    std::vector<double> sigma33bar;
    double fieldEnergy = 0.0;  // integral |E|^2 dz
    double spinEnergy = 0.0;   // integral |sigma12bar|^2 dz
    double darkNorm = 0.0;     // integral |Psi|^2 dz
    double brightNorm = 0.0;   // integral |Phi|^2 dz
};

struct Trajectory {
    std::vector<double> z;
    std::vector<TrajectorySample> samples;
    // Outgoing field at z = zMax every step, for flux bookkeeping.
    std::vector<double> outTimes;
    std::vector<cplx> outField;
    double injectedEnergy = 0.0;     // c * sum |E_in|^2 dt
    double transmittedEnergy = 0.0;  // c * sum |E_out|^2 dt
    // Comparison window for storage efficiency: just before the write ramp
    // and just after the read ramp completes.
    double tWindowA = 0.0, tWindowB = 0.0;
    std::vector<std::string> flags;
};

// Full storage protocol: inject, ramp down, hold, ramp up, release.
Trajectory run_storage_protocol(const MaterialSpec& m, const DriveSchedule& drive,
                                const ProbeSpec& probe, const SimGrid& grid);

struct TrajectoryMetrics {
    double efficiencyFlux = 0.0;  // released/injected pulse energy
    std::optional<double> efficiencyStored;  // dark norm at B over A
    std::optional<double> groupVelocity;     // m/s from peak tracking
    std::optional<double> compressionRatio;  // in-medium width / c*duration
    double peakBrightFraction = 0.0;
    double envelopeOverlap = 0.0;  // released vs injected, time-shifted
};

TrajectoryMetrics analyze_trajectory(const Trajectory& traj,
                                     const MaterialSpec& m,
                                     const DriveSchedule& drive,
                                     const ProbeSpec& probe, const SimGrid& grid);

}  // namespace polsim

#endif  // POLSIM_BLOCH_HPP_
