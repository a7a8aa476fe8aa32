#ifndef POLSIM_POLARITON_HPP_
#define POLSIM_POLARITON_HPP_

#include <string>
#include <utility>
#include <vector>

#include "polsim/core.hpp"

namespace polsim {

// Mixing angle: tan(theta) = sqrt(g^2 N) / Omega, theta in [0, pi/2].
struct MixingAngle {
    double theta = 0.0;
    double cosT = 1.0;
    double sinT = 0.0;
};

MixingAngle mixing_angle(double Omega, double g2N);
// d(theta)/dt for a drive with analytic dOmega/dt.
double mixing_angle_dot(double Omega, double dOmega, double g2N);

// Psi = cos(t) E - sin(t) sqrt(N) sigma12bar, Phi the orthogonal combination.
// In collective units sqrt(N) sigma12bar is passed directly as `spin`.
std::pair<cplx, cplx> polariton_transform(cplx E, cplx spin, const MixingAngle& a);
std::pair<cplx, cplx> polariton_inverse(cplx Psi, cplx Phi, const MixingAngle& a);

// Gamma_Psi = Omega^2 (Omega^2 g12 - W12^2 g13) / (Omega^2 + W12 W13)^2,
// bounded above by gamma12 in the power-condition regime.
double gamma_psi(double Omega, const MaterialSpec& m);

// Loss-kernel coefficients (units of s) entering the bright-state relation.
struct AlphaBeta {
    double alpha = 0.0;
    double beta = 0.0;
};
AlphaBeta alpha_beta(double Omega, const MaterialSpec& m, double g2N);

// Coefficients of the reduced equation of motion. gammaC/deltaC are the
// dimensionless kernel factors (named to avoid the decay-rate gammas).
struct CoefficientSet {
    double alpha = 0.0, beta = 0.0;  // s
    double gammaC = 0.0, deltaC = 0.0;
    double GammaPsi = 0.0;  // 1/s
    double A = 0.0;         // 1/s
    double B = 0.0;
    double C = 0.0;         // s
};
CoefficientSet nonadiabatic_coefficients(double Omega, double dOmega,
                                         const MaterialSpec& m, double g2N);

// Bright-state amplitude slaved to Psi: static mixing term, (alpha+beta)
// theta-dot term and beta cot(theta) Psi-dot term; `adiabaticLimit` selects
// the pure adiabatic closed form instead.
cplx bright_state_amplitude(cplx Psi, cplx dPsi, double Omega, double thetaDot,
                            const MaterialSpec& m, double g2N,
                            bool adiabaticLimit = false);

// v_g = c W12 W13 / (W12 W13 + g^2 N) at the minimum usable control field.
double min_group_velocity(const MaterialSpec& m, double g2N);

enum class ReducedMethod { kFourier, kDirect };

struct ReducedTrajectory {
    std::vector<double> times;
    std::vector<std::vector<cplx>> psi;  // snapshot per recorded time
    std::vector<double> norm;            // integral |Psi|^2 dz
    std::vector<double> z;
    std::vector<std::string> validityFlags;
    ReducedMethod method = ReducedMethod::kFourier;
};

// Advance an initial dark-polariton envelope through a drive schedule.
// Both methods advect at c cos^2(theta)/(1 - gammaC) and damp with
// A + k^2 c^2 C; they must agree on smooth scenarios.
ReducedTrajectory evolve_reduced(const std::vector<cplx>& initialPsi,
                                 const DriveSchedule& drive,
                                 const MaterialSpec& m, double g2N,
                                 const SimGrid& grid, ReducedMethod method);

}  // namespace polsim

#endif  // POLSIM_POLARITON_HPP_
