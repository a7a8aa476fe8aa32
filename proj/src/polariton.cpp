#include "polsim/polariton.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polsim {

MixingAngle mixing_angle(double Omega, double g2N) {
    if (Omega < 0.0 || !(g2N > 0.0))
        throw std::domain_error("mixing_angle: need Omega >= 0, g2N > 0");
    MixingAngle a;
    a.theta = std::atan2(std::sqrt(g2N), Omega);
    const double r = std::sqrt(Omega * Omega + g2N);
    a.cosT = Omega / r;
    a.sinT = std::sqrt(g2N) / r;
    return a;
}

double mixing_angle_dot(double Omega, double dOmega, double g2N) {
    return -std::sqrt(g2N) * dOmega / (Omega * Omega + g2N);
}

std::pair<cplx, cplx> polariton_transform(cplx E, cplx spin, const MixingAngle& a) {
    return {a.cosT * E - a.sinT * spin, a.sinT * E + a.cosT * spin};
}

std::pair<cplx, cplx> polariton_inverse(cplx Psi, cplx Phi, const MixingAngle& a) {
    return {a.cosT * Psi + a.sinT * Phi, -a.sinT * Psi + a.cosT * Phi};
}

double gamma_psi(double Omega, const MaterialSpec& m) {
    if (!(Omega > 0.0)) throw std::domain_error("gamma_psi: Omega must be > 0");
    const double P = m.W12 * m.W13;
    const double o2 = Omega * Omega;
    const double d = o2 + P;
    return o2 * (o2 * m.gamma12 - m.W12 * m.W12 * m.gamma13) / (d * d);
}

AlphaBeta alpha_beta(double Omega, const MaterialSpec& m, double g2N) {
    const double P = m.W12 * m.W13;
    const double o2 = Omega * Omega;
    const double d = o2 + P;
    const double s2 = g2N / (o2 + g2N);  // sin^2 theta
    AlphaBeta ab;
    ab.alpha = (m.gamma13 * o2 * (3.0 * P - o2) +
                m.gamma12 * m.W13 * m.W13 * (3.0 * o2 - P)) /
               (d * d * d);
    ab.beta = s2 *
              ((m.gamma12 + m.gamma13) * o2 - m.gamma12 * m.W13 * m.W13 -
               m.gamma13 * m.W12 * m.W12) /
              (d * d);
    return ab;
}

CoefficientSet nonadiabatic_coefficients(double Omega, double dOmega,
                                         const MaterialSpec& m, double g2N) {
    if (!(Omega > 0.0))
        throw std::domain_error("nonadiabatic_coefficients: Omega must be > 0");
    const double P = m.W12 * m.W13;
    const double o2 = Omega * Omega;
    const MixingAngle th = mixing_angle(Omega, g2N);
    const double tdot = mixing_angle_dot(Omega, dOmega, g2N);
    const double s = th.sinT, c = th.cosT;
    const double s2 = s * s, c2 = c * c;
    const double tanT = s / c, cotT = c / s;

    CoefficientSet k;
    const AlphaBeta ab = alpha_beta(Omega, m, g2N);
    k.alpha = ab.alpha;
    k.beta = ab.beta;
    k.gammaC = s2 * P / (o2 + P);
    k.deltaC = P * (o2 - P) / ((o2 + P) * (o2 + P));
    k.GammaPsi = gamma_psi(Omega, m);

    const double g = k.gammaC, d = k.deltaC, apb = k.alpha + k.beta;
    k.A = (1.0 + g) * s2 * k.GammaPsi +
          tdot * (g * cotT + g * tanT - apb * tanT * s2 * k.GammaPsi -
                  (1.0 + g) * d * tanT - 2.0 * g * g * cotT + g * g * tanT -
                  2.0 * g * g * cotT / s2) -
          tdot * tdot * apb * (1.0 - g - d * tanT * tanT);
    k.B = -2.0 * g * c2 - k.beta * k.GammaPsi * s2 * c2 +
          tdot * s * c *
              (k.alpha + k.beta * (1.0 + cotT * cotT - d - g * cotT * cotT));
    k.C = k.beta * c2 * c2;
    return k;
}

cplx bright_state_amplitude(cplx Psi, cplx dPsi, double Omega, double thetaDot,
                            const MaterialSpec& m, double g2N,
                            bool adiabaticLimit) {
    const double P = m.W12 * m.W13;
    const double o2 = Omega * Omega;
    const MixingAngle th = mixing_angle(Omega, g2N);
    if (adiabaticLimit)
        return std::sqrt(g2N) * Omega * P / ((o2 + g2N) * (o2 + P)) * Psi;
    const AlphaBeta ab = alpha_beta(Omega, m, g2N);
    cplx phi = (P * th.sinT * th.cosT / (o2 + P) -
                (ab.alpha + ab.beta) * thetaDot) *
               Psi;
    if (dPsi != cplx(0.0, 0.0)) {
        if (th.sinT == 0.0)
            throw std::domain_error(
                "bright_state_amplitude: cot(theta) singular at theta = 0");
        phi += ab.beta * (th.cosT / th.sinT) * dPsi;
    }
    return phi;
}

double min_group_velocity(const MaterialSpec& m, double g2N) {
    const double P = m.W12 * m.W13;
    return kSpeedOfLight * P / (P + g2N);
}

namespace {

struct ReducedCoeffs {
    double vNet = 0.0;   // advection velocity minus the cB drift
    double damp = 0.0;   // renormalized A
    double diff = 0.0;   // renormalized c^2 C
};

// Coefficients of the reduced EOM at time t. The (1 - gammaC) factor that
// multiplies dPsi/dt acts as a renormalization of the whole right-hand side;
// at Omega -> 0 the advection limits to the minimum group velocity.
ReducedCoeffs reduced_coeffs(double t, const DriveSchedule& drive,
                             const MaterialSpec& m, double g2N) {
    const double Om = drive.omega(t);
    const double dOm = drive.omega_dot(t);
    const CoefficientSet k = nonadiabatic_coefficients(Om, dOm, m, g2N);
    const double c = kSpeedOfLight;
    const double cos2 = Om * Om / (Om * Om + g2N);
    const double renorm = 1.0 - k.gammaC;
    ReducedCoeffs rc;
    rc.vNet = (c * cos2 - c * k.B) / renorm;
    rc.damp = k.A / renorm;
    rc.diff = c * c * k.C / renorm;
    return rc;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

}  // namespace

ReducedTrajectory evolve_reduced(const std::vector<cplx>& initialPsi,
                                 const DriveSchedule& drive,
                                 const MaterialSpec& m, double g2N,
                                 const SimGrid& grid, ReducedMethod method) {
    const int nZ = grid.nZ;
    if (static_cast<int>(initialPsi.size()) != nZ)
        throw std::invalid_argument("evolve_reduced: initialPsi size != nZ");
    const double dz = grid.dz();
    const double dt = grid.dt;
    const int nSteps = grid.steps();
    const double sampleEvery =
        grid.sampleInterval > 0.0 ? grid.sampleInterval : grid.tMax / 200.0;
    const int sampleStride = std::max(1, static_cast<int>(sampleEvery / dt + 0.5));

    ReducedTrajectory out;
    out.method = method;
    out.z.resize(nZ);
    for (int i = 0; i < nZ; ++i) out.z[i] = grid.zMin + (i + 0.5) * dz;

    const double P = m.W12 * m.W13;
    bool powerOk = true;
    for (int s = 0; s <= nSteps; ++s) {
        const double Om = drive.omega(s * dt);
        if (Om * Om < 3.0 * P) powerOk = false;
    }
    if (!powerOk)
        out.validityFlags.push_back(
            "power condition Omega^2 >= 3 W12 W13 violated along the drive");

    auto record = [&](double t, const std::vector<cplx>& psi) {
        out.times.push_back(t);
        out.psi.push_back(psi);
        double n = 0.0;
        for (const auto& v : psi) n += std::norm(v);
        out.norm.push_back(n * dz);
    };

    if (method == ReducedMethod::kFourier) {
        // Periodic domain padded well beyond the pulse to suppress wrap-around.
        double maxAbs = 0.0;
        for (const auto& v : initialPsi) maxAbs = std::max(maxAbs, std::abs(v));
        int wCells = 0;
        for (int i = 0; i < nZ; ++i)
            if (std::abs(initialPsi[i]) > maxAbs / kPi) ++wCells;
        const int nPad = next_pow2(std::max(2 * nZ, nZ + 8 * std::max(wCells, 1)));

        std::vector<cplx> spectrum(nPad, cplx(0.0, 0.0));
        {
            std::vector<cplx> buf(nPad, cplx(0.0, 0.0));
            std::copy(initialPsi.begin(), initialPsi.end(), buf.begin());
            fftw_plan plan = fftw_plan_dft_1d(
                nPad, reinterpret_cast<fftw_complex*>(buf.data()),
                reinterpret_cast<fftw_complex*>(spectrum.data()), FFTW_FORWARD,
                FFTW_ESTIMATE);
            fftw_execute(plan);
            fftw_destroy_plan(plan);
        }

        std::vector<double> kGrid(nPad);
        for (int j = 0; j < nPad; ++j) {
            const int jj = (j <= nPad / 2) ? j : j - nPad;
            kGrid[j] = kTwoPi * jj / (nPad * dz);
        }

        std::vector<cplx> spec = spectrum, buf(nPad);
        fftw_plan inv = fftw_plan_dft_1d(
            nPad, reinterpret_cast<fftw_complex*>(spec.data()),
            reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
            FFTW_ESTIMATE);

        std::vector<cplx> psi = initialPsi;
        record(0.0, psi);
        double advInt = 0.0, aInt = 0.0, cInt = 0.0;
        for (int s = 0; s < nSteps; ++s) {
            const ReducedCoeffs rc =
                reduced_coeffs((s + 0.5) * dt, drive, m, g2N);
            advInt += rc.vNet * dt;
            aInt += rc.damp * dt;
            cInt += rc.diff * dt;
            if ((s + 1) % sampleStride == 0 || s + 1 == nSteps) {
                for (int j = 0; j < nPad; ++j) {
                    const double k = kGrid[j];
                    spec[j] = spectrum[j] *
                              std::exp(cplx(-aInt - k * k * cInt, -k * advInt));
                }
                fftw_execute(inv);
                for (int i = 0; i < nZ; ++i) psi[i] = buf[i] / double(nPad);
                record((s + 1) * dt, psi);
            }
        }
        fftw_destroy_plan(inv);
        return out;
    }

    // Direct method: RK4 in time, upwind-biased first derivative, central
    // second derivative.
    std::vector<cplx> psi = initialPsi;
    record(0.0, psi);
    std::vector<cplx> k1(nZ), k2(nZ), k3(nZ), k4(nZ), tmp(nZ);

    auto rhs = [&](const std::vector<cplx>& p, double t, std::vector<cplx>& d) {
        const ReducedCoeffs rc = reduced_coeffs(t, drive, m, g2N);
        if (std::abs(rc.vNet) * dt / dz > 0.7 ||
            2.0 * std::abs(rc.diff) * dt / (dz * dz) > 0.5)
            throw std::domain_error(
                "evolve_reduced: CFL violated in direct method");
        auto at = [&](int i) -> cplx {
            return (i >= 0 && i < nZ) ? p[i] : cplx(0.0, 0.0);
        };
        for (int i = 0; i < nZ; ++i) {
            const cplx d1 = (rc.vNet >= 0.0)
                                ? (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) /
                                      (2.0 * dz)
                                : (-3.0 * at(i) + 4.0 * at(i + 1) - at(i + 2)) /
                                      (2.0 * dz);
            const cplx d2 = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (dz * dz);
            d[i] = -rc.vNet * d1 - rc.damp * at(i) + rc.diff * d2;
        }
    };

    for (int s = 0; s < nSteps; ++s) {
        const double t = s * dt;
        rhs(psi, t, k1);
        for (int i = 0; i < nZ; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
        rhs(tmp, t + 0.5 * dt, k2);
        for (int i = 0; i < nZ; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
        rhs(tmp, t + 0.5 * dt, k3);
        for (int i = 0; i < nZ; ++i) tmp[i] = psi[i] + dt * k3[i];
        rhs(tmp, t + dt, k4);
        for (int i = 0; i < nZ; ++i)
            psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if ((s + 1) % sampleStride == 0 || s + 1 == nSteps)
            record((s + 1) * dt, psi);
    }
    return out;
}

}  // namespace polsim
