#include "polsim/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polsim/polariton.hpp"

namespace polsim {

AtomClassState atom_derivatives(const AtomClassState& s, cplx E, cplx Omega,
                                double g, double dw12, double dw13,
                                const MaterialSpec& m) {
    const cplx I(0.0, 1.0);
    const cplx G12 = -I * dw12 - m.gamma12;
    const cplx G13 = -I * dw13 - m.gamma13;
    const cplx G23 = -I * (dw13 - dw12) - m.gamma23;
    const cplx gE = g * E;

    AtomClassState d;
    d.s11 = -m.gamma1 * s.s11 - 2.0 * g * std::imag(std::conj(E) * s.s13);
    d.s22 = -m.gamma2 * s.s22 - 2.0 * std::imag(std::conj(Omega) * s.s23);
    d.s33 = -m.gamma3 * s.s33 + 2.0 * g * std::imag(std::conj(E) * s.s13) +
            2.0 * std::imag(std::conj(Omega) * s.s23);
    d.s13 = G13 * s.s13 + I * (gE * (s.s11 - s.s33) + Omega * s.s12);
    d.s23 = G23 * s.s23 + I * (g * std::conj(s.s12) * E + Omega * (s.s22 - s.s33));
    d.s12 = G12 * s.s12 + I * (std::conj(Omega) * s.s13 - gE * std::conj(s.s23));
    return d;
}

EnsembleState EnsembleState::initial(const MaterialSpec& m, const SimGrid& grid) {
    EnsembleState st;
    st.material = m;
    st.grid = grid;
    st.detuning = DetuningGrid::build(m, grid.nDetuning12, grid.nDetuning13,
                                      grid.lorentzCutoff);
    st.g2N = collective_cooperativity(m);
    st.gc = std::sqrt(st.g2N);
    st.t = 0.0;

    const cplx I(0.0, 1.0);
    const double h = 0.5 * grid.dt;
    st.clsDw12.reserve(st.detuning.joint_size());
    for (const auto& c12 : st.detuning.classes12) {
        for (const auto& c13 : st.detuning.classes13) {
            st.clsDw12.push_back(c12.delta);
            st.clsDw13.push_back(c13.delta);
            st.clsWeight.push_back(c12.weight * c13.weight);
            st.clsF12.push_back(std::exp((-I * c12.delta - m.gamma12) * h));
            st.clsF13.push_back(std::exp((-I * c13.delta - m.gamma13) * h));
            st.clsF23.push_back(
                std::exp((-I * (c13.delta - c12.delta) - m.gamma23) * h));
        }
    }
    st.popF1 = std::exp(-m.gamma1 * h);
    st.popF2 = std::exp(-m.gamma2 * h);
    st.popF3 = std::exp(-m.gamma3 * h);

    AtomClassState ground;
    ground.s11 = 1.0;  // all population starts in |1>
    st.atoms.assign(static_cast<std::size_t>(grid.nZ) * st.n_classes(), ground);
    st.E.assign(grid.nZ, cplx(0.0, 0.0));
    st.sigma13bar.assign(grid.nZ, cplx(0.0, 0.0));
    return st;
}

cplx EnsembleState::average_s12(int cell) const {
    const AtomClassState* a = &atoms[static_cast<std::size_t>(cell) * n_classes()];
    cplx sum(0.0, 0.0);
    for (std::size_t k = 0; k < clsWeight.size(); ++k)
        sum += clsWeight[k] * a[k].s12;
    return sum;
}

cplx EnsembleState::average_s13(int cell) const {
    const AtomClassState* a = &atoms[static_cast<std::size_t>(cell) * n_classes()];
    cplx sum(0.0, 0.0);
    for (std::size_t k = 0; k < clsWeight.size(); ++k)
        sum += clsWeight[k] * a[k].s13;
    return sum;
}

double EnsembleState::average_s33(int cell) const {
    const AtomClassState* a = &atoms[static_cast<std::size_t>(cell) * n_classes()];
    double sum = 0.0;
    for (std::size_t k = 0; k < clsWeight.size(); ++k)
        sum += clsWeight[k] * a[k].s33;
    return sum;
}

namespace {

// U = exp(i K dt) for the arrow-structured field coupling
// K = [[0,0,a],[0,0,b],[a*,b*,0]], a = -gE, b = -Omega.
struct FieldUnitary {
    cplx U[3][3];
};

FieldUnitary field_unitary(cplx gE, cplx Omega, double dt) {
    const cplx a = -gE, b = -Omega;
    const double R2 = std::norm(a) + std::norm(b);
    const double R = std::sqrt(R2);
    const double x = R * dt;
    double c1, c2;  // U = I + i c1 K + c2 K^2
    if (x > 1e-6) {
        c1 = std::sin(x) / R;
        c2 = (std::cos(x) - 1.0) / R2;
    } else {
        c1 = dt * (1.0 - x * x / 6.0);
        c2 = -0.5 * dt * dt * (1.0 - x * x / 12.0);
    }
    const cplx ic1(0.0, c1);
    FieldUnitary u;
    u.U[0][0] = 1.0 + c2 * std::norm(a);
    u.U[0][1] = c2 * a * std::conj(b);
    u.U[0][2] = ic1 * a;
    u.U[1][0] = c2 * std::conj(a) * b;
    u.U[1][1] = 1.0 + c2 * std::norm(b);
    u.U[1][2] = ic1 * b;
    u.U[2][0] = ic1 * std::conj(a);
    u.U[2][1] = ic1 * std::conj(b);
    u.U[2][2] = 1.0 + c2 * R2;
    return u;
}

// s -> U s U^dagger, exploiting hermiticity of s.
inline void unitary_sandwich(const FieldUnitary& u, AtomClassState& s) {
    const cplx S[3][3] = {{s.s11, s.s12, s.s13},
                          {std::conj(s.s12), s.s22, s.s23},
                          {std::conj(s.s13), std::conj(s.s23), s.s33}};
    cplx T[3][3];
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            T[r][c] =
                u.U[r][0] * S[0][c] + u.U[r][1] * S[1][c] + u.U[r][2] * S[2][c];
    auto row = [&](int r, int c) {
        return T[r][0] * std::conj(u.U[c][0]) + T[r][1] * std::conj(u.U[c][1]) +
               T[r][2] * std::conj(u.U[c][2]);
    };
    s.s11 = std::real(row(0, 0));
    s.s22 = std::real(row(1, 1));
    s.s33 = std::real(row(2, 2));
    s.s12 = row(0, 1);
    s.s13 = row(0, 2);
    s.s23 = row(1, 2);
}

inline AtomClassState axpy(const AtomClassState& s, const AtomClassState& d,
                           double h) {
    AtomClassState r;
    r.s11 = s.s11 + h * d.s11;
    r.s22 = s.s22 + h * d.s22;
    r.s33 = s.s33 + h * d.s33;
    r.s12 = s.s12 + h * d.s12;
    r.s13 = s.s13 + h * d.s13;
    r.s23 = s.s23 + h * d.s23;
    return r;
}

}  // namespace

void step_system(EnsembleState& st, const DriveSchedule& drive, cplx inject) {
    const double dt = st.grid.dt;
    const int nZ = st.grid.nZ;
    const std::size_t nc = st.n_classes();

    const double t = st.t;
    const cplx Om0(drive.omega(t), 0.0);
    const cplx OmMid(drive.omega(t + 0.5 * dt), 0.0);
    const cplx OmEnd(drive.omega(t + dt), 0.0);
    const bool rk4 = st.grid.integrator == SimGrid::Integrator::kRk4;

    std::vector<cplx> s13new(nZ);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < nZ; ++i) {
        AtomClassState* a = &st.atoms[static_cast<std::size_t>(i) * nc];
        const cplx E = st.E[i];
        cplx acc(0.0, 0.0);
        if (rk4) {
            for (std::size_t k = 0; k < nc; ++k) {
                const double dw12 = st.clsDw12[k], dw13 = st.clsDw13[k];
                const AtomClassState& s = a[k];
                const AtomClassState k1 =
                    atom_derivatives(s, E, Om0, st.gc, dw12, dw13, st.material);
                const AtomClassState k2 = atom_derivatives(
                    axpy(s, k1, 0.5 * dt), E, OmMid, st.gc, dw12, dw13, st.material);
                const AtomClassState k3 = atom_derivatives(
                    axpy(s, k2, 0.5 * dt), E, OmMid, st.gc, dw12, dw13, st.material);
                const AtomClassState k4 = atom_derivatives(
                    axpy(s, k3, dt), E, OmEnd, st.gc, dw12, dw13, st.material);
                AtomClassState& out = a[k];
                const double h = dt / 6.0;
                out.s11 += h * (k1.s11 + 2.0 * (k2.s11 + k3.s11) + k4.s11);
                out.s22 += h * (k1.s22 + 2.0 * (k2.s22 + k3.s22) + k4.s22);
                out.s33 += h * (k1.s33 + 2.0 * (k2.s33 + k3.s33) + k4.s33);
                out.s12 += h * (k1.s12 + 2.0 * (k2.s12 + k3.s12) + k4.s12);
                out.s13 += h * (k1.s13 + 2.0 * (k2.s13 + k3.s13) + k4.s13);
                out.s23 += h * (k1.s23 + 2.0 * (k2.s23 + k3.s23) + k4.s23);
                acc += st.clsWeight[k] * out.s13;
            }
        } else {
            // Strang split: exact detuning/decay phases around the exact
            // unitary kick of the field coupling. Stable for any detuning,
            // trace-contractive by construction.
            const FieldUnitary u = field_unitary(st.gc * E, OmMid, dt);
            for (std::size_t k = 0; k < nc; ++k) {
                AtomClassState& s = a[k];
                s.s11 *= st.popF1;
                s.s22 *= st.popF2;
                s.s33 *= st.popF3;
                s.s12 *= st.clsF12[k];
                s.s13 *= st.clsF13[k];
                s.s23 *= st.clsF23[k];
                unitary_sandwich(u, s);
                s.s11 *= st.popF1;
                s.s22 *= st.popF2;
                s.s33 *= st.popF3;
                s.s12 *= st.clsF12[k];
                s.s13 *= st.clsF13[k];
                s.s23 *= st.clsF23[k];
                acc += st.clsWeight[k] * s.s13;
            }
        }
        s13new[i] = acc;
    }

    // Field advection along characteristics; trapezoidal source from the
    // averaged coherence at the two characteristic endpoints. nu = 1 makes
    // the transport exact (no scheme diffusion).
    const double nu = kSpeedOfLight * dt / st.grid.dz();
    const cplx igc(0.0, st.gc);
    std::vector<cplx> Enew(nZ);
    for (int i = nZ - 1; i >= 1; --i) {
        const cplx src = 0.5 * (s13new[i] + (1.0 - nu) * st.sigma13bar[i] +
                                nu * st.sigma13bar[i - 1]);
        Enew[i] = st.E[i] - nu * (st.E[i] - st.E[i - 1]) + dt * igc * src;
    }
    Enew[0] = inject;

    for (int i = 0; i < nZ; ++i) {
        if (!std::isfinite(std::real(Enew[i])) ||
            !std::isfinite(std::imag(Enew[i])) ||
            !std::isfinite(std::real(s13new[i])))
            throw std::runtime_error(
                "step_system: non-finite field at t = " + std::to_string(st.t) +
                " s, cell " + std::to_string(i));
    }

    st.E.swap(Enew);
    st.sigma13bar.swap(s13new);
    st.t += dt;
}

namespace {

void record_sample(const EnsembleState& st, const DriveSchedule& drive,
                   Trajectory& traj) {
    TrajectorySample s;
    s.t = st.t;
    const int nZ = st.grid.nZ;
    const double dz = st.grid.dz();
    s.E = st.E;
    s.sigma12bar.resize(nZ);
    s.sigma13bar = st.sigma13bar;
    s.sigma33bar.resize(nZ);
    const MixingAngle th = st.g2N > 0.0
                               ? mixing_angle(drive.omega(st.t), st.g2N)
                               : MixingAngle{};  // pure photon, theta = 0
    for (int i = 0; i < nZ; ++i) {
        s.sigma12bar[i] = st.average_s12(i);
        s.sigma33bar[i] = st.average_s33(i);
        const auto [psi, phi] = polariton_transform(st.E[i], s.sigma12bar[i], th);
        s.fieldEnergy += std::norm(st.E[i]) * dz;
        s.spinEnergy += std::norm(s.sigma12bar[i]) * dz;
        s.darkNorm += std::norm(psi) * dz;
        s.brightNorm += std::norm(phi) * dz;
    }
    traj.samples.push_back(std::move(s));
}

}  // namespace

Trajectory run_storage_protocol(const MaterialSpec& m, const DriveSchedule& drive,
                                const ProbeSpec& probe, const SimGrid& grid) {
    Trajectory traj;
    auto warn = m.validate();
    for (auto& w : warn) traj.flags.push_back("material: " + w);
    drive.validate();
    grid.validate(m);

    EnsembleState st = EnsembleState::initial(m, grid);
    const double eps = st.gc * probe.peakAmplitude /
                       std::max(drive.omega(0.0), 1e-300);
    if (eps > kWeakProbeThreshold)
        traj.flags.push_back("weak-probe parameter g E / Omega = " +
                             std::to_string(eps) + " exceeds threshold");
    // Resonant absorption length must be resolved by the spatial grid or the
    // explicit field-atom coupling rings.
    if (m.W13 > 0.0 &&
        st.g2N * grid.dz() / (kSpeedOfLight * m.W13) > 1.0)
        traj.flags.push_back(
            "per-cell resonant optical depth exceeds 1: refine dz");

    const int nZ = grid.nZ;
    const double dz = grid.dz();
    traj.z.resize(nZ);
    for (int i = 0; i < nZ; ++i) traj.z[i] = grid.zMin + (i + 0.5) * dz;

    traj.tWindowA = drive.tStart;
    traj.tWindowB = drive.retrieve ? drive.retrieval_end() : drive.tEnd;

    const int nSteps = grid.steps();
    const double sampleEvery =
        grid.sampleInterval > 0.0 ? grid.sampleInterval : grid.tMax / 200.0;
    const int stride = std::max(1, static_cast<int>(sampleEvery / grid.dt + 0.5));

    double maxInjected = 0.0;
    bool leaked = false;
    record_sample(st, drive, traj);
    for (int s = 0; s < nSteps; ++s) {
        const cplx in = probe.envelope(st.t + grid.dt);
        step_system(st, drive, in);
        maxInjected = std::max(maxInjected, std::abs(in));
        traj.injectedEnergy += kSpeedOfLight * std::norm(in) * grid.dt;
        const cplx out = st.E[nZ - 1];
        traj.outTimes.push_back(st.t);
        traj.outField.push_back(out);
        traj.transmittedEnergy += kSpeedOfLight * std::norm(out) * grid.dt;
        if (!leaked && st.t > drive.tStart && st.t < drive.retrieval_start() &&
            std::abs(out) > 0.02 * maxInjected) {
            traj.flags.push_back("insufficient stopping distance: pulse reached "
                                 "the far boundary before retrieval");
            leaked = true;
        }
        if ((s + 1) % stride == 0 || s + 1 == nSteps)
            record_sample(st, drive, traj);
    }
    return traj;
}

namespace {

// Parabolic refinement of the peak cell position.
std::optional<double> refined_peak(const std::vector<cplx>& E,
                                   const std::vector<double>& z) {
    int imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < E.size(); ++i) {
        const double a = std::abs(E[i]);
        if (a > best) {
            best = a;
            imax = static_cast<int>(i);
        }
    }
    if (best <= 0.0 || imax < 1 || imax + 1 >= static_cast<int>(E.size()))
        return std::nullopt;
    const double ym = std::abs(E[imax - 1]), y0 = best, yp = std::abs(E[imax + 1]);
    const double denom = ym - 2.0 * y0 + yp;
    const double frac = (denom != 0.0) ? 0.5 * (ym - yp) / denom : 0.0;
    return z[imax] + frac * (z[1] - z[0]);
}

}  // namespace

TrajectoryMetrics analyze_trajectory(const Trajectory& traj,
                                     const MaterialSpec& m,
                                     const DriveSchedule& drive,
                                     const ProbeSpec& probe, const SimGrid& grid) {
    (void)m;
    if (traj.samples.empty())
        throw std::invalid_argument("analyze_trajectory: empty trajectory");
    TrajectoryMetrics out;
    out.efficiencyFlux =
        traj.injectedEnergy > 0.0 ? traj.transmittedEnergy / traj.injectedEnergy
                                  : 0.0;

    auto sample_at = [&](double t) -> const TrajectorySample& {
        std::size_t best = 0;
        double d = 1e300;
        for (std::size_t i = 0; i < traj.samples.size(); ++i) {
            const double di = std::abs(traj.samples[i].t - t);
            if (di < d) {
                d = di;
                best = i;
            }
        }
        return traj.samples[best];
    };
    const auto& sa = sample_at(traj.tWindowA);
    const auto& sb = sample_at(traj.tWindowB);
    if (sa.darkNorm > 0.0) out.efficiencyStored = sb.darkNorm / sa.darkNorm;

    // Peak tracking over samples where the pulse is well inside the medium.
    const double zLo = grid.zMin + 0.1 * (grid.zMax - grid.zMin);
    const double zHi = grid.zMax - 0.1 * (grid.zMax - grid.zMin);
    double maxField = 0.0;
    for (const auto& s : traj.samples)
        for (const auto& e : s.E) maxField = std::max(maxField, std::abs(e));
    std::vector<double> ts, zs;
    for (const auto& s : traj.samples) {
        double amp = 0.0;
        for (const auto& e : s.E) amp = std::max(amp, std::abs(e));
        if (amp < 0.3 * maxField) continue;
        const auto zp = refined_peak(s.E, traj.z);
        if (zp && *zp > zLo && *zp < zHi) {
            ts.push_back(s.t);
            zs.push_back(*zp);
        }
    }
    if (ts.size() >= 3) {
        const std::size_t n = ts.size();
        double st = 0.0, sz = 0.0, stt = 0.0, stz = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            st += ts[i];
            sz += zs[i];
            stt += ts[i] * ts[i];
            stz += ts[i] * zs[i];
        }
        const double denom = n * stt - st * st;
        if (denom > 0.0) out.groupVelocity = (n * stz - st * sz) / denom;
    }

    // Spatial 1/e full width over the vacuum pulse length, measured when the
    // in-medium field energy peaks (pulse fully inside, before any ramp).
    {
        std::size_t best = 0;
        for (std::size_t i = 0; i < traj.samples.size(); ++i)
            if (traj.samples[i].fieldEnergy > traj.samples[best].fieldEnergy)
                best = i;
        const auto& s = traj.samples[best];
        double amp = 0.0;
        int imax = 0;
        for (std::size_t i = 0; i < s.E.size(); ++i)
            if (std::abs(s.E[i]) > amp) {
                amp = std::abs(s.E[i]);
                imax = static_cast<int>(i);
            }
        if (amp > 0.0) {
            const double thresh = amp / std::numbers::e;
            int lo = imax, hi = imax;
            while (lo > 0 && std::abs(s.E[lo]) > thresh) --lo;
            while (hi + 1 < static_cast<int>(s.E.size()) &&
                   std::abs(s.E[hi]) > thresh)
                ++hi;
            const double width = (hi - lo) * grid.dz();
            out.compressionRatio = width / (2.0 * kSpeedOfLight * probe.duration);
        }
    }

    for (const auto& s : traj.samples) {
        const double tot = s.darkNorm + s.brightNorm;
        if (tot > 1e-30)
            out.peakBrightFraction =
                std::max(out.peakBrightFraction, s.brightNorm / tot);
    }

    // Envelope overlap of the released pulse against the injected one,
    // maximized over time shift.
    if (!traj.outField.empty()) {
        const std::size_t n = traj.outField.size();
        std::vector<double> a(n), b(n);
        double na = 0.0, nb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = std::abs(traj.outField[i]);
            b[i] = std::abs(probe.envelope(traj.outTimes[i]));
            na += a[i] * a[i];
            nb += b[i] * b[i];
        }
        if (na > 0.0 && nb > 0.0) {
            double best = 0.0;
            const long nn = static_cast<long>(n);
            const long stride = std::max<long>(1, nn / 2000);
            for (long shift = -nn + 1; shift < nn; shift += stride) {
                double dot = 0.0;
                for (long i = std::max<long>(0, shift); i < nn; ++i) {
                    const long j = i - shift;
                    if (j < nn) dot += a[i] * b[j];
                }
                best = std::max(best, dot);
            }
            out.envelopeOverlap = best / std::sqrt(na * nb);
        }
    }
    return out;
}

}  // namespace polsim
