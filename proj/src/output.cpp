#include "polsim/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace polsim {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ostringstream os;
    os << "# " << kSchemaVersion << "\n";
    os << "t,z,reE,imE,abs_sigma12,abs_sigma13,sigma33\n";
    for (const auto& s : traj.samples) {
        for (std::size_t i = 0; i < traj.z.size(); ++i) {
            os << csv_num(s.t) << ',' << csv_num(traj.z[i]) << ','
               << csv_num(s.E[i].real()) << ',' << csv_num(s.E[i].imag()) << ','
               << csv_num(std::abs(s.sigma12bar[i])) << ','
               << csv_num(std::abs(s.sigma13bar[i])) << ','
               << csv_num(s.sigma33bar[i]) << '\n';
        }
    }
    write_file(path, os.str());
}

void write_trajectory_csv(const std::string& path, const ReducedTrajectory& traj,
                          const DriveSchedule& drive, double g2N) {
    std::ostringstream os;
    os << "# " << kSchemaVersion << "\n";
    os << "t,z,reE,imE,abs_sigma12,abs_sigma13,sigma33\n";
    for (std::size_t n = 0; n < traj.times.size(); ++n) {
        const MixingAngle th = mixing_angle(drive.omega(traj.times[n]), g2N);
        for (std::size_t i = 0; i < traj.z.size(); ++i) {
            const auto [E, spin] =
                polariton_inverse(traj.psi[n][i], cplx(0.0, 0.0), th);
            os << csv_num(traj.times[n]) << ',' << csv_num(traj.z[i]) << ','
               << csv_num(E.real()) << ',' << csv_num(E.imag()) << ','
               << csv_num(std::abs(spin)) << ",0,0\n";
        }
    }
    write_file(path, os.str());
}

void write_metrics_json(const std::string& path, const TrajectoryMetrics& m,
                        const Trajectory& traj, const std::string& mode) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["mode"] = mode;
    j["efficiency_flux"] = m.efficiencyFlux;
    if (m.efficiencyStored) j["efficiency_stored"] = *m.efficiencyStored;
    if (m.groupVelocity) j["group_velocity_m_s"] = *m.groupVelocity;
    if (m.compressionRatio) j["compression_ratio"] = *m.compressionRatio;
    j["peak_bright_fraction"] = m.peakBrightFraction;
    j["envelope_overlap"] = m.envelopeOverlap;
    j["injected_energy"] = traj.injectedEnergy;
    j["transmitted_energy"] = traj.transmittedEnergy;
    j["window_a_s"] = traj.tWindowA;
    j["window_b_s"] = traj.tWindowB;
    j["flags"] = traj.flags;
    write_file(path, j.dump(2) + "\n");
}

void write_metrics_json(const std::string& path, const ReducedTrajectory& traj,
                        const std::string& mode) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["mode"] = mode;
    j["method"] = traj.method == ReducedMethod::kFourier ? "fourier" : "direct";
    if (!traj.norm.empty()) {
        j["initial_norm"] = traj.norm.front();
        j["final_norm"] = traj.norm.back();
        j["norm_ratio"] = traj.norm.front() > 0.0
                              ? traj.norm.back() / traj.norm.front()
                              : 0.0;
    }
    j["flags"] = traj.validityFlags;
    write_file(path, j.dump(2) + "\n");
}

void write_report_json(const std::string& path, const FeasibilityReport& r) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["verdict"] = r.verdict ? "pass" : "fail";
    ordered_json conds = ordered_json::array();
    for (const auto& c : r.conditions) {
        ordered_json e;
        e["name"] = c.name;
        e["formula"] = c.formulaId;
        e["lhs"] = c.lhs;
        e["rhs"] = c.rhs;
        e["margin"] = c.margin;
        e["pass"] = c.pass;
        e["required"] = c.required;
        conds.push_back(e);
    }
    j["conditions"] = conds;
    ordered_json d;
    d["g2N"] = r.g2N;
    d["v_g_min_m_s"] = r.vGmin;
    d["Gamma_EIT_rad_s"] = r.GammaEIT;
    d["field_ratio_k"] = r.fieldRatioK;
    d["eta"] = r.eta;
    d["intensity0_W_m2"] = r.intensity0;
    d["intensity_tau_W_m2"] = r.intensityTau;
    d["z_stop_naive_m"] = r.zStopNaive;
    d["z_stop_slow_entry_m"] = r.zStopSlowEntry;
    d["tau_min_s"] = r.tauMin;
    d["storage_time_W12_s"] = r.storageTimeW12;
    d["storage_time_gamma12_s"] = r.storageTimeGamma12;
    j["derived"] = d;
    j["flags"] = r.flags;
    write_file(path, j.dump(2) + "\n");
}

std::string format_report_table(const FeasibilityReport& r) {
    std::ostringstream os;
    char buf[320];
    os << "condition                       lhs            rhs            margin     pass\n";
    for (const auto& c : r.conditions) {
        std::snprintf(buf, sizeof(buf), "%-30s  %-13.4g  %-13.4g  %-9.3g  %s%s\n",
                      c.name.c_str(), c.lhs, c.rhs, c.margin,
                      c.pass ? "yes" : "NO", c.required ? "" : " (advisory)");
        os << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "verdict: %s\nv_g,min = %.4g m/s  Gamma_EIT = %.4g rad/s  "
                  "eta = %.6f (k = %.3g)\n",
                  r.verdict ? "PASS" : "FAIL", r.vGmin, r.GammaEIT, r.eta,
                  r.fieldRatioK);
    os << buf;
    std::snprintf(buf, sizeof(buf),
                  "I(Omega0) = %.4g W/m^2  I(OmegaTau) = %.4g W/m^2\n"
                  "z_stop naive = %.4g m  slow-entry = %.4g m  tau_min = %.4g s\n"
                  "storage limits: 1/W12 = %.4g s, 1/gamma12 = %.4g s\n",
                  r.intensity0, r.intensityTau, r.zStopNaive, r.zStopSlowEntry,
                  r.tauMin, r.storageTimeW12, r.storageTimeGamma12);
    os << buf;
    for (const auto& f : r.flags) os << "note: " << f << "\n";
    return os.str();
}

}  // namespace polsim
