#include "polsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "polsim/bloch.hpp"
#include "polsim/feasibility.hpp"
#include "polsim/output.hpp"

namespace polsim {

namespace {

using njson = nlohmann::json;

// Tracks which keys of one JSON object were consumed; anything left over is
// an unknown key, reported with its path.
class Section {
  public:
    Section(const njson& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object())
            throw ConfigSyntaxError(path_ + ": expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const njson& take(const std::string& key) {
        used_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end())
            throw ConfigInvariantError(path_ + "." + key + ": missing required key");
        return *it;
    }

    template <typename T>
    T value(const std::string& key, T fallback) {
        used_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) return fallback;
        try {
            return it->get<T>();
        } catch (const njson::exception& e) {
            throw ConfigSyntaxError(path_ + "." + key + ": " + e.what());
        }
    }

    template <typename T>
    T required(const std::string& key) {
        const njson& v = take(key);
        try {
            return v.get<T>();
        } catch (const njson::exception& e) {
            throw ConfigSyntaxError(path_ + "." + key + ": " + e.what());
        }
    }

    // A rate given as either <base>_radps or <base>_Hz (times 2 pi), exactly
    // one of the two.
    double rate(const std::string& base, bool requiredKey = true,
                double fallback = 0.0) {
        const std::string kr = base + "_radps", kh = base + "_Hz";
        const bool hr = j_.contains(kr), hh = j_.contains(kh);
        used_.insert(kr);
        used_.insert(kh);
        if (hr && hh)
            throw ConfigInvariantError(path_ + ": give only one of " + kr +
                                       " and " + kh);
        if (!hr && !hh) {
            if (requiredKey)
                throw ConfigInvariantError(path_ + ": missing " + kr + " or " + kh);
            return fallback;
        }
        try {
            return hr ? j_.at(kr).get<double>()
                      : kTwoPi * j_.at(kh).get<double>();
        } catch (const njson::exception& e) {
            throw ConfigSyntaxError(path_ + "." + base + ": " + e.what());
        }
    }

    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!used_.count(it.key()))
                throw ConfigUnknownKeyError(path_ + "." + it.key() +
                                            ": unknown key");
        }
    }

    const njson& raw() const { return j_; }
    const std::string& path() const { return path_; }

  private:
    const njson& j_;
    std::string path_;
    std::set<std::string> used_;
};

MaterialSpec parse_material(const njson& j, std::vector<std::string>& warnings) {
    Section s(j, "material");
    if (s.has("preset")) {
        const std::string name = s.required<std::string>("preset");
        s.done();
        try {
            return material_preset(name).material;
        } catch (const std::invalid_argument& e) {
            throw ConfigInvariantError(std::string("material.preset: ") + e.what());
        }
    }
    MaterialSpec m;
    m.name = s.value<std::string>("name", "custom");
    m.W12 = s.rate("W12");
    m.W13 = s.rate("W13");
    m.gamma1 = s.rate("gamma1", false, 0.0);
    m.gamma2 = s.rate("gamma2", false, 0.0);
    m.gamma3 = s.rate("gamma3", false, 0.0);
    m.gamma12 = s.rate("gamma12");
    m.gamma13 = s.rate("gamma13");
    m.gamma23 = s.rate("gamma23", false, m.gamma13);
    m.d13 = s.required<double>("d13_Cm");
    if (s.has("density_per_m3") == s.has("density_per_cm3"))
        throw ConfigInvariantError(
            "material: give exactly one of density_per_m3 and density_per_cm3");
    m.density = s.has("density_per_m3")
                    ? s.required<double>("density_per_m3")
                    : s.required<double>("density_per_cm3") * 1e6;
    if (s.has("wavelength_m") == s.has("wavelength_nm"))
        throw ConfigInvariantError(
            "material: give exactly one of wavelength_m and wavelength_nm");
    m.wavelength = s.has("wavelength_m")
                       ? s.required<double>("wavelength_m")
                       : s.required<double>("wavelength_nm") * 1e-9;
    s.done();
    try {
        for (auto& w : m.validate()) warnings.push_back("material: " + w);
    } catch (const std::invalid_argument& e) {
        throw ConfigInvariantError(e.what());
    }
    return m;
}

DriveSchedule parse_drive(const njson& j) {
    Section s(j, "drive");
    DriveSchedule d;
    const std::string shape = s.value<std::string>("shape", "constant");
    if (shape == "constant")
        d.shape = DriveSchedule::Shape::kConstant;
    else if (shape == "linear-ramp")
        d.shape = DriveSchedule::Shape::kLinearRamp;
    else if (shape == "tanh-ramp")
        d.shape = DriveSchedule::Shape::kTanhRamp;
    else if (shape == "piecewise")
        d.shape = DriveSchedule::Shape::kPiecewise;
    else
        throw ConfigInvariantError("drive.shape: unknown shape '" + shape + "'");

    if (d.shape == DriveSchedule::Shape::kPiecewise) {
        for (const auto& node : s.take("nodes")) {
            if (!node.is_array() || node.size() != 2)
                throw ConfigSyntaxError("drive.nodes: expected [t, omega] pairs");
            d.nodes.emplace_back(node[0].get<double>(), node[1].get<double>());
        }
    } else {
        d.Omega0 = s.rate("omega0");
        d.OmegaTau = s.rate("omegaTau", false, d.Omega0);
        if (d.shape != DriveSchedule::Shape::kConstant) {
            d.tStart = s.required<double>("tStart_s");
            d.tEnd = s.required<double>("tEnd_s");
            d.holdDuration = s.value<double>("hold_s", 0.0);
            d.retrieve = s.value<bool>("retrieve", false);
            d.retrieveDuration = s.value<double>("retrieveDuration_s", 0.0);
        }
    }
    s.done();
    try {
        d.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigInvariantError(e.what());
    }
    return d;
}

ProbeSpec parse_probe(const njson& j) {
    Section s(j, "probe");
    ProbeSpec p;
    const std::string shape = s.value<std::string>("shape", "gaussian");
    if (shape == "gaussian")
        p.shape = ProbeSpec::Shape::kGaussian;
    else if (shape == "sech")
        p.shape = ProbeSpec::Shape::kSech;
    else
        throw ConfigInvariantError("probe.shape: unknown shape '" + shape + "'");
    p.peakAmplitude = s.value<double>("peakAmplitude", 1e-4);
    p.duration = s.required<double>("duration_s");
    p.arrivalTime = s.value<double>("arrival_s", 3.0 * p.duration);
    s.done();
    if (!(p.duration > 0.0))
        throw ConfigInvariantError("probe.duration_s must be > 0");
    if (!(p.peakAmplitude > 0.0))
        throw ConfigInvariantError("probe.peakAmplitude must be > 0");
    return p;
}

SimGrid parse_grid(const njson& j) {
    Section s(j, "grid");
    SimGrid g;
    g.zMin = s.value<double>("zMin_m", 0.0);
    g.zMax = s.required<double>("zMax_m");
    g.nZ = s.required<int>("nZ");
    g.dt = s.required<double>("dt_s");
    g.tMax = s.required<double>("tMax_s");
    g.nDetuning12 = s.value<int>("nDetuning12", 1);
    g.nDetuning13 = s.value<int>("nDetuning13", 1);
    g.lorentzCutoff = s.value<double>("lorentzCutoff", 30.0);
    g.sampleInterval = s.value<double>("sampleInterval_s", 0.0);
    const std::string integ = s.value<std::string>("integrator", "rk4");
    if (integ == "rk4")
        g.integrator = SimGrid::Integrator::kRk4;
    else if (integ == "split")
        g.integrator = SimGrid::Integrator::kSplit;
    else
        throw ConfigInvariantError("grid.integrator: unknown integrator '" +
                                   integ + "'");
    s.done();
    return g;
}

std::string mode_name(RunMode m) {
    switch (m) {
        case RunMode::kSimulateFull: return "simulate-full";
        case RunMode::kSimulateReduced: return "simulate-reduced";
        case RunMode::kFeasibility: return "feasibility";
        case RunMode::kValidate: return "validate";
    }
    return "?";
}

}  // namespace

RunConfig parse_config(const std::string& path,
                       std::optional<RunMode> modeOverride) {
    std::ifstream f(path);
    if (!f) throw ConfigIoError("cannot read config file: " + path);
    njson j;
    try {
        j = njson::parse(f, nullptr, true, /*ignore_comments=*/true);
    } catch (const njson::exception& e) {
        throw ConfigSyntaxError(path + ": " + e.what());
    }

    RunConfig cfg;
    Section root(j, "config");

    if (root.has("mode")) {
        const std::string m = root.required<std::string>("mode");
        if (m == "simulate-full")
            cfg.mode = RunMode::kSimulateFull;
        else if (m == "simulate-reduced")
            cfg.mode = RunMode::kSimulateReduced;
        else if (m == "feasibility")
            cfg.mode = RunMode::kFeasibility;
        else if (m == "validate")
            cfg.mode = RunMode::kValidate;
        else
            throw ConfigInvariantError("mode: unknown mode '" + m + "'");
        if (modeOverride && *modeOverride != cfg.mode)
            throw ConfigInvariantError("mode '" + m +
                                       "' conflicts with the subcommand '" +
                                       mode_name(*modeOverride) + "'");
    } else if (modeOverride) {
        cfg.mode = *modeOverride;
    } else {
        throw ConfigInvariantError("mode: missing (no subcommand either)");
    }

    if (root.has("material")) {
        cfg.material = parse_material(root.take("material"), cfg.warnings);
        cfg.hasMaterial = true;
    }
    if (root.has("drive")) {
        cfg.drive = parse_drive(root.take("drive"));
        cfg.hasDrive = true;
    }
    if (root.has("probe")) {
        cfg.probe = parse_probe(root.take("probe"));
        cfg.hasProbe = true;
    }
    if (root.has("grid")) {
        cfg.grid = parse_grid(root.take("grid"));
        cfg.hasGrid = true;
    }
    if (root.has("reducedMethod")) {
        const std::string m = root.required<std::string>("reducedMethod");
        if (m == "fourier")
            cfg.reducedMethod = ReducedMethod::kFourier;
        else if (m == "direct")
            cfg.reducedMethod = ReducedMethod::kDirect;
        else
            throw ConfigInvariantError("reducedMethod: unknown method '" + m + "'");
    }
    if (root.has("output")) {
        Section out(root.take("output"), "output");
        cfg.outputDir = out.value<std::string>("directory", "out");
        if (out.has("formats")) {
            cfg.writeCsv = cfg.writeJson = false;
            for (const auto& fmt : out.take("formats")) {
                const std::string v = fmt.get<std::string>();
                if (v == "csv")
                    cfg.writeCsv = true;
                else if (v == "json")
                    cfg.writeJson = true;
                else
                    throw ConfigInvariantError("output.formats: unknown format '" +
                                               v + "'");
            }
        }
        out.done();
    }
    cfg.workers = root.value<int>("workers", 0);
    root.done();

    auto need = [&](bool present, const char* what) {
        if (!present)
            throw ConfigInvariantError(std::string(what) +
                                       " section required for mode " +
                                       mode_name(cfg.mode));
    };
    switch (cfg.mode) {
        case RunMode::kSimulateFull:
        case RunMode::kSimulateReduced:
            need(cfg.hasMaterial, "material");
            need(cfg.hasDrive, "drive");
            need(cfg.hasProbe, "probe");
            need(cfg.hasGrid, "grid");
            break;
        case RunMode::kFeasibility:
            need(cfg.hasMaterial, "material");
            need(cfg.hasDrive, "drive");
            need(cfg.hasProbe, "probe");
            break;
        case RunMode::kValidate:
            break;
    }
    if (cfg.hasMaterial && cfg.hasGrid) {
        try {
            cfg.grid.validate(cfg.material, cfg.mode == RunMode::kSimulateFull);
        } catch (const std::invalid_argument& e) {
            throw ConfigInvariantError(e.what());
        }
    }
    return cfg;
}

namespace {

class OutputSet {
  public:
    explicit OutputSet(const std::string& dir) : dir_(dir) {
        std::filesystem::create_directories(dir_);
    }
    std::string path(const std::string& name) {
        const std::string p = dir_ + "/" + name;
        written_.push_back(p);
        return p;
    }
    void discard_all() {
        for (const auto& p : written_) std::remove(p.c_str());
    }

  private:
    std::string dir_;
    std::vector<std::string> written_;
};

void write_run_meta(OutputSet& out, const std::string& mode) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["mode"] = mode;
    j["timestamp"] = static_cast<long long>(std::time(nullptr));
    std::ofstream f(out.path("run_meta.json"));
    f << j.dump(2) << "\n";
}

std::vector<cplx> initial_reduced_pulse(const ProbeSpec& probe,
                                        const DriveSchedule& drive, double g2N,
                                        const SimGrid& grid) {
    // The probe is mapped to a compressed in-medium dark polariton centered in
    // the first quarter of the domain.
    const MixingAngle th = mixing_angle(drive.omega(0.0), g2N);
    const double vg = kSpeedOfLight * th.cosT * th.cosT;
    const double width = probe.duration * vg;
    const double z0 = grid.zMin + 0.25 * (grid.zMax - grid.zMin);
    std::vector<cplx> psi(grid.nZ);
    for (int i = 0; i < grid.nZ; ++i) {
        const double z = grid.zMin + (i + 0.5) * grid.dz();
        const double x = (z - z0) / width;
        psi[i] = probe.peakAmplitude / th.cosT * std::exp(-x * x);
    }
    return psi;
}

}  // namespace

int run(const RunConfig& cfg) {
#ifdef _OPENMP
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
#endif
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";

    if (cfg.mode == RunMode::kValidate)
        return run_validation_suite() ? 0 : 1;

    OutputSet out(cfg.outputDir);
    try {
        switch (cfg.mode) {
            case RunMode::kSimulateFull: {
                const Trajectory traj = run_storage_protocol(
                    cfg.material, cfg.drive, cfg.probe, cfg.grid);
                const TrajectoryMetrics metrics = analyze_trajectory(
                    traj, cfg.material, cfg.drive, cfg.probe, cfg.grid);
                if (cfg.writeCsv)
                    write_trajectory_csv(out.path("trajectory.csv"), traj);
                if (cfg.writeJson)
                    write_metrics_json(out.path("metrics.json"), metrics, traj,
                                       "simulate-full");
                write_run_meta(out, "simulate-full");
                std::printf("efficiency (flux) = %.4f\n", metrics.efficiencyFlux);
                if (metrics.efficiencyStored)
                    std::printf("efficiency (stored window) = %.4f\n",
                                *metrics.efficiencyStored);
                for (const auto& f : traj.flags)
                    std::printf("flag: %s\n", f.c_str());
                break;
            }
            case RunMode::kSimulateReduced: {
                const double g2N = collective_cooperativity(cfg.material);
                const auto psi0 = initial_reduced_pulse(cfg.probe, cfg.drive,
                                                        g2N, cfg.grid);
                const ReducedTrajectory traj =
                    evolve_reduced(psi0, cfg.drive, cfg.material, g2N, cfg.grid,
                                   cfg.reducedMethod);
                if (cfg.writeCsv)
                    write_trajectory_csv(out.path("trajectory.csv"), traj,
                                         cfg.drive, g2N);
                if (cfg.writeJson)
                    write_metrics_json(out.path("metrics.json"), traj,
                                       "simulate-reduced");
                write_run_meta(out, "simulate-reduced");
                if (!traj.norm.empty() && traj.norm.front() > 0.0)
                    std::printf("norm ratio = %.4f\n",
                                traj.norm.back() / traj.norm.front());
                for (const auto& f : traj.validityFlags)
                    std::printf("flag: %s\n", f.c_str());
                break;
            }
            case RunMode::kFeasibility: {
                const double g2N = collective_cooperativity(cfg.material);
                const FeasibilityReport rep =
                    feasibility_report(cfg.material, g2N, cfg.drive, cfg.probe);
                if (cfg.writeJson)
                    write_report_json(out.path("feasibility.json"), rep);
                write_run_meta(out, "feasibility");
                std::fputs(format_report_table(rep).c_str(), stdout);
                break;
            }
            case RunMode::kValidate:
                break;
        }
    } catch (const std::exception& e) {
        out.discard_all();
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    }
    return 0;
}

}  // namespace polsim
