#ifndef POLSIM_FEASIBILITY_HPP_
#define POLSIM_FEASIBILITY_HPP_

#include <string>
#include <vector>

#include "polsim/core.hpp"

namespace polsim {

struct ConditionEntry {
    std::string name;
    std::string formulaId;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // lhs/rhs (or as documented per condition)
    bool pass = false;
    bool required = true;
};

struct FeasibilityReport {
    std::vector<ConditionEntry> conditions;
    double vGmin = 0.0;            // m/s
    double GammaEIT = 0.0;         // rad/s at Omega0
    double eta = 0.0;              // suppression factor at the drive's k
    double fieldRatioK = 0.0;
    double intensity0 = 0.0;       // W/m^2 at Omega0
    double intensityTau = 0.0;     // W/m^2 at Omega(tau)
    double zStopNaive = 0.0;       // m
    double zStopSlowEntry = 0.0;   // m
    double tauMin = 0.0;           // s
    double storageTimeW12 = 0.0;   // s
    double storageTimeGamma12 = 0.0;
    double g2N = 0.0;
    bool verdict = false;
    std::vector<std::string> flags;
};

// "much greater" operationalized as a ratio of 100, "at least of order" as 1.
inline constexpr double kMuchGreaterFactor = 100.0;

// Power condition, collective dominance, and the slow-entry window.
std::vector<ConditionEntry> evaluate_conditions(const MaterialSpec& m, double g2N,
                                                double Omega0, double OmegaTau);

// EIT transparency window Gamma_EIT = Omega^2 / W13.
double transparency_window(double Omega, double W13);

struct NonadiabaticBounds {
    double tauMin = 0.0;     // s, minimum ramp time for a linear ramp
    double zPrinted = 0.0;   // g2N / (gamma13 Lp^2), reported verbatim
    bool extrapolated = false;  // k outside the stated 1 < k <= 10 range
};
// k is the final-field ratio Omega(tau)/sqrt(W12 W13), Lp the compressed
// pulse length. The printed z bound is dimensionally inconsistent; the
// normative medium-length check is the bandwidth condition carried in
// feasibility_report.
NonadiabaticBounds nonadiabatic_bounds(const MaterialSpec& m, double g2N,
                                       double Omega0, double k, double Lp);

// eta = exp[(3 + 2k^2)/(1 + k^2)^2 + 2 ln(k^2/(1 + k^2))].
double suppression_factor(double k);

enum class StoppingRegime { kNaive, kSlowEntry };
// Naive: c tau. Slow entry: Omega0^2 c tau / (3 g2N).
double stopping_distance(double Omega0, double g2N, double tau,
                         StoppingRegime regime);

struct StorageTimeLimits {
    double tW12 = 0.0;      // 1/W12, ensemble dephasing limit
    double tGamma12 = 0.0;  // 1/gamma12, homogeneous limit
    double practical = 0.0; // min of the two
};
StorageTimeLimits storage_time_limit(const MaterialSpec& m);

FeasibilityReport feasibility_report(const MaterialSpec& m, double g2N,
                                     const DriveSchedule& drive,
                                     const ProbeSpec& probe);

struct MaterialPreset {
    MaterialSpec material;
    std::string provenance;
};

const std::vector<MaterialPreset>& material_presets();
const MaterialPreset& material_preset(const std::string& name);

}  // namespace polsim

#endif  // POLSIM_FEASIBILITY_HPP_
