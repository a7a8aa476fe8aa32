#ifndef POLSIM_OUTPUT_HPP_
#define POLSIM_OUTPUT_HPP_

#include <string>

#include "polsim/bloch.hpp"
#include "polsim/feasibility.hpp"
#include "polsim/polariton.hpp"

namespace polsim {

inline constexpr const char* kSchemaVersion = "polsim-output/1";

// One row per sample time per cell: t, z, Re E, Im E, |sigma12bar|,
// |sigma13bar|, sigma33bar.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// Reduced trajectories share the writer; Psi is mapped back to field and
// spin columns through the inverse rotation at each sample time.
void write_trajectory_csv(const std::string& path, const ReducedTrajectory& traj,
                          const DriveSchedule& drive, double g2N);

void write_metrics_json(const std::string& path, const TrajectoryMetrics& metrics,
                        const Trajectory& traj, const std::string& mode);

void write_metrics_json(const std::string& path, const ReducedTrajectory& traj,
                        const std::string& mode);

void write_report_json(const std::string& path, const FeasibilityReport& report);

// Human-readable condition table.
std::string format_report_table(const FeasibilityReport& report);

}  // namespace polsim

#endif  // POLSIM_OUTPUT_HPP_
