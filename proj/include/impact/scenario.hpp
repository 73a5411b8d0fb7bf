#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "impact/config.hpp"
#include "impact/pdas_solver.hpp"

namespace impact {

/// Mesh of the configured geometry, shifted when initial_clearance is set.
Mesh2D build_scenario_mesh(const ScenarioConfig& config);

/// Uniform initial displacement and velocity with the contact state they imply.
SystemState initial_state(const ScenarioConfig& config, const FiniteElementModel& fem);

ContactProblem contact_problem(const ScenarioConfig& config);

struct RunOptions {
  bool write_files = true;
  StepObserver observer;
};

struct RunSummary {
  int nodes = 0;
  int steps = 0;                  // converged steps
  bool completed = false;
  int failed_step = -1;
  std::string failure;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double energy_drift = 0.0;      // (E_final - E_0) / E_0
  double max_energy_deviation = 0.0;  // max_n |E_n - E_0| / E_0
  double max_penetration = 0.0;
  double max_balance_residual = 0.0;  // max_n |r_n| / max(1, E_{n-1})
  double friction_work = 0.0;     // cumulative
  double max_complementarity = 0.0;
  bool all_sets_stable = true;
  int total_outer_iterations = 0;
  int max_outer_iterations = 0;
  double first_contact_time = -1.0;   // first t with positive penetration
  double last_contact_time = -1.0;
  Trajectory trajectory;

  /// 0 on success, 2 when a step failed.
  int exit_code() const { return completed ? 0 : 2; }
};

/// Runs the scenario; with write_files it writes energy.csv, manifest.json and
/// optional VTK frames into config.output_dir. Throws OutputError on I/O failure.
RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

struct SweepRow {
  double value = 0.0;
  RunSummary summary;
};

/// One run per value with output in <output_dir>/<param>_<value>; writes sweep.csv.
std::vector<SweepRow> sweep(const ScenarioConfig& config, const std::string& parameter,
                            const std::vector<double>& values, const RunOptions& options = {});

void write_sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path);

}  // namespace impact
