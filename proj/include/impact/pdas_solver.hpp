#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "impact/contact_geom.hpp"
#include "impact/contact_law.hpp"
#include "impact/diagnostics.hpp"
#include "impact/dynamics.hpp"

namespace impact {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ContactProblem {
  RigidFoundation foundation = HalfPlane{};
  NormalLaw law;
  FrictionParams friction;
};

/// Partition of the contact nodes. normal_active[c] is A_nu membership;
/// stick[c] is A_tau membership and only meaningful on A_nu.
struct ActiveSetState {
  std::vector<bool> normal_active;
  std::vector<bool> stick;

  /// Number of nodes whose status (gap / stick / slip) differs.
  int count_changes(const ActiveSetState& other) const;
  ContactStatus status(std::size_t c) const;
  bool operator==(const ActiveSetState& other) const = default;
};

struct SolverConfig {
  double epsilon = 1e-8;     // on the scaled (u, lambda / c_nu) increment
  int max_outer_iters = 50;
  double linear_tol = 1e-8;  // relative residual accepted from the direct solve
};

struct SolverReport {
  int outer_iterations = 0;
  bool converged = false;
  double final_increment_norm = 0.0;
  std::vector<int> set_changes_per_iter;
  /// Largest scaled complementarity function at the returned state.
  double max_complementarity = 0.0;
  /// Classification of the returned state reproduces the sets it was solved with.
  bool sets_stable = false;
};

/// Stick test value mu lambda_n - |c_tau slip_rate|; ties within roundoff count as slip.
bool is_stick(const FrictionParams& fp, const NodalContactState& s);

/// A_nu = {gap >= 0}.
ActiveSetState classify_sets_snc(const std::vector<NodalContactState>& states, const FrictionParams& fp);

/// A_nu = {effective INC gap of (gap_prev, gap_curr) > 0}.
ActiveSetState classify_sets_inc(const std::vector<NodalContactState>& states, double alpha,
                                 const FrictionParams& fp);

ActiveSetState classify_sets(const ContactProblem& problem, const std::vector<NodalContactState>& states);

/// Contact variables of a state recomputed from u: gaps and slip rates only.
/// gap_prev comes from prev.contact[c].gap_curr.
void update_contact_kinematics(const FiniteElementModel& fem, const RigidFoundation& foundation,
                               const SystemState& prev, const Vector& u, double dt,
                               std::vector<NodalContactState>& contact);

/// Contact state of an initial configuration (gap_prev = gap_curr, no multipliers).
std::vector<NodalContactState> initial_contact_state(const FiniteElementModel& fem, const RigidFoundation& foundation,
                                                     const Vector& u);

/// Largest scaled complementarity residual of a state.
double max_complementarity(const ContactProblem& problem, const std::vector<NodalContactState>& states);

struct StepResult {
  SystemState state;
  SolverReport report;
};

/// One time step: classification, one linearized solve and multiplier update
/// per outer iteration until the increment and the sets settle.
StepResult solve_time_step(const FiniteElementModel& fem, const SystemState& prev, const ExternalLoads& loads,
                           const ContactProblem& problem, const SolverConfig& cfg, double dt);

struct TransientConfig {
  double dt = 1e-3;
  double final_time = 1.0;
  /// Keep every state_stride-th state in the trajectory (0 keeps only the first and last).
  int state_stride = 0;
};

struct Trajectory {
  std::vector<SolverReport> reports;        // one per step
  std::vector<EnergyRecord> energy;         // steps + 1, starting at t = 0
  std::vector<PenetrationRecord> penetration;
  std::vector<SystemState> states;          // sampled
  SystemState final_state;
  bool completed = false;
  int failed_step = -1;                     // 1-based step index, -1 when none failed
  std::string failure;
};

using StepObserver = std::function<void(int step, const SystemState& state, const SolverReport& report)>;

/// ceil(T / dt) steps from initial; stops at the first failing step.
Trajectory solve_transient(const FiniteElementModel& fem, const SystemState& initial, const ExternalLoads& loads,
                           const ContactProblem& problem, const SolverConfig& cfg, const TransientConfig& tcfg,
                           const StepObserver& observer = {});

}  // namespace impact
