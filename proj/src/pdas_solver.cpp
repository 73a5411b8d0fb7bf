#include "impact/pdas_solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

namespace impact {

namespace {

// Relative band in the stick test treated as a tie (assigned to slip).
constexpr double kStickTie = 1e-12;

Vec2 node_vec(const Vector& x, int n) { return Vec2(x[2 * n], x[2 * n + 1]); }

struct NodeRules {
  NormalUpdate normal;
  FrictionUpdate friction;
};

}  // namespace

int ActiveSetState::count_changes(const ActiveSetState& other) const {
  int n = 0;
  for (std::size_t c = 0; c < normal_active.size(); ++c) n += status(c) != other.status(c);
  return n;
}

ContactStatus ActiveSetState::status(std::size_t c) const {
  if (!normal_active[c]) return ContactStatus::Gap;
  return stick[c] ? ContactStatus::Stick : ContactStatus::Slip;
}

bool is_stick(const FrictionParams& fp, const NodalContactState& s) {
  const double bound = fp.mu * s.lambda_n;
  const double trial = fp.c_tau * s.slip_rate.norm();
  return bound - trial > kStickTie * std::max(bound, trial);
}

ActiveSetState classify_sets_snc(const std::vector<NodalContactState>& states, const FrictionParams& fp) {
  ActiveSetState sets;
  for (const auto& s : states) {
    const bool active = s.gap_curr >= 0.0;
    sets.normal_active.push_back(active);
    sets.stick.push_back(active && is_stick(fp, s));
  }
  return sets;
}

ActiveSetState classify_sets_inc(const std::vector<NodalContactState>& states, double alpha,
                                 const FrictionParams& fp) {
  ActiveSetState sets;
  for (const auto& s : states) {
    const bool active = inc_effective_gap(alpha, s.gap_prev, s.gap_curr) > 0.0;
    sets.normal_active.push_back(active);
    sets.stick.push_back(active && is_stick(fp, s));
  }
  return sets;
}

ActiveSetState classify_sets(const ContactProblem& problem, const std::vector<NodalContactState>& states) {
  return problem.law.kind == NormalLawKind::SNC ? classify_sets_snc(states, problem.friction)
                                                : classify_sets_inc(states, problem.law.alpha, problem.friction);
}

void update_contact_kinematics(const FiniteElementModel& fem, const RigidFoundation& foundation,
                               const SystemState& prev, const Vector& u, double dt,
                               std::vector<NodalContactState>& contact) {
  const auto& nodes = fem.mesh().contact_nodes;
  const Vec2 normal = foundation_normal(foundation);
  contact.resize(nodes.size());
  for (std::size_t c = 0; c < nodes.size(); ++c) {
    const int n = nodes[c];
    contact[c].gap_prev = prev.contact[c].gap_curr;
    contact[c].gap_curr = gap(foundation, fem.mesh().nodes[n] + node_vec(u, n));
    contact[c].slip_rate = tangential_velocity((node_vec(u, n) - node_vec(prev.u, n)) / dt, normal);
  }
}

std::vector<NodalContactState> initial_contact_state(const FiniteElementModel& fem, const RigidFoundation& foundation,
                                                     const Vector& u) {
  std::vector<NodalContactState> out;
  for (int n : fem.mesh().contact_nodes) {
    NodalContactState s;
    s.gap_curr = s.gap_prev = gap(foundation, fem.mesh().nodes[n] + node_vec(u, n));
    s.status = s.gap_curr > 0.0 ? ContactStatus::Slip : ContactStatus::Gap;
    out.push_back(s);
  }
  return out;
}

double max_complementarity(const ContactProblem& problem, const std::vector<NodalContactState>& states) {
  const NormalLaw& law = problem.law;
  const FrictionParams& fp = problem.friction;
  double worst = 0.0;
  for (const auto& s : states) {
    const double cn = normal_complementarity(law, s.lambda_n, s.gap_prev, s.gap_curr) / law.c_nu;
    const double scale = law.c_nu * std::max({fp.mu * s.lambda_n, fp.c_tau * s.slip_rate.norm(), 1.0});
    const double ct = friction_complementarity(fp, s.lambda_n, s.slip_rate, s.lambda_t).norm() / scale;
    worst = std::max({worst, std::abs(cn), ct});
  }
  return worst;
}

StepResult solve_time_step(const FiniteElementModel& fem, const SystemState& prev, const ExternalLoads& loads,
                           const ContactProblem& problem, const SolverConfig& cfg, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const auto& nodes = fem.mesh().contact_nodes;
  const auto& weights = fem.contact_weights();
  const std::size_t nc = nodes.size();
  const Vec2 normal = foundation_normal(problem.foundation);
  const Eigen::Matrix2d tangent_proj = Mat2::Identity() - normal * normal.transpose();
  const NormalLaw& law = problem.law;
  const FrictionParams& fp = problem.friction;

  StepResult result;
  SystemState& st = result.state;
  SolverReport& report = result.report;
  st.time = prev.time + dt;
  st.u = prev.u + dt * prev.v;
  for (int dof : fem.constrained_dofs()) st.u[dof] = prev.u[dof];

  // Warm start: multipliers from the previous step, kinematics from the predictor.
  st.contact = prev.contact;
  update_contact_kinematics(fem, problem.foundation, prev, st.u, dt, st.contact);

  ActiveSetState previous_sets;
  for (const auto& s : prev.contact) {
    previous_sets.normal_active.push_back(s.status != ContactStatus::Gap);
    previous_sets.stick.push_back(s.status == ContactStatus::Stick);
  }

  Eigen::SparseLU<SparseMatrix> lu;
  bool pattern_ready = false;
  std::vector<NodeRules> rules(nc);
  ContactForces forces(nc);
  ContactLinearization lin(nc);

  for (int k = 0; k < cfg.max_outer_iters; ++k) {
    ActiveSetState sets = classify_sets(problem, st.contact);
    // A slip node whose rate now opposes the direction it was just given has
    // overshot through zero; Coulomb monotonicity puts the solution in stick.
    if (k > 0)
      for (std::size_t c = 0; c < nc; ++c)
        if (sets.normal_active[c] && !sets.stick[c] && fp.mu > 0.0 &&
            rules[c].friction.status == ContactStatus::Slip &&
            st.contact[c].slip_rate.dot(rules[c].friction.direction) < 0.0)
          sets.stick[c] = true;
    report.set_changes_per_iter.push_back(sets.count_changes(previous_sets));

    for (std::size_t c = 0; c < nc; ++c) {
      const NodalContactState& s = st.contact[c];
      NodeRules& r = rules[c];
      if (!sets.normal_active[c]) {
        r.normal = NormalUpdate{};
        r.friction = FrictionUpdate{};
        forces[c].setZero();
        lin[c].setZero();
        continue;
      }
      r.normal = law.kind == NormalLawKind::SNC ? snc_newton_update(law, s.gap_curr)
                                                : inc_newton_update(law, s.gap_curr, s.gap_prev);
      // Classification decides activity; the rule must follow it even at the boundary.
      r.normal.active = true;
      r.friction = friction_newton_update(fp, sets.stick[c], s.slip_rate);
      const double w = weights[c];
      const double ln = r.normal.pressure;
      forces[c] = w * (ln * normal + r.friction.evaluate(ln, s.slip_rate));
      Mat2 block = r.normal.slope * normal * normal.transpose();
      if (r.friction.status == ContactStatus::Stick)
        block += (fp.c_tau / dt) * tangent_proj;
      else
        block += fp.mu * r.normal.slope * r.friction.direction * normal.transpose();
      lin[c] = w * block;
    }

    const Vector residual = assemble_residual(fem, prev, st.u, loads, forces, dt);
    const SparseMatrix K = assemble_tangent(fem, prev, st.u, lin, dt);
    if (!pattern_ready) {
      lu.analyzePattern(K);
      pattern_ready = true;
    }
    lu.factorize(K);
    if (lu.info() != Eigen::Success) throw SolverError("singular tangent: " + lu.lastErrorMessage());
    const Vector du = lu.solve(-residual);
    if (lu.info() != Eigen::Success || !du.allFinite()) throw SolverError("linear solve failed");
    const double rnorm = residual.norm();
    if (rnorm > 0.0 && (K * du + residual).norm() > cfg.linear_tol * rnorm)
      throw SolverError("linear solve residual above tolerance");

    st.u += du;
    std::vector<NodalContactState> next = st.contact;
    update_contact_kinematics(fem, problem.foundation, prev, st.u, dt, next);
    double inc_sq = du.squaredNorm();
    for (std::size_t c = 0; c < nc; ++c) {
      NodalContactState& s = next[c];
      s.lambda_n = rules[c].normal.evaluate(s.gap_curr);
      s.lambda_t = rules[c].normal.active ? rules[c].friction.evaluate(s.lambda_n, s.slip_rate) : Vec2::Zero();
      s.status = sets.status(c);
      const double dln = s.lambda_n - st.contact[c].lambda_n;
      const Vec2 dlt = s.lambda_t - st.contact[c].lambda_t;
      inc_sq += (dln * dln + dlt.squaredNorm()) / (law.c_nu * law.c_nu);
    }
    st.contact = std::move(next);
    report.outer_iterations = k + 1;
    report.final_increment_norm = std::sqrt(inc_sq);
    previous_sets = sets;

    if (report.final_increment_norm <= cfg.epsilon) {
      const ActiveSetState check = classify_sets(problem, st.contact);
      if (check == sets) {
        report.converged = true;
        report.sets_stable = true;
        break;
      }
    }
  }

  st.v = midpoint_velocity_update(prev.u, prev.v, st.u, dt);
  report.max_complementarity = max_complementarity(problem, st.contact);
  return result;
}

Trajectory solve_transient(const FiniteElementModel& fem, const SystemState& initial, const ExternalLoads& loads,
                           const ContactProblem& problem, const SolverConfig& cfg, const TransientConfig& tcfg,
                           const StepObserver& observer) {
  if (!(tcfg.dt > 0.0) || !(tcfg.final_time >= tcfg.dt)) throw std::invalid_argument("need dt > 0 and T >= dt");
  const int steps = static_cast<int>(std::ceil(tcfg.final_time / tcfg.dt - 1e-9));

  Trajectory traj;
  SystemState current = initial;
  if (current.contact.size() != fem.mesh().contact_nodes.size())
    current.contact = initial_contact_state(fem, problem.foundation, current.u);
  traj.energy.push_back(discrete_energy(fem, current));
  traj.penetration.push_back({current.time, max_penetration(current)});
  traj.states.push_back(current);

  for (int n = 1; n <= steps; ++n) {
    // The last step is truncated so the run ends exactly at T.
    const double dt = std::min(tcfg.dt, tcfg.final_time - current.time);
    StepResult step;
    try {
      step = solve_time_step(fem, current, loads, problem, cfg, dt > 0.0 ? dt : tcfg.dt);
    } catch (const std::exception& e) {
      traj.failed_step = n;
      traj.failure = "step " + std::to_string(n) + ": " + e.what();
      break;
    }
    traj.reports.push_back(step.report);
    if (!step.report.converged) {
      traj.failed_step = n;
      traj.failure = "step " + std::to_string(n) + ": no convergence after " +
                     std::to_string(step.report.outer_iterations) + " outer iterations";
      break;
    }
    EnergyRecord rec = discrete_energy(fem, step.state);
    const ContactWork work = contact_work(fem, current, step.state);
    rec.contact_normal_work_inc = work.normal;
    rec.friction_work_inc = work.friction;
    rec.balance_residual = energy_balance_residual(traj.energy.back(), rec, work, external_work(fem, loads, current, step.state));
    traj.energy.push_back(rec);
    traj.penetration.push_back({step.state.time, max_penetration(step.state)});
    if (observer) observer(n, step.state, step.report);
    current = std::move(step.state);
    if (tcfg.state_stride > 0 && n % tcfg.state_stride == 0) traj.states.push_back(current);
  }
  traj.completed = traj.failed_step < 0;
  if (traj.completed && (tcfg.state_stride <= 0 || steps % tcfg.state_stride != 0)) traj.states.push_back(current);
  traj.final_state = std::move(current);
  return traj;
}

}  // namespace impact
