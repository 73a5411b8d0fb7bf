#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "impact/pdas_solver.hpp"
#include "surrogate.hpp"

using namespace impact;

namespace {

NodalContactState node(double gap_prev, double gap_curr, double ln = 0.0, Vec2 lt = Vec2::Zero(),
                       Vec2 rate = Vec2::Zero()) {
  NodalContactState s;
  s.gap_prev = gap_prev;
  s.gap_curr = gap_curr;
  s.lambda_n = ln;
  s.lambda_t = lt;
  s.slip_rate = rate;
  return s;
}

SystemState uniform_state(const FiniteElementModel& fem, const RigidFoundation& f, Vec2 velocity) {
  SystemState s;
  s.u = Vector::Zero(fem.num_dofs());
  s.v = Vector::Zero(fem.num_dofs());
  for (int n = 0; n < fem.mesh().num_nodes(); ++n) s.v.segment<2>(2 * n) = velocity;
  s.contact = initial_contact_state(fem, f, s.u);
  return s;
}

}  // namespace

TEST_CASE("SNC classification") {
  const FrictionParams fp{0.0, 1.0};
  auto sets = classify_sets_snc({node(0, -0.1), node(0, -1e-3)}, fp);
  CHECK(sets.normal_active == std::vector<bool>{false, false});
  sets = classify_sets_snc({node(0, 0.0)}, fp);
  CHECK(sets.normal_active[0]);
}

TEST_CASE("mu = 0 puts every active node in slip with zero tangential traction") {
  // Hand trace: tau = mu lambda_n - |c_tau v| = 0 - |v| <= 0, a slip (tie) for
  // every node; the slip rule then gives lambda_t = 0 * lambda_n * t = 0.
  const FrictionParams fp{0.0, 5.0};
  const auto sets = classify_sets_snc({node(0, 0.1, 3.0), node(0, 0.2, 4.0, Vec2::Zero(), Vec2(1, 0))}, fp);
  CHECK(sets.status(0) == ContactStatus::Slip);
  CHECK(sets.status(1) == ContactStatus::Slip);
  FrictionUpdate f = friction_newton_update(fp, sets.stick[1], Vec2(1, 0));
  CHECK(f.evaluate(4.0, Vec2(2, 0)).norm() == 0.0);
}

TEST_CASE("stick and slip classification with friction") {
  const FrictionParams fp{0.5, 10.0};
  const auto sets = classify_sets_snc({node(0, 0.1, 4.0, Vec2::Zero(), Vec2(0.1, 0)),
                                       node(0, 0.1, 4.0, Vec2::Zero(), Vec2(0.3, 0))},
                                      fp);
  CHECK(sets.status(0) == ContactStatus::Stick);  // 2 - 1 > 0
  CHECK(sets.status(1) == ContactStatus::Slip);   // 2 - 3 < 0
}

TEST_CASE("INC classification uses the effective gap") {
  const FrictionParams fp{0.0, 1.0};
  const auto sets = classify_sets_inc({node(0.02, -0.005), node(-0.1, -0.2), node(0.01, 0.01)}, 2.0, fp);
  CHECK(inc_effective_gap(2.0, 0.02, -0.005) > 0.0);
  CHECK(sets.normal_active == std::vector<bool>{true, false, true});
}

TEST_CASE("free flight converges in one iteration and is exact") {
  const Mesh2D m = build_disk_mesh(Vec2(0, 5), 1.0, 0.4);
  const FiniteElementModel fem(m, SvkParams{1e3, 0.3}, 1.0);
  ContactProblem problem;
  const SystemState s0 = uniform_state(fem, problem.foundation, Vec2(0.5, -1.0));
  const StepResult r = solve_time_step(fem, s0, {}, problem, {}, 0.01);
  CHECK(r.report.converged);
  CHECK(r.report.outer_iterations == 1);

  TransientConfig tc{0.01, 0.03, 0};
  const Trajectory t = solve_transient(fem, s0, {}, problem, {}, tc);
  REQUIRE(t.completed);
  CHECK(t.reports.size() == 3);
  CHECK(t.energy.size() == 4);
  CHECK((t.final_state.u - (s0.u + 0.03 * s0.v)).norm() < 1e-12);
}

TEST_CASE("single-node surrogate matches a scalar brute-force solve") {
  testing::Surrogate sur;
  const FiniteElementModel fem(sur.mesh, sur.material, sur.density);
  ContactProblem problem;
  problem.law = {NormalLawKind::SNC, 1e4, 3.0};
  const double dt = 0.01;

  SystemState s0;
  s0.u = Vector::Zero(6);
  s0.v = Vector::Zero(6);
  s0.contact = initial_contact_state(fem, problem.foundation, s0.u);
  const StepResult r = solve_time_step(fem, s0, {}, problem, {}, dt);
  REQUIRE(r.report.converged);
  CHECK(std::abs(r.state.u[2]) < 1e-14);  // symmetry

  // Independent scalar residual in the vertical displacement y of node 1:
  // inertia + discrete-gradient internal force - contact push, bisected.
  const Mesh2D& m = sur.mesh;
  const double area = m.signed_area(0);
  const double m11 = sur.density * area / 6.0;
  const double w = boundary_weights(m)[1].weight;
  auto strain_energy = [&](double y) {
    Mat2 F = Mat2::Identity();
    // Only node 1 moves: F = I + e_y (grad N1)^T with grad N1 = (0, -2) / (2 area) scaled by y.
    const Vec2 g1(m.nodes[2].y() - m.nodes[0].y(), m.nodes[0].x() - m.nodes[2].x());
    F.row(1) += y * g1.transpose() / (2 * area);
    return area * energy_density(sur.material, F.transpose() * F);
  };
  auto scalar_residual = [&](double y) {
    const double inertia = m11 * 2.0 * y / (dt * dt);
    const double internal = y == 0.0 ? 0.0 : (strain_energy(y) - strain_energy(0.0)) / y;
    const double g = -(sur.tip_height + y);
    return inertia + internal - w * snc_pressure(problem.law, g);
  };
  double lo = 0.0, hi = 0.05;
  REQUIRE(scalar_residual(lo) < 0.0);
  REQUIRE(scalar_residual(hi) > 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (scalar_residual(mid) < 0.0 ? lo : hi) = mid;
  }
  const double y = 0.5 * (lo + hi);
  CHECK(std::abs(r.state.u[3] - y) <= 1e-10);
  const double g = -(sur.tip_height + y);
  CHECK(std::abs(r.state.contact[1].lambda_n - snc_pressure(problem.law, g)) <= 1e-10 * std::max(1.0, snc_pressure(problem.law, g)));
}

TEST_CASE("mirrored problem gives a mirrored trajectory") {
  // The disk triangulation is not mirror symmetric, so build the reflected mesh explicitly.
  const Mesh2D m = build_disk_mesh(Vec2(0, 1.05), 1.0, 0.35);
  Mesh2D r = m;
  for (auto& p : r.nodes) p.x() = -p.x();
  for (auto& t : r.triangles) std::swap(t[1], t[2]);
  for (auto& e : r.boundary_edges) std::swap(e.nodes[0], e.nodes[1]);
  REQUIRE(validate(r).ok());

  ContactProblem problem;
  problem.law = {NormalLawKind::INC, 1e5, 2.0};
  problem.friction = {0.3, 1e3};
  const TransientConfig tc{0.005, 0.1, 0};
  const FiniteElementModel fa(m, SvkParams{2e3, 0.3}, 1.0);
  const FiniteElementModel fb(r, SvkParams{2e3, 0.3}, 1.0);
  const Trajectory a = solve_transient(fa, uniform_state(fa, problem.foundation, Vec2(0.7, -1.0)), {}, problem, {}, tc);
  const Trajectory b = solve_transient(fb, uniform_state(fb, problem.foundation, Vec2(-0.7, -1.0)), {}, problem, {}, tc);
  INFO(a.failure, " | ", b.failure);
  REQUIRE(a.completed);
  REQUIRE(b.completed);
  CHECK(a.penetration.back().max_penetration == doctest::Approx(b.penetration.back().max_penetration).epsilon(1e-8));
  CHECK(a.energy.back().total == doctest::Approx(b.energy.back().total).epsilon(1e-9));

  double worst = 0.0;
  for (int i = 0; i < m.num_nodes(); ++i) {
    worst = std::max(worst, std::abs(a.final_state.u[2 * i] + b.final_state.u[2 * i]));
    worst = std::max(worst, std::abs(a.final_state.u[2 * i + 1] - b.final_state.u[2 * i + 1]));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("momentum is conserved without contact or loads") {
  const Mesh2D m = build_disk_mesh(Vec2(0, 10), 1.0, 0.3);
  const FiniteElementModel fem(m, OgdenParams{0.5, 5e-3, 0.35}, 1.0);
  ContactProblem problem;
  SystemState s = uniform_state(fem, problem.foundation, Vec2(0.2, 0.1));
  for (int n = 0; n < m.num_nodes(); ++n) {
    const Vec2 r = m.nodes[n] - Vec2(0, 10);
    s.v.segment<2>(2 * n) += 0.8 * Vec2(-r.y(), r.x()) + 0.1 * r;  // spin plus expansion
  }
  const Vector p0 = fem.mass() * s.v;
  const Trajectory t = solve_transient(fem, s, {}, problem, {}, {0.01, 0.2, 0});
  REQUIRE(t.completed);
  const Vector p1 = fem.mass() * t.final_state.v;
  Vec2 P0 = Vec2::Zero(), P1 = Vec2::Zero();
  for (int n = 0; n < m.num_nodes(); ++n) {
    P0 += p0.segment<2>(2 * n);
    P1 += p1.segment<2>(2 * n);
  }
  CHECK((P1 - P0).norm() <= 1e-8 * std::max(1.0, P0.norm()));
}

TEST_CASE("contact step converges with stable sets and small complementarity") {
  const Mesh2D m = build_disk_mesh(Vec2(0, 1.02), 1.0, 0.3);
  const FiniteElementModel fem(m, SvkParams{2e3, 0.3}, 1.0);
  for (auto kind : {NormalLawKind::SNC, NormalLawKind::INC}) {
    ContactProblem problem;
    problem.law = {kind, 1e5, 2.0};
    problem.friction = {0.2, 1e3};
    const SolverConfig cfg;
    const Trajectory t = solve_transient(fem, uniform_state(fem, problem.foundation, Vec2(1.0, -1.0)), {}, problem, cfg,
                                         {0.005, 0.15, 0});
    REQUIRE(t.completed);
    bool touched = false;
    for (const auto& p : t.penetration) touched = touched || p.max_penetration > 0.0;
    CHECK(touched);
    for (const auto& r : t.reports) {
      CHECK(r.sets_stable);
      CHECK(r.max_complementarity <= 10 * cfg.epsilon);
    }
  }
}

TEST_CASE("non-convergence is reported, not hidden") {
  const Mesh2D m = build_disk_mesh(Vec2(0, 1.0), 1.0, 0.3);
  const FiniteElementModel fem(m, SvkParams{2e3, 0.3}, 1.0);
  ContactProblem problem;
  problem.law = {NormalLawKind::SNC, 1e7, 3.0};
  SolverConfig cfg;
  cfg.max_outer_iters = 1;
  const Trajectory t =
      solve_transient(fem, uniform_state(fem, problem.foundation, Vec2(0, -5.0)), {}, problem, cfg, {0.01, 0.1, 0});
  CHECK_FALSE(t.completed);
  CHECK(t.failed_step >= 1);
  CHECK(t.failure.find("step") != std::string::npos);
}
