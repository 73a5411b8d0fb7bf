#include "impact/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#ifndef IMPACT_VERSION
#define IMPACT_VERSION "unknown"
#endif

namespace impact {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string value_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_manifest(const ScenarioConfig& config, const RunSummary& s, const std::string& started,
                    const std::filesystem::path& dir) {
  nlohmann::json j;
  j["config_hash"] = hex(config_hash(config));
  j["code_version"] = IMPACT_VERSION;
  j["start_time"] = started;
  j["end_time"] = utc_now();
  j["nodes"] = s.nodes;
  j["steps_converged"] = s.steps;
  j["completed"] = s.completed;
  if (!s.completed) {
    j["failed_step"] = s.failed_step;
    j["failure"] = s.failure;
  }
  j["total_outer_iterations"] = s.total_outer_iterations;
  j["max_outer_iterations"] = s.max_outer_iterations;
  j["initial_energy"] = s.initial_energy;
  j["final_energy"] = s.final_energy;
  j["energy_drift"] = s.energy_drift;
  j["max_penetration"] = s.max_penetration;
  j["max_balance_residual"] = s.max_balance_residual;
  j["friction_work"] = s.friction_work;
  j["max_complementarity"] = s.max_complementarity;
  j["all_sets_stable"] = s.all_sets_stable;

  // Per-step iteration counts keep the file compact for long runs.
  auto& its = j["outer_iterations_per_step"] = nlohmann::json::array();
  for (const auto& r : s.trajectory.reports) its.push_back(r.outer_iterations);

  const auto tmp = dir / "manifest.json.tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw OutputError("cannot open " + tmp.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw OutputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, dir / "manifest.json", ec);
  if (ec) throw OutputError("cannot move manifest into place in " + dir.string() + ": " + ec.message());
}

}  // namespace

Mesh2D build_scenario_mesh(const ScenarioConfig& config) {
  Mesh2D mesh = std::visit(
      [&](const auto& g) -> Mesh2D {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, DiskGeometry>)
          return build_disk_mesh(g.center, g.radius, config.target_h);
        else
          return build_annulus_mesh(g.center, g.r_inner, g.r_outer, config.target_h);
      },
      config.geometry);
  if (config.initial_clearance) {
    double lowest = mesh.nodes.front().y();
    for (const auto& p : mesh.nodes) lowest = std::min(lowest, p.y());
    mesh.translate(Vec2(0.0, config.foundation_height + *config.initial_clearance - lowest));
  }
  return mesh;
}

ContactProblem contact_problem(const ScenarioConfig& config) {
  ContactProblem p;
  p.foundation = HalfPlane{config.foundation_height, Vec2(0.0, -1.0)};
  p.law = config.normal_law;
  p.friction = config.friction;
  return p;
}

SystemState initial_state(const ScenarioConfig& config, const FiniteElementModel& fem) {
  SystemState s;
  const int n = fem.mesh().num_nodes();
  s.u.resize(2 * n);
  s.v.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    s.u.segment<2>(2 * i) = config.initial_displacement;
    s.v.segment<2>(2 * i) = config.initial_velocity;
  }
  s.contact = initial_contact_state(fem, contact_problem(config).foundation, s.u);
  return s;
}

RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const std::string started = utc_now();
  const Mesh2D mesh = build_scenario_mesh(config);
  const FiniteElementModel fem(mesh, config.material, config.density);
  const ContactProblem problem = contact_problem(config);
  const ExternalLoads loads;  // both benchmarks are load free

  TransientConfig tcfg;
  tcfg.dt = config.dt;
  tcfg.final_time = config.final_time;
  tcfg.state_stride = options.write_files ? config.vtk_stride : 0;

  RunSummary s;
  s.nodes = mesh.num_nodes();
  s.trajectory = solve_transient(fem, initial_state(config, fem), loads, problem, config.solver, tcfg, options.observer);
  const Trajectory& t = s.trajectory;

  s.completed = t.completed;
  s.failed_step = t.failed_step;
  s.failure = t.failure;
  s.steps = static_cast<int>(t.energy.size()) - 1;
  s.initial_energy = t.energy.front().total;
  s.final_energy = t.energy.back().total;
  const double e0 = s.initial_energy;
  const double scale = e0 != 0.0 ? std::abs(e0) : 1.0;
  s.energy_drift = (s.final_energy - e0) / scale;
  for (std::size_t i = 0; i < t.energy.size(); ++i) {
    s.max_energy_deviation = std::max(s.max_energy_deviation, std::abs(t.energy[i].total - e0) / scale);
    s.friction_work += t.energy[i].friction_work_inc;
    if (i > 0)
      s.max_balance_residual = std::max(s.max_balance_residual, std::abs(t.energy[i].balance_residual) /
                                                                     std::max(1.0, t.energy[i - 1].total));
    const double pen = t.penetration[i].max_penetration;
    s.max_penetration = std::max(s.max_penetration, pen);
    if (pen > 0.0) {
      if (s.first_contact_time < 0.0) s.first_contact_time = t.penetration[i].time;
      s.last_contact_time = t.penetration[i].time;
    }
  }
  for (const auto& r : t.reports) {
    if (!r.converged) continue;
    s.total_outer_iterations += r.outer_iterations;
    s.max_outer_iterations = std::max(s.max_outer_iterations, r.outer_iterations);
    s.max_complementarity = std::max(s.max_complementarity, r.max_complementarity);
    s.all_sets_stable = s.all_sets_stable && r.sets_stable;
  }

  if (options.write_files) {
    const std::filesystem::path dir(config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create " + dir.string() + ": " + ec.message());
    write_energy_csv(t.energy, t.penetration, dir / "energy.csv");
    if (config.vtk_stride > 0) write_vtk_series(mesh, t.states, dir / "vtk");
    write_manifest(config, s, started, dir);
  }
  return s;
}

std::vector<SweepRow> sweep(const ScenarioConfig& config, const std::string& parameter,
                            const std::vector<double>& values, const RunOptions& options) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    ScenarioConfig c = config;
    set_parameter(c, parameter, v);
    c.output_dir = (std::filesystem::path(config.output_dir) / (parameter + "_" + value_label(v))).string();
    rows.push_back({v, run_scenario(c, options)});
  }
  if (options.write_files) {
    std::filesystem::create_directories(config.output_dir);
    write_sweep_csv(parameter, rows, std::filesystem::path(config.output_dir) / "sweep.csv");
  }
  return rows;
}

void write_sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << parameter
      << ",completed,max_penetration,final_energy_drift,max_energy_deviation,friction_work,total_outer_iterations\n";
  char buf[256];
  for (const auto& r : rows) {
    const RunSummary& s = r.summary;
    std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%d\n", r.value, s.completed ? 1 : 0,
                  s.max_penetration, s.energy_drift, s.max_energy_deviation, s.friction_work,
                  s.total_outer_iterations);
    out << buf;
  }
  if (!out) throw OutputError("write failed for " + path.string());
}

}  // namespace impact
