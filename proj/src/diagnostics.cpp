#include "impact/diagnostics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace impact {

namespace {

constexpr const char* kCsvHeader =
    "time,kinetic,strain,total,contact_work,friction_work,balance_residual,max_penetration";

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

EnergyRecord discrete_energy(const FiniteElementModel& fem, const SystemState& state) {
  EnergyRecord r;
  r.time = state.time;
  r.kinetic = fem.kinetic_energy(state.v);
  r.strain = fem.strain_energy(state.u);
  r.total = r.kinetic + r.strain;
  return r;
}

ContactWork contact_work(const FiniteElementModel& fem, const SystemState& prev, const SystemState& curr) {
  ContactWork w;
  const auto& nodes = fem.mesh().contact_nodes;
  const auto& weights = fem.contact_weights();
  for (std::size_t c = 0; c < nodes.size(); ++c) {
    const NodalContactState& s = curr.contact[c];
    const int n = nodes[c];
    const Vec2 du(curr.u[2 * n] - prev.u[2 * n], curr.u[2 * n + 1] - prev.u[2 * n + 1]);
    w.normal += weights[c] * s.lambda_n * (s.gap_curr - s.gap_prev);
    w.friction += weights[c] * s.lambda_t.dot(du);
  }
  return w;
}

double external_work(const FiniteElementModel& fem, const ExternalLoads& loads, const SystemState& prev,
                     const SystemState& curr) {
  if (!loads.body_force && !loads.traction) return 0.0;
  const double t_mid = 0.5 * (prev.time + curr.time);
  return fem.external_force(loads, t_mid).dot(curr.u - prev.u);
}

double energy_balance_residual(const EnergyRecord& prev, const EnergyRecord& curr, const ContactWork& work,
                               double external) {
  return (curr.total - prev.total) - external + work.normal + work.friction;
}

double max_penetration(const SystemState& state) {
  double m = 0.0;
  for (const auto& s : state.contact) m = std::max(m, positive_part(s.gap_curr));
  return m;
}

PenetrationSummary max_penetration(const std::vector<SystemState>& states) {
  PenetrationSummary out;
  for (const auto& s : states) {
    out.series.push_back({s.time, max_penetration(s)});
    out.maximum = std::max(out.maximum, out.series.back().max_penetration);
  }
  return out;
}

void write_energy_csv(const std::vector<EnergyRecord>& energy, const std::vector<PenetrationRecord>& penetration,
                      const std::filesystem::path& path) {
  if (energy.size() != penetration.size()) throw std::invalid_argument("energy and penetration series differ in length");
  std::ofstream out(path);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < energy.size(); ++i) {
    const EnergyRecord& e = energy[i];
    out << fmt17(e.time) << ',' << fmt17(e.kinetic) << ',' << fmt17(e.strain) << ',' << fmt17(e.total) << ','
        << fmt17(e.contact_normal_work_inc) << ',' << fmt17(e.friction_work_inc) << ',' << fmt17(e.balance_residual)
        << ',' << fmt17(penetration[i].max_penetration) << '\n';
  }
  if (!out) throw OutputError("write failed for " + path.string());
}

void read_energy_csv(const std::filesystem::path& path, std::vector<EnergyRecord>& energy,
                     std::vector<PenetrationRecord>& penetration) {
  std::ifstream in(path);
  if (!in) throw OutputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw OutputError("unexpected header in " + path.string());
  energy.clear();
  penetration.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[8];
    std::istringstream row(line);
    std::string cell;
    for (int i = 0; i < 8; ++i) {
      if (!std::getline(row, cell, ',')) throw OutputError("short row in " + path.string());
      v[i] = std::stod(cell);
    }
    energy.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    penetration.push_back({v[0], v[7]});
  }
}

void write_vtk_series(const Mesh2D& mesh, const std::vector<SystemState>& frames, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create " + dir.string() + ": " + ec.message());

  std::vector<int> slot(mesh.num_nodes(), -1);
  for (std::size_t c = 0; c < mesh.contact_nodes.size(); ++c) slot[mesh.contact_nodes[c]] = static_cast<int>(c);

  for (std::size_t f = 0; f < frames.size(); ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.vtk", f);
    const auto path = dir / name;
    std::ofstream out(path);
    if (!out) throw OutputError("cannot open " + path.string() + " for writing");
    const SystemState& s = frames[f];
    write_vtk(mesh, out);
    out << "POINT_DATA " << mesh.num_nodes() << "\nVECTORS displacement double\n";
    for (int n = 0; n < mesh.num_nodes(); ++n) out << fmt17(s.u[2 * n]) << ' ' << fmt17(s.u[2 * n + 1]) << " 0\n";
    out << "SCALARS contact_pressure double 1\nLOOKUP_TABLE default\n";
    for (int n = 0; n < mesh.num_nodes(); ++n)
      out << fmt17(slot[n] >= 0 && slot[n] < static_cast<int>(s.contact.size()) ? s.contact[slot[n]].lambda_n : 0.0)
          << '\n';
    if (!out) throw OutputError("write failed for " + path.string());
  }
}

}  // namespace impact
