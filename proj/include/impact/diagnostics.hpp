#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "impact/contact_geom.hpp"
#include "impact/dynamics.hpp"

namespace impact {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnergyRecord {
  double time = 0.0;
  double kinetic = 0.0;                  // J per unit thickness
  double strain = 0.0;
  double total = 0.0;
  double contact_normal_work_inc = 0.0;  // this step
  double friction_work_inc = 0.0;        // this step, >= 0 when dissipative
  double balance_residual = 0.0;
};

struct PenetrationRecord {
  double time = 0.0;
  double max_penetration = 0.0;  // m, max over contact nodes of [gap]+
};

/// Kinetic, strain and total energy of a state; work terms left at zero.
EnergyRecord discrete_energy(const FiniteElementModel& fem, const SystemState& state);

/// Contact work done over the step prev -> curr, using the multipliers of curr.
struct ContactWork {
  double normal = 0.0;    // sum w lambda_n (gap_n - gap_{n-1})
  double friction = 0.0;  // sum w lambda_t . (u_n - u_{n-1})
};
ContactWork contact_work(const FiniteElementModel& fem, const SystemState& prev, const SystemState& curr);

/// f_ext(t_{n-1/2}) . (u_n - u_{n-1}).
double external_work(const FiniteElementModel& fem, const ExternalLoads& loads, const SystemState& prev,
                      const SystemState& curr);

/// (E_n - E_{n-1}) - external work + normal work + friction work.
double energy_balance_residual(const EnergyRecord& prev, const EnergyRecord& curr, const ContactWork& work,
                               double external);

/// Largest [gap]+ over the contact nodes of one state.
double max_penetration(const SystemState& state);

/// Per-record penetration series and its global maximum.
struct PenetrationSummary {
  std::vector<PenetrationRecord> series;
  double maximum = 0.0;
};
PenetrationSummary max_penetration(const std::vector<SystemState>& states);

/// CSV with columns time,kinetic,strain,total,contact_work,friction_work,
/// balance_residual,max_penetration and 17 significant digits. Rows pair up
/// energy[i] with penetration[i].
void write_energy_csv(const std::vector<EnergyRecord>& energy, const std::vector<PenetrationRecord>& penetration,
                      const std::filesystem::path& path);

/// Parses a file written by write_energy_csv.
void read_energy_csv(const std::filesystem::path& path, std::vector<EnergyRecord>& energy,
                     std::vector<PenetrationRecord>& penetration);

/// One legacy VTK file per frame (frame_00000.vtk, ...) with displacement and
/// contact pressure point data, in the deformed configuration's reference mesh.
void write_vtk_series(const Mesh2D& mesh, const std::vector<SystemState>& frames, const std::filesystem::path& dir);

}  // namespace impact
