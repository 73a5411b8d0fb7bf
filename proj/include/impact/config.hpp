#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "impact/contact_law.hpp"
#include "impact/material.hpp"
#include "impact/pdas_solver.hpp"

namespace impact {

/// Collects every violation found while parsing; what() joins them.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct DiskGeometry {
  Vec2 center{100.0, 100.0};
  double radius = 10.0;
};

struct AnnulusGeometry {
  Vec2 center{100.0, 100.0};
  double r_inner = 9.0;
  double r_outer = 10.0;
};

struct ScenarioConfig {
  std::variant<DiskGeometry, AnnulusGeometry> geometry = DiskGeometry{};
  double target_h = 1.0;
  /// When set, the mesh is shifted vertically so its lowest node sits this far above the foundation.
  std::optional<double> initial_clearance;

  MaterialModel material = SvkParams{100e9, 0.35};
  double density = 1000.0;

  double dt = 1e-3;
  double final_time = 2.0;

  Vec2 initial_displacement = Vec2::Zero();
  Vec2 initial_velocity{0.0, -10.0};

  NormalLaw normal_law;
  FrictionParams friction;
  double foundation_height = 0.0;

  SolverConfig solver;

  std::string output_dir = "out";
  int vtk_stride = 0;  // 0 disables VTK frames

  bool operator==(const ScenarioConfig&) const;
};

/// Parses the sectioned key = value format. Throws ConfigError listing every
/// unknown key, missing key and out-of-range value by its section.key path.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// 64-bit FNV-1a of the canonical text.
std::uint64_t config_hash(const ScenarioConfig& config);

/// Names accepted by set_parameter (and the sweep subcommand).
const std::vector<std::string>& sweep_parameters();

/// Overrides one sweepable parameter; throws ConfigError for unknown names or invalid values.
void set_parameter(ScenarioConfig& config, const std::string& name, double value);

}  // namespace impact
