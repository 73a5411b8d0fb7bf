// Command line driver: run, sweep and validate scenario configs.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "impact/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kSolverFailure = 2, kIoError = 3 };

// Output directory precedence: --out, then IMPACT_OUT_DIR, then the config.
void apply_output_override(impact::ScenarioConfig& config, const std::string& out_flag) {
  if (!out_flag.empty()) {
    config.output_dir = out_flag;
  } else if (const char* env = std::getenv("IMPACT_OUT_DIR"); env && *env) {
    config.output_dir = env;
  }
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    while (pos < item.size() && item[pos] == ' ') ++pos;
    if (pos == 0 || pos != item.size()) throw impact::ConfigError({"--values: '" + item + "' is not a number"});
    out.push_back(v);
  }
  if (out.empty()) throw impact::ConfigError({"--values: empty list"});
  return out;
}

void print_summary(const impact::RunSummary& s) {
  std::printf("nodes %d, steps %d, outer iterations %d (max %d per step)\n", s.nodes, s.steps,
              s.total_outer_iterations, s.max_outer_iterations);
  std::printf("E0 %.10g  E_final %.10g  drift %.3e  max |E-E0|/E0 %.3e\n", s.initial_energy, s.final_energy,
              s.energy_drift, s.max_energy_deviation);
  std::printf("max penetration %.3e m, friction work %.6g J, max balance residual %.3e\n", s.max_penetration,
              s.friction_work, s.max_balance_residual);
  if (!s.completed) std::printf("FAILED: %s\n", s.failure.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D frictional impact simulator (midpoint energy-conserving scheme, INC/SNC contact)"};
  app.require_subcommand(1);

  std::string config_path, out_dir, param, values;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--config", config_path, "Scenario config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides IMPACT_OUT_DIR and the config)");
  run->add_flag("--quiet", quiet, "Suppress progress output");

  auto* sw = app.add_subcommand("sweep", "Run a scenario for several values of one parameter");
  sw->add_option("--config", config_path, "Scenario config file")->required();
  sw->add_option("--out", out_dir, "Output directory");
  sw->add_option("--param", param, "c_nu | alpha | dt | target_h | mu")->required();
  sw->add_option("--values", values, "Comma separated values")->required();
  sw->add_flag("--quiet", quiet, "Suppress progress output");

  auto* val = app.add_subcommand("validate", "Parse and check a config, then build and check its mesh");
  val->add_option("--config", config_path, "Scenario config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  impact::ScenarioConfig config;
  try {
    config = impact::load_config(config_path);
    apply_output_override(config, out_dir);
  } catch (const impact::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (val->parsed()) {
      const impact::Mesh2D mesh = impact::build_scenario_mesh(config);
      const auto report = impact::validate(mesh);
      for (const auto& issue : report.issues) std::cerr << "mesh: " << issue << '\n';
      if (!report.ok()) return kConfigError;
      std::printf("config ok: %d nodes, %d triangles, %zu contact nodes, hash %016llx\n", mesh.num_nodes(),
                  mesh.num_triangles(), mesh.contact_nodes.size(),
                  static_cast<unsigned long long>(impact::config_hash(config)));
      return kOk;
    }

    impact::RunOptions options;
    if (!quiet) {
      options.observer = [](int step, const impact::SystemState& s, const impact::SolverReport& r) {
        if (step % 100 == 0) std::fprintf(stderr, "step %d  t = %.4f  outer iterations %d\n", step, s.time, r.outer_iterations);
      };
    }

    if (run->parsed()) {
      const impact::RunSummary s = impact::run_scenario(config, options);
      if (!quiet) print_summary(s);
      if (!s.completed) std::cerr << s.failure << '\n';
      return s.completed ? kOk : kSolverFailure;
    }

    const auto rows = impact::sweep(config, param, parse_values(values), options);
    bool all_ok = true;
    for (const auto& r : rows) {
      if (!quiet) {
        std::printf("%s = %g\n", param.c_str(), r.value);
        print_summary(r.summary);
      }
      all_ok = all_ok && r.summary.completed;
    }
    return all_ok ? kOk : kSolverFailure;
  } catch (const impact::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kConfigError;
  } catch (const impact::OutputError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}
