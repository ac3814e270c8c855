#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptb/mass_shell.hpp"
#include "ptb/minkowski.hpp"
#include "ptb/potential.hpp"
#include "ptb/reduced_dynamics.hpp"
#include "ptb/worldline.hpp"

namespace ptb {

inline constexpr int kSchemaVersion = 1;

struct PotentialConfig {
  std::string kind = "free";  // free | harmonic | central_power
  double chi = 0.0;
  double g = 0.0;
  int n = 1;
};

/// A scenario document. Exactly one of (ztil, ytil) or circular_l2 is set.
struct ScenarioConfig {
  double m1 = 1.0;
  double m2 = 1.0;
  PotentialConfig potential;
  std::optional<Vec3> ztil;
  std::optional<Vec3> ytil;
  std::optional<double> circular_l2;
  IntegratorOptions integrator;
  double lambda_span = 10.0;
  std::string sampling = "T";  // T | lambda
  std::optional<FourVector> frame_k;
  std::optional<Vec3> frame_velocity;  // alternative to frame_k: k = M gamma (1, v)
  Vec3 Xi0;
  std::string format = "csv";  // csv | json
  std::string path = "trajectory.csv";
  std::vector<std::string> warnings;
};

/// Parses and validates a scenario document. Throws ConfigError.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::string& file);

PotentialSpec make_potential(const PotentialConfig& cfg);

struct ScenarioResult {
  MassShell shell;
  Trajectory trajectory;
  std::vector<TrajectorySample> rows;
  std::vector<WorldlineSample> points;  // lab frame when a frame is given
  nlohmann::json diagnostics;
};

/// Lambda and M from the initial data (self-consistently when V depends on
/// P^2 or w), integration, synchronization and world lines.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Column names of the trajectory table, in output order.
const std::vector<std::string>& output_columns();

std::string render_csv(const ScenarioResult& result);
std::string render_json(const ScenarioResult& result);

/// Output location: cfg.path, with its directory replaced by $PTB_OUTPUT_DIR
/// when that variable is set.
std::string resolve_output_path(const ScenarioConfig& cfg);

/// Runs the scenario and writes the output file; returns the diagnostics.
nlohmann::json run_and_write(const ScenarioConfig& cfg);

/// Formats a double with 17 significant digits ("nan" for NaN).
std::string format_number(double v);

}  // namespace ptb
