#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace spheremag::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Bad config contents or a failed precondition (exit code 1).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unreadable input or unwritable output (exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { synth, forward, decompose, reconstruct, silent, existence };

Command parse_command(const std::string& name);
std::string command_name(Command c);

struct DisplaySpec {
  int n_lat = 181;
  int n_lon = 360;
};

struct RegionSpec {
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  double threshold = 0.0;
};

/// Input for decompose.
struct FieldSpec {
  std::string type = "vector_harmonic";  // vector_harmonic | random | example
  int family = 2, n = 1, k = 1;          // vector_harmonic
  int example = 1;                       // example
};

struct UnidirectionalParams {
  double a = -0.9, b = -0.1;
  std::array<double, 3> zeta{0.0, 0.0, 1.0};
  double v3 = 1.0;
};

/// Parameters of every command; each command reads and accepts only its own
/// subset of keys. Defaults are desk scale.
struct RunConfig {
  Command command = Command::synth;
  int schema_version = kSchemaVersion;
  std::string comment;

  // synth, forward
  int example = 1;
  double R = 1.1;
  int data_exactness = 64;
  int source_n_per_band = 200;
  int source_n_lon = 400;
  std::string source = "example";  // forward: example | bandlimited

  // decompose, forward (bandlimited), silent (exterior / interior), existence
  int L = 16;
  std::uint64_t seed = 1;
  FieldSpec field;

  // reconstruct
  std::string data;  // synth result.json, relative to the config file
  double h = 0.0;    // 0: example default
  int n_centers = 0; // 0: example default
  std::vector<double> alphas{0.0, 1e-6, 1e-3};
  double ridge = 1e-12;
  RegionSpec region;

  // silent
  std::string construction = "unidirectional";  // unidirectional | exterior | interior
  UnidirectionalParams unidirectional;
  int n_per_band = 160;
  double R_exterior = 1.1, R_interior = 0.9;
  int n_eval = 200;

  // existence
  int target_L = 4;
  double tilt = 0.2;
  std::array<double, 3> zeta{0.0, 0.0, 1.0};
  int grid_exactness = 60;
  double R_check = 1.1;
  int n_check = 50;

  DisplaySpec display;

  // directory of the config file, for resolving relative paths; not serialized
  std::filesystem::path base_dir;
};

/// Parses and validates; throws ConfigError on unknown keys, missing or
/// wrong schema_version, or out-of-range values.
RunConfig parse_config(Command command, const Json& doc);
RunConfig load_config(Command command, const std::filesystem::path& path);
/// Every key the command accepts, with defaults resolved.
Json to_json(const RunConfig& cfg);

/// Effective h and centre count for reconstruct.
double resolved_h(const RunConfig& cfg, int example);
int resolved_centers(const RunConfig& cfg, int example);

}  // namespace spheremag::cli
