#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qevo/ansatz.hpp"
#include "qevo/evolve.hpp"

namespace qevo::cli {

/// Configuration that violates the schema. Maps to exit status 2.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Mode { Vqe, Synth, Eig, Scan };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& name);

struct GraphConfig {
  std::string type = "ring";  // ring | random_regular | file
  int degree = 3;
  std::optional<std::uint64_t> seed;
  std::filesystem::path path;
};

struct ModelConfig {
  std::string type;  // heisenberg | syk | pauli_file | unitary_file
  int n_qubits = 0;
  GraphConfig graph;
  double J = 1.0;
  double h_z = 1.0;
  std::optional<std::uint64_t> seed;  // syk couplings
  std::filesystem::path path;
  bool align_phase = false;
};

struct DiagnosticsConfig {
  std::vector<int> entropy_subset{0, 1};
  bool overlap = false;
  int record_every = 1;
};

struct ScanConfig {
  std::size_t param_index = 0;
  std::size_t n_points = 64;
};

struct RunConfig {
  std::optional<Mode> mode;
  ModelConfig model;
  AnsatzSpec ansatz;  // n_qubits is filled from the model
  EvolutionConfig optimizer;
  double polish_threshold = 1e-3;
  DiagnosticsConfig diagnostics;
  ScanConfig scan;
  std::filesystem::path output_dir;
};

/// Strict parse: unknown keys, wrong JSON types and out-of-range values throw SchemaError.
/// Relative file paths are resolved against `base_dir`.
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});

/// Canonical JSON echo of a parsed configuration.
std::string config_to_json(const RunConfig& config);

struct Overrides {
  std::optional<Mode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  int threads = 1;
  std::optional<std::filesystem::path> checkpoint;  // written after every episode
  std::optional<std::filesystem::path> resume;
};

/// Runs the configured mode and writes its artifacts. Throws SchemaError for
/// configuration problems and other std::exception types for runtime failures.
void execute(RunConfig config, const Overrides& overrides);

/// Reads, validates and executes a config file. Returns the process exit status
/// (0 success, 1 runtime failure, 2 schema violation) and reports errors on stderr.
int run_from_config(const std::filesystem::path& config_path, const Overrides& overrides = {});

}  // namespace qevo::cli
