#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fdi::cli {

/// Parsed command line. Overrides are range-validated before execution.
struct CommandConfig {
  enum class Cmd { Certify, Detect, Isolate, RunAll, Sweep };

  Cmd cmd = Cmd::RunAll;
  std::string scenario_path;
  std::string gains_path;
  std::string certs_path;   // input for detect/isolate; cache for run-all/sweep
  std::string output_dir;   // falls back to $FDIBANK_OUTPUT_DIR, then "out"

  std::optional<int> window_size;       // --N
  std::optional<int> horizon;           // --horizon
  std::optional<std::uint64_t> seed;    // --seed
  std::optional<double> tau;            // --tau
  std::optional<double> safety_factor;  // --safety-factor
  std::vector<int> sweep_window_sizes;  // sweep: --N 50,100,200
  int verbosity = 0;
};

/// Exit codes: 0 success, 2 validation, 3 certification failure, 4 runtime.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCertification = 3;
inline constexpr int kExitRuntime = 4;

/// Run one subcommand end to end. Writes artifacts atomically; on error,
/// prints a one-line JSON report to stderr and returns the matching code.
int execute(const CommandConfig& config);

}  // namespace fdi::cli
