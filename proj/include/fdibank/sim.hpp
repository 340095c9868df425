#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fdibank/detect.hpp"
#include "fdibank/isolate.hpp"

namespace fdi::sim {

/// Rates over the complete windows of one run. Isolation accuracy is exact
/// set equality A~(i) == W; the superset rate (A~(i) includes W) is reported
/// alongside. The false-alarm rate is the detection rate and only defined on
/// attack-free runs.
struct RunMetrics {
  int detection_windows = 0;
  int detections = 0;
  int isolation_windows = 0;
  int isolation_exact = 0;
  int isolation_superset = 0;
  int inconclusive_windows = 0;

  double detection_rate = 0.0;
  double isolation_exact_rate = 0.0;
  double isolation_superset_rate = 0.0;
  bool attack_free = false;
};

/// One full co-simulation: shared trace, both windowed algorithms, metrics.
struct ScenarioRun {
  std::string name;
  std::uint64_t seed = 0;
  int horizon = 0;
  int window_size = 0;
  int p = 0;
  SensorSet ground_truth;  // W

  RunTrace trace;
  detect::DetectionState detection;
  isolate::IsolationState isolation;
  certify::ThresholdSet thresholds;
  RunMetrics metrics;
};

RunMetrics compute_metrics(const detect::DetectionState& detection,
                           const isolate::IsolationState& isolation,
                           const SensorSet& ground_truth);

/// Simulate once and evaluate both algorithms on the shared trace. Isolation
/// is skipped for q = 0 banks (no isolation layer).
ScenarioRun run_scenario(const Scenario& scenario, observer::ObserverBank& bank,
                         const certify::ThresholdSet& thresholds);

struct SummaryRow {
  std::string name;           // scenario or "pooled"
  std::uint64_t seed = 0;
  int window_size = 0;
  RunMetrics metrics;
};

/// Per-run rows followed by one window-weighted pooled row. All runs must
/// share p; the pooled false-alarm rate covers attack-free runs only.
std::vector<SummaryRow> summarize(const std::vector<const ScenarioRun*>& runs);

/// Write the per-run artifact set into `dir`:
///   trace.csv, bank.csv, detection_trace.csv, detection.csv,
///   isolation_trace.csv, isolation_union.csv, isolation.csv,
///   plotdata_detection.csv, plotdata_isolation.csv
void write_run_artifacts(const std::filesystem::path& dir, const ScenarioRun& run);

/// Write summary rows as summary.csv under `dir`.
void write_summary(const std::filesystem::path& dir, const std::vector<SummaryRow>& rows);

}  // namespace fdi::sim
