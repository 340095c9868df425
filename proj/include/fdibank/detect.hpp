#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fdibank/certify.hpp"
#include "fdibank/trace.hpp"

namespace fdi::detect {

struct PiSample {
  int k = 0;
  double pi = 0.0;
  SensorSet argmax;
  bool in_window = false;  // k >= k_star and inside a (possibly partial) window
  int window_index = 0;    // 1-based; 0 before k_star
};

struct WindowVerdict {
  int index = 0;  // 1-based window number
  bool detection = false;
  std::optional<int> first_trigger_k;
  bool partial = false;  // trailing window shorter than N; excluded from rates
};

/// Windowed detection output: the discrepancy trace and one verdict per
/// window of N steps starting at k_star.
struct DetectionState {
  int window_size = 0;
  int k_star = 0;
  double z_bar = 0.0;
  std::vector<PiSample> pi_trace;
  std::vector<WindowVerdict> verdicts;
};

/// pi = max_J |xhat - xhat_J| over the detection layer, with the maximizing
/// subset (lexicographically smallest on ties). The map must be keyed by
/// exactly the cardinality p-q subsets; gaps are a logic error.
std::pair<double, SensorSet> discrepancy(const Vec& full_estimate,
                                         const std::map<SensorSet, Vec>& layer_estimates);

/// Window verdict: true iff some pi in the window strictly exceeds z_bar.
bool detect_window(std::span<const double> window_pi, double z_bar);

/// Apply thresholds and windowing to an existing trace.
DetectionState evaluate_detection(const sim::RunTrace& trace,
                                  const certify::ThresholdSet& thresholds, int N);

/// Simulate the scenario and run windowed detection over it. Requires
/// horizon >= k_star + N (at least one complete window).
DetectionState run_detection(const Scenario& scenario, observer::ObserverBank& bank,
                             const certify::ThresholdSet& thresholds);

}  // namespace fdi::detect
