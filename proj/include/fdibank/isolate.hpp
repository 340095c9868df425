#pragma once

#include <map>
#include <vector>

#include "fdibank/certify.hpp"
#include "fdibank/trace.hpp"

namespace fdi::isolate {

struct StepRecord {
  int k = 0;
  std::map<SensorSet, double> pi_J;
  SensorSet attack_free_union;  // W_bar(k)
  bool in_window = false;
  int window_index = 0;
};

struct WindowVerdict {
  int index = 0;
  bool partial = false;
  bool inconclusive = false;      // every candidate counter stayed at zero
  SensorSet selected;             // J(i); empty when inconclusive
  SensorSet attacked;             // A~(i) = {1..p} \ J(i); empty = "none attacked"
  std::map<SensorSet, int> counters;  // n_J(i), all candidates card >= p-q
  int unmatched_union = 0;        // steps whose W_bar matched no candidate
};

struct IsolationState {
  int window_size = 0;
  int k_bar_star = 0;
  std::vector<StepRecord> trace;
  std::vector<WindowVerdict> verdicts;
};

/// pi_J = max over S subset of J, card(S) = p-2q, of |xhat_J - xhat_S|.
/// The map keys must be exactly those S; anything else is a logic error.
double discrepancy_J(const SensorSet& J, const Vec& estimate_J,
                     const std::map<SensorSet, Vec>& sub_estimates);

/// W_bar(k): union of all J with pi_J <= z_bar_J (non-strict). Both maps must
/// share the same key set.
SensorSet attack_free_union(const std::map<SensorSet, double>& pi_J,
                            const std::map<SensorSet, double>& z_bar_J);

/// argmax of the counters; ties prefer larger cardinality, then
/// lexicographically smaller. Returns the empty set when all counters are 0.
SensorSet select_candidate(const std::map<SensorSet, int>& counters);

/// Apply per-subset thresholds and windowing to an existing trace.
IsolationState evaluate_isolation(const sim::RunTrace& trace,
                                  const certify::ThresholdSet& thresholds, int N);

/// Simulate the scenario and run windowed isolation over it. Requires
/// horizon >= k_bar_star + N.
IsolationState run_isolation(const Scenario& scenario, observer::ObserverBank& bank,
                             const certify::ThresholdSet& thresholds);

}  // namespace fdi::isolate
