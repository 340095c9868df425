#include "fdibank/detect.hpp"

#include <algorithm>
#include <string>

#include "fdibank/errors.hpp"

namespace fdi::detect {

std::pair<double, SensorSet> discrepancy(const Vec& full_estimate,
                                         const std::map<SensorSet, Vec>& layer_estimates) {
  if (layer_estimates.empty()) {
    throw std::logic_error("discrepancy: layer estimate map is empty");
  }
  // the map must hold every cardinality p-q subset of {1..p}
  const int card = layer_estimates.begin()->first.size();
  int p = 0;
  for (const auto& [J, est] : layer_estimates) {
    if (J.size() != card) {
      throw std::logic_error("discrepancy: mixed subset cardinalities in layer map");
    }
    p = std::max(p, J.max_index());
  }
  if (static_cast<long long>(layer_estimates.size()) != binomial(p, card)) {
    throw std::logic_error("discrepancy: layer map does not cover all C(p, p-q) subsets");
  }
  double best = -1.0;
  SensorSet best_subset;
  // std::map iterates subsets lexicographically, so strict improvement keeps
  // the lexicographically smallest maximizer.
  for (const auto& [J, xhat_J] : layer_estimates) {
    if (xhat_J.size() != full_estimate.size()) {
      throw std::logic_error("discrepancy: estimate for {" + J.key() +
                             "} has mismatched length");
    }
    const double d = (full_estimate - xhat_J).norm();
    if (d > best) {
      best = d;
      best_subset = J;
    }
  }
  return {best, best_subset};
}

bool detect_window(std::span<const double> window_pi, double z_bar) {
  for (double v : window_pi) {
    if (v > z_bar) return true;
  }
  return false;
}

DetectionState evaluate_detection(const sim::RunTrace& trace,
                                  const certify::ThresholdSet& thresholds, int N) {
  if (N < 1) throw ConfigError("N must be >= 1");
  const int k_star = thresholds.k_star_detect;
  if (trace.horizon < k_star + N) {
    throw ConfigError("horizon " + std::to_string(trace.horizon) +
                      " is shorter than k_star + N = " + std::to_string(k_star + N) +
                      "; no complete detection window");
  }

  DetectionState st;
  st.window_size = N;
  st.k_star = k_star;
  st.z_bar = thresholds.z_bar;
  st.pi_trace.reserve(static_cast<std::size_t>(trace.horizon));

  // layer estimates are re-keyed per step; the layout map stays fixed
  for (int k = 0; k < trace.horizon; ++k) {
    std::map<SensorSet, Vec> layer;
    for (const auto& J : trace.detection_layer) layer[J] = trace.estimate(J, k);
    auto [pi, argmax] = discrepancy(trace.estimate(trace.full_set, k), layer);
    PiSample s;
    s.k = k;
    s.pi = pi;
    s.argmax = argmax;
    s.in_window = k >= k_star;
    s.window_index = k >= k_star ? (k - k_star) / N + 1 : 0;
    st.pi_trace.push_back(std::move(s));
  }

  const int total_steps = trace.horizon - k_star;
  const int complete = total_steps / N;
  const bool has_partial = total_steps % N != 0;
  const int window_count = complete + (has_partial ? 1 : 0);

  for (int i = 1; i <= window_count; ++i) {
    const int begin = k_star + (i - 1) * N;
    const int end = std::min(begin + N, trace.horizon);  // exclusive
    WindowVerdict v;
    v.index = i;
    v.partial = end - begin < N;
    for (int k = begin; k < end; ++k) {
      if (st.pi_trace[static_cast<std::size_t>(k)].pi > thresholds.z_bar) {
        v.detection = true;
        v.first_trigger_k = k;
        break;
      }
    }
    st.verdicts.push_back(std::move(v));
  }
  return st;
}

DetectionState run_detection(const Scenario& scenario, observer::ObserverBank& bank,
                             const certify::ThresholdSet& thresholds) {
  if (scenario.horizon < thresholds.k_star_detect + scenario.window_size) {
    throw ConfigError("horizon " + std::to_string(scenario.horizon) +
                      " is shorter than k_star + N = " +
                      std::to_string(thresholds.k_star_detect + scenario.window_size));
  }
  const sim::RunTrace trace = sim::simulate_run(scenario, bank);
  return evaluate_detection(trace, thresholds, scenario.window_size);
}

}  // namespace fdi::detect
