#include "fdibank/isolate.hpp"

#include <algorithm>

#include "fdibank/errors.hpp"

namespace fdi::isolate {

double discrepancy_J(const SensorSet& J, const Vec& estimate_J,
                     const std::map<SensorSet, Vec>& sub_estimates) {
  if (sub_estimates.empty()) {
    throw std::logic_error("discrepancy_J: sub-estimate map is empty");
  }
  const int card = sub_estimates.begin()->first.size();
  for (const auto& [S, est] : sub_estimates) {
    if (!S.subset_of(J)) {
      throw std::logic_error("discrepancy_J: {" + S.key() + "} is not a subset of {" +
                             J.key() + "}");
    }
    if (S.size() != card) {
      throw std::logic_error("discrepancy_J: mixed sub-subset cardinalities");
    }
  }
  if (static_cast<long long>(sub_estimates.size()) != binomial(J.size(), card)) {
    throw std::logic_error("discrepancy_J: sub-estimates do not cover all subsets of {" +
                           J.key() + "} with cardinality " + std::to_string(card));
  }
  double best = 0.0;
  for (const auto& [S, xhat_S] : sub_estimates) {
    best = std::max(best, (estimate_J - xhat_S).norm());
  }
  return best;
}

SensorSet attack_free_union(const std::map<SensorSet, double>& pi_J,
                            const std::map<SensorSet, double>& z_bar_J) {
  if (pi_J.size() != z_bar_J.size()) {
    throw std::logic_error("attack_free_union: pi and threshold maps differ in size");
  }
  SensorSet out;
  for (const auto& [J, pi] : pi_J) {
    auto it = z_bar_J.find(J);
    if (it == z_bar_J.end()) {
      throw std::logic_error("attack_free_union: no threshold for {" + J.key() + "}");
    }
    if (pi <= it->second) out = out.set_union(J);
  }
  return out;
}

SensorSet select_candidate(const std::map<SensorSet, int>& counters) {
  SensorSet best;
  int best_count = 0;
  for (const auto& [J, count] : counters) {
    if (count <= 0) continue;
    if (count > best_count) {
      best = J;
      best_count = count;
    } else if (count == best_count &&
               (J.size() > best.size() || (J.size() == best.size() && J < best))) {
      best = J;
    }
  }
  return best;
}

IsolationState evaluate_isolation(const sim::RunTrace& trace,
                                  const certify::ThresholdSet& thresholds, int N) {
  if (N < 1) throw ConfigError("N must be >= 1");
  const int k_bar = thresholds.k_star_isolate;
  if (trace.horizon < k_bar + N) {
    throw ConfigError("horizon " + std::to_string(trace.horizon) +
                      " is shorter than k_bar_star + N = " + std::to_string(k_bar + N) +
                      "; no complete isolation window");
  }
  if (trace.isolation_layer.empty()) {
    throw ConfigError("isolation requires q >= 1 (the bank has no isolation layer)");
  }

  const int p = trace.p;
  const SensorSet full = trace.full_set;
  const int sub_card = trace.isolation_layer.front().size();

  // candidates: every subset with cardinality >= p-q, i.e. the detection
  // layer plus the full set
  std::vector<SensorSet> candidates = trace.detection_layer;
  candidates.push_back(full);

  IsolationState st;
  st.window_size = N;
  st.k_bar_star = k_bar;
  st.trace.reserve(static_cast<std::size_t>(trace.horizon));

  for (int k = 0; k < trace.horizon; ++k) {
    StepRecord rec;
    rec.k = k;
    for (const auto& J : trace.detection_layer) {
      std::map<SensorSet, Vec> subs;
      for (const auto& S : subsets_of(J, sub_card)) subs[S] = trace.estimate(S, k);
      rec.pi_J[J] = discrepancy_J(J, trace.estimate(J, k), subs);
    }
    rec.attack_free_union = attack_free_union(rec.pi_J, thresholds.z_bar_J);
    rec.in_window = k >= k_bar;
    rec.window_index = k >= k_bar ? (k - k_bar) / N + 1 : 0;
    st.trace.push_back(std::move(rec));
  }

  const int total_steps = trace.horizon - k_bar;
  const int complete = total_steps / N;
  const bool has_partial = total_steps % N != 0;
  const int window_count = complete + (has_partial ? 1 : 0);

  for (int i = 1; i <= window_count; ++i) {
    const int begin = k_bar + (i - 1) * N;
    const int end = std::min(begin + N, trace.horizon);
    WindowVerdict v;
    v.index = i;
    v.partial = end - begin < N;
    for (const auto& J : candidates) v.counters[J] = 0;
    for (int k = begin; k < end; ++k) {
      const SensorSet& W_bar = st.trace[static_cast<std::size_t>(k)].attack_free_union;
      auto it = v.counters.find(W_bar);
      if (it != v.counters.end()) {
        ++it->second;
      } else {
        ++v.unmatched_union;  // W_bar matched no candidate (includes empty unions)
      }
    }
    v.selected = select_candidate(v.counters);
    if (v.selected.empty()) {
      v.inconclusive = true;
    } else {
      std::vector<int> attacked;
      for (int s = 1; s <= p; ++s) {
        if (!v.selected.contains(s)) attacked.push_back(s);
      }
      v.attacked = SensorSet(attacked);
    }
    st.verdicts.push_back(std::move(v));
  }
  return st;
}

IsolationState run_isolation(const Scenario& scenario, observer::ObserverBank& bank,
                             const certify::ThresholdSet& thresholds) {
  if (scenario.horizon < thresholds.k_star_isolate + scenario.window_size) {
    throw ConfigError("horizon " + std::to_string(scenario.horizon) +
                      " is shorter than k_bar_star + N = " +
                      std::to_string(thresholds.k_star_isolate + scenario.window_size));
  }
  const sim::RunTrace trace = sim::simulate_run(scenario, bank);
  return evaluate_isolation(trace, thresholds, scenario.window_size);
}

}  // namespace fdi::isolate
