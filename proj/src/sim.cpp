#include "fdibank/sim.hpp"

#include <algorithm>

#include "fdibank/csv.hpp"
#include "fdibank/errors.hpp"

namespace fdi::sim {

RunMetrics compute_metrics(const detect::DetectionState& detection,
                           const isolate::IsolationState& isolation,
                           const SensorSet& ground_truth) {
  RunMetrics m;
  m.attack_free = ground_truth.empty();
  for (const auto& v : detection.verdicts) {
    if (v.partial) continue;
    ++m.detection_windows;
    if (v.detection) ++m.detections;
  }
  for (const auto& v : isolation.verdicts) {
    if (v.partial) continue;
    ++m.isolation_windows;
    if (v.inconclusive) {
      ++m.inconclusive_windows;
      continue;
    }
    if (v.attacked == ground_truth) ++m.isolation_exact;
    if (ground_truth.subset_of(v.attacked)) ++m.isolation_superset;
  }
  m.detection_rate = m.detection_windows == 0
                         ? 0.0
                         : static_cast<double>(m.detections) / m.detection_windows;
  m.isolation_exact_rate = m.isolation_windows == 0
                               ? 0.0
                               : static_cast<double>(m.isolation_exact) / m.isolation_windows;
  m.isolation_superset_rate =
      m.isolation_windows == 0
          ? 0.0
          : static_cast<double>(m.isolation_superset) / m.isolation_windows;
  return m;
}

ScenarioRun run_scenario(const Scenario& scenario, observer::ObserverBank& bank,
                         const certify::ThresholdSet& thresholds) {
  ScenarioRun run;
  run.name = scenario.name;
  run.seed = scenario.seed;
  run.horizon = scenario.horizon;
  run.window_size = scenario.window_size;
  run.p = scenario.plant.p;
  run.ground_truth = scenario.attack.attacked;
  run.thresholds = thresholds;

  run.trace = simulate_run(scenario, bank);
  run.detection = detect::evaluate_detection(run.trace, thresholds, scenario.window_size);
  if (!run.trace.isolation_layer.empty()) {
    run.isolation = isolate::evaluate_isolation(run.trace, thresholds, scenario.window_size);
  }
  run.metrics = compute_metrics(run.detection, run.isolation, run.ground_truth);
  return run;
}

std::vector<SummaryRow> summarize(const std::vector<const ScenarioRun*>& runs) {
  if (runs.empty()) throw ConfigError("summarize: no runs");
  const int p = runs.front()->p;
  for (const ScenarioRun* r : runs) {
    if (r->p != p) {
      throw ConfigError("summarize: runs mix sensor counts (" + std::to_string(p) +
                        " vs " + std::to_string(r->p) + ")");
    }
  }

  std::vector<SummaryRow> rows;
  RunMetrics pooled;
  RunMetrics attack_free_pool;
  pooled.attack_free = true;
  for (const ScenarioRun* r : runs) {
    rows.push_back(SummaryRow{r->name, r->seed, r->window_size, r->metrics});
    const RunMetrics& m = r->metrics;
    pooled.detection_windows += m.detection_windows;
    pooled.detections += m.detections;
    pooled.isolation_windows += m.isolation_windows;
    pooled.isolation_exact += m.isolation_exact;
    pooled.isolation_superset += m.isolation_superset;
    pooled.inconclusive_windows += m.inconclusive_windows;
    pooled.attack_free = pooled.attack_free && m.attack_free;
    if (m.attack_free) {
      attack_free_pool.detection_windows += m.detection_windows;
      attack_free_pool.detections += m.detections;
    }
  }
  // window-weighted, not run-averaged
  pooled.detection_rate = pooled.detection_windows == 0
                              ? 0.0
                              : static_cast<double>(pooled.detections) /
                                    pooled.detection_windows;
  pooled.isolation_exact_rate = pooled.isolation_windows == 0
                                    ? 0.0
                                    : static_cast<double>(pooled.isolation_exact) /
                                          pooled.isolation_windows;
  pooled.isolation_superset_rate = pooled.isolation_windows == 0
                                       ? 0.0
                                       : static_cast<double>(pooled.isolation_superset) /
                                             pooled.isolation_windows;
  rows.push_back(SummaryRow{"pooled", 0, 0, pooled});
  return rows;
}

namespace {

std::string false_alarm_field(const RunMetrics& m) {
  // defined only on attack-free runs; empty field otherwise
  return m.attack_free ? csv::fmt(m.detection_rate) : std::string();
}

}  // namespace

void write_run_artifacts(const std::filesystem::path& dir, const ScenarioRun& run) {
  namespace fs = std::filesystem;
  const RunTrace& tr = run.trace;

  // trace.csv: per-step plant log
  {
    std::string out = "k";
    for (int i = 1; i <= tr.n; ++i) out += ",x_" + std::to_string(i);
    out += ",u";
    for (int i = 1; i <= tr.p; ++i) out += ",y_" + std::to_string(i);
    for (int i = 1; i <= tr.p; ++i) out += ",a_" + std::to_string(i);
    for (int i = 1; i <= tr.p; ++i) out += ",m_" + std::to_string(i);
    out += "\n";
    for (int k = 0; k < tr.horizon; ++k) {
      const std::size_t ks = static_cast<std::size_t>(k);
      out += csv::fmt(k);
      for (int i = 0; i < tr.n; ++i) out += "," + csv::fmt(tr.x[ks][i]);
      out += "," + csv::fmt(tr.u[ks]);
      for (int i = 0; i < tr.p; ++i) out += "," + csv::fmt(tr.y[ks][i]);
      for (int i = 0; i < tr.p; ++i) out += "," + csv::fmt(tr.a[ks][i]);
      for (int i = 0; i < tr.p; ++i) out += "," + csv::fmt(tr.m[ks][i]);
      out += "\n";
    }
    csv::write_file_atomic(dir / "trace.csv", out);
  }

  // bank.csv: per-step estimates of every member
  {
    std::string out = "k,member_label,subset";
    for (int i = 1; i <= tr.n; ++i) out += ",xhat_" + std::to_string(i);
    out += "\n";
    std::vector<std::pair<SensorSet, int>> members(tr.member_index.begin(),
                                                   tr.member_index.end());
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (int k = 0; k < tr.horizon; ++k) {
      for (const auto& [subset, idx] : members) {
        out += csv::fmt(k) + "," +
               observer::role_name(tr.member_roles[static_cast<std::size_t>(idx)]) + "," +
               csv::fmt(subset);
        const Vec& xh = tr.xhat[static_cast<std::size_t>(idx)][static_cast<std::size_t>(k)];
        for (int i = 0; i < tr.n; ++i) out += "," + csv::fmt(xh[i]);
        out += "\n";
      }
    }
    csv::write_file_atomic(dir / "bank.csv", out);
  }

  // detection trace + verdicts
  {
    std::string out = "k,pi,argmax_subset,z_bar,in_window,window_index\n";
    for (const auto& s : run.detection.pi_trace) {
      out += csv::row(s.k, s.pi, s.argmax, run.detection.z_bar, s.in_window,
                      s.window_index);
    }
    csv::write_file_atomic(dir / "detection_trace.csv", out);

    std::string verdicts = "window_index,detection,first_trigger_k,partial\n";
    for (const auto& v : run.detection.verdicts) {
      verdicts += csv::row(v.index, v.detection,
                           v.first_trigger_k ? csv::fmt(*v.first_trigger_k) : std::string("-"),
                           v.partial);
    }
    csv::write_file_atomic(dir / "detection.csv", verdicts);

    std::string plot = "window_index,detection\n";
    for (const auto& v : run.detection.verdicts) {
      if (!v.partial) plot += csv::row(v.index, v.detection);
    }
    csv::write_file_atomic(dir / "plotdata_detection.csv", plot);
  }

  // isolation traces + verdicts (empty files with headers when q = 0)
  {
    std::string out = "k,J,pi_J,z_bar_J,pass\n";
    std::string unions = "k,W_bar\n";
    for (const auto& rec : run.isolation.trace) {
      for (const auto& [J, pi] : rec.pi_J) {
        const double z = run.thresholds.z_bar_J.at(J);
        out += csv::row(rec.k, J, pi, z, pi <= z);
      }
      unions += csv::row(rec.k, rec.attack_free_union);
    }
    csv::write_file_atomic(dir / "isolation_trace.csv", out);
    csv::write_file_atomic(dir / "isolation_union.csv", unions);

    std::string verdicts = "window_index,J_selected,A_tilde,inconclusive,partial";
    std::vector<SensorSet> candidate_order;
    if (!run.isolation.verdicts.empty()) {
      for (const auto& [J, cnt] : run.isolation.verdicts.front().counters) {
        candidate_order.push_back(J);
        verdicts += ",n[" + csv::fmt(J) + "]";
      }
    }
    verdicts += ",unmatched_union\n";
    for (const auto& v : run.isolation.verdicts) {
      verdicts += csv::fmt(v.index) + "," + csv::fmt(v.selected) + "," +
                  csv::fmt(v.attacked) + "," + csv::fmt(v.inconclusive) + "," +
                  csv::fmt(v.partial);
      for (const auto& J : candidate_order) {
        verdicts += "," + csv::fmt(v.counters.at(J));
      }
      verdicts += "," + csv::fmt(v.unmatched_union) + "\n";
    }
    csv::write_file_atomic(dir / "isolation.csv", verdicts);

    // paper-figure convention: 0 = no sensor attacked
    std::string plot = "window_index,attacked_sensors\n";
    for (const auto& v : run.isolation.verdicts) {
      if (v.partial) continue;
      std::string field = v.inconclusive ? "inconclusive"
                          : v.attacked.empty() ? "0"
                                               : csv::fmt(v.attacked);
      plot += csv::row(v.index, field);
    }
    csv::write_file_atomic(dir / "plotdata_isolation.csv", plot);
  }
}

void write_summary(const std::filesystem::path& dir, const std::vector<SummaryRow>& rows) {
  std::string out =
      "name,seed,N,detection_windows,detections,detection_rate,"
      "isolation_windows,isolation_exact,isolation_exact_rate,"
      "isolation_superset,isolation_superset_rate,inconclusive_windows,"
      "attack_free,false_alarm_rate\n";
  for (const auto& r : rows) {
    const RunMetrics& m = r.metrics;
    out += csv::fmt(r.name) + "," + csv::fmt(r.seed) + "," + csv::fmt(r.window_size) +
           "," + csv::fmt(m.detection_windows) + "," + csv::fmt(m.detections) + "," +
           csv::fmt(m.detection_rate) + "," + csv::fmt(m.isolation_windows) + "," +
           csv::fmt(m.isolation_exact) + "," + csv::fmt(m.isolation_exact_rate) + "," +
           csv::fmt(m.isolation_superset) + "," + csv::fmt(m.isolation_superset_rate) +
           "," + csv::fmt(m.inconclusive_windows) + "," + csv::fmt(m.attack_free) + "," +
           false_alarm_field(m) + "\n";
  }
  csv::write_file_atomic(dir / "summary.csv", out);
}

}  // namespace fdi::sim
