#include "fdibank/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <json.hpp>

#include "fdibank/csv.hpp"
#include "fdibank/errors.hpp"
#include "fdibank/gains.hpp"
#include "fdibank/scenario.hpp"
#include "fdibank/sim.hpp"

namespace fdi::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void report_error(const char* kind, const std::string& message,
                  const std::vector<std::string>& details = {}) {
  json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  if (!details.empty()) j["error"]["details"] = details;
  std::cerr << j.dump() << "\n";
}

fs::path resolve_output_dir(const CommandConfig& config) {
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv("FDIBANK_OUTPUT_DIR"); env && *env) return env;
  return "out";
}

ScenarioOverrides overrides_of(const CommandConfig& config) {
  ScenarioOverrides ov;
  ov.window_size = config.window_size;
  ov.horizon = config.horizon;
  ov.seed = config.seed;
  ov.tau = config.tau;
  ov.safety_factor = config.safety_factor;
  return ov;
}

struct Pipeline {
  Scenario scenario;
  observer::ObserverBank bank;
};

Pipeline load_pipeline(const CommandConfig& config) {
  if (config.scenario_path.empty()) throw ConfigError("--scenario is required");
  if (config.gains_path.empty()) throw ConfigError("--gains is required");
  Pipeline p{load_scenario(config.scenario_path, overrides_of(config)), {}};
  const auto& plant = p.scenario.plant;
  const observer::GainTable gains =
      observer::load_gain_table(config.gains_path, plant.n, plant.r, plant.p);
  p.bank = observer::build_bank(plant, p.scenario.q, gains);
  return p;
}

void print_threshold_report(const certify::ThresholdSet& th, std::ostream& os) {
  os << "thresholds:\n";
  os << "  z_bar = " << csv::fmt(th.z_bar) << " (gamma_bar = " << csv::fmt(th.gamma_bar)
     << ")\n";
  for (const auto& [J, z] : th.z_bar_J) {
    os << "  z_bar[" << J.key() << "] = " << csv::fmt(z)
       << " (gamma' = " << csv::fmt(th.gamma_prime_J.at(J)) << ")\n";
  }
  os << "  k_star_detect = " << th.k_star_detect
     << ", k_star_isolate = " << th.k_star_isolate << "\n";
}

certify::CertificateTable certify_pipeline(const Pipeline& p, int verbosity) {
  if (verbosity > 0) {
    std::cout << "certifying " << p.bank.size() << " observers ("
              << p.scenario.certification.trials << " trials x "
              << p.scenario.certification.horizon << " steps each)\n";
  }
  certify::CertificateTable certs =
      certify::certify_bank(p.bank, p.scenario.plant, p.scenario.noise,
                            p.scenario.certification, p.scenario.init_state,
                            p.scenario.input);
  if (verbosity > 0) {
    for (const auto& [subset, cert] : certs) {
      std::cout << "  {" << subset.key() << "}: c = " << csv::fmt(cert.c)
                << ", lambda = " << csv::fmt(cert.lambda)
                << ", gamma = " << csv::fmt(cert.gamma) << ", k* = " << cert.k_star
                << "\n";
    }
  }
  return certs;
}

/// Load certificates if the path exists, otherwise certify and save there.
certify::CertificateTable load_or_certify(const Pipeline& p, const fs::path& certs_path,
                                          int verbosity) {
  if (!certs_path.empty() && fs::exists(certs_path)) {
    auto loaded = certify::load_certificates(certs_path);
    if (loaded.m_bar != p.scenario.noise.m_bar) {
      throw ConfigError("certificate file " + certs_path.string() + " was built for m_bar = " +
                        csv::fmt(loaded.m_bar) + ", scenario has m_bar = " +
                        csv::fmt(p.scenario.noise.m_bar));
    }
    return loaded.certs;
  }
  certify::CertificateTable certs = certify_pipeline(p, verbosity);
  if (!certs_path.empty()) {
    certify::save_certificates(certs_path, certs, p.scenario.certification,
                               p.scenario.noise.m_bar, p.scenario.noise.tau);
  }
  return certs;
}

int cmd_certify(const CommandConfig& config) {
  Pipeline p = load_pipeline(config);
  certify::CertificateTable certs = certify_pipeline(p, config.verbosity);
  const fs::path out = resolve_output_dir(config);
  const fs::path certs_path =
      config.certs_path.empty() ? out / "certificates.json" : fs::path(config.certs_path);
  certify::save_certificates(certs_path, certs, p.scenario.certification,
                             p.scenario.noise.m_bar, p.scenario.noise.tau);
  const certify::ThresholdSet th =
      certify::compute_thresholds(certs, p.scenario.noise.m_bar, p.scenario.epsilon);
  print_threshold_report(th, std::cout);
  std::cout << "wrote " << certs_path.string() << "\n";
  return kExitOk;
}

certify::ThresholdSet thresholds_from_file(const Pipeline& p, const std::string& path) {
  if (path.empty()) throw ConfigError("--certs is required for this subcommand");
  auto loaded = certify::load_certificates(path);
  if (loaded.m_bar != p.scenario.noise.m_bar) {
    throw ConfigError("certificate file " + path + " was built for m_bar = " +
                      csv::fmt(loaded.m_bar) + ", scenario has m_bar = " +
                      csv::fmt(p.scenario.noise.m_bar));
  }
  return certify::compute_thresholds(loaded.certs, p.scenario.noise.m_bar,
                                     p.scenario.epsilon);
}

int cmd_detect(const CommandConfig& config) {
  Pipeline p = load_pipeline(config);
  const certify::ThresholdSet th = thresholds_from_file(p, config.certs_path);
  sim::ScenarioRun run = sim::run_scenario(p.scenario, p.bank, th);
  const fs::path out = resolve_output_dir(config);

  std::string trace = "k,pi,argmax_subset,z_bar,in_window,window_index\n";
  for (const auto& s : run.detection.pi_trace) {
    trace += csv::row(s.k, s.pi, s.argmax, run.detection.z_bar, s.in_window,
                      s.window_index);
  }
  csv::write_file_atomic(out / "detection_trace.csv", trace);

  std::string verdicts = "window_index,detection,first_trigger_k,partial\n";
  for (const auto& v : run.detection.verdicts) {
    verdicts += csv::row(v.index, v.detection,
                         v.first_trigger_k ? csv::fmt(*v.first_trigger_k) : std::string("-"),
                         v.partial);
  }
  csv::write_file_atomic(out / "detection.csv", verdicts);

  if (config.verbosity > 0) {
    std::cout << "detection rate " << csv::fmt(run.metrics.detection_rate) << " over "
              << run.metrics.detection_windows << " windows\n";
  }
  return kExitOk;
}

int cmd_isolate(const CommandConfig& config) {
  Pipeline p = load_pipeline(config);
  if (p.scenario.q < 1) throw ConfigError("isolate requires q >= 1");
  const certify::ThresholdSet th = thresholds_from_file(p, config.certs_path);
  sim::ScenarioRun run = sim::run_scenario(p.scenario, p.bank, th);
  const fs::path out = resolve_output_dir(config);

  std::string trace = "k,J,pi_J,z_bar_J,pass\n";
  std::string unions = "k,W_bar\n";
  for (const auto& rec : run.isolation.trace) {
    for (const auto& [J, pi] : rec.pi_J) {
      const double z = th.z_bar_J.at(J);
      trace += csv::row(rec.k, J, pi, z, pi <= z);
    }
    unions += csv::row(rec.k, rec.attack_free_union);
  }
  csv::write_file_atomic(out / "isolation_trace.csv", trace);
  csv::write_file_atomic(out / "isolation_union.csv", unions);

  std::string verdicts = "window_index,J_selected,A_tilde,inconclusive,partial,unmatched_union\n";
  for (const auto& v : run.isolation.verdicts) {
    verdicts += csv::row(v.index, v.selected, v.attacked, v.inconclusive, v.partial,
                         v.unmatched_union);
  }
  csv::write_file_atomic(out / "isolation.csv", verdicts);

  if (config.verbosity > 0) {
    std::cout << "exact isolation rate " << csv::fmt(run.metrics.isolation_exact_rate)
              << " over " << run.metrics.isolation_windows << " windows\n";
  }
  return kExitOk;
}

int cmd_run_all(const CommandConfig& config) {
  Pipeline p = load_pipeline(config);
  const fs::path out = resolve_output_dir(config);
  const fs::path certs_path =
      config.certs_path.empty() ? out / "certificates.json" : fs::path(config.certs_path);
  certify::CertificateTable certs = load_or_certify(p, certs_path, config.verbosity);
  const certify::ThresholdSet th =
      certify::compute_thresholds(certs, p.scenario.noise.m_bar, p.scenario.epsilon);
  if (config.verbosity > 0) print_threshold_report(th, std::cout);

  sim::ScenarioRun run = sim::run_scenario(p.scenario, p.bank, th);
  sim::write_run_artifacts(out, run);
  sim::write_summary(out, sim::summarize({&run}));
  if (config.verbosity > 0) {
    std::cout << "wrote artifacts to " << out.string() << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const CommandConfig& config) {
  if (config.sweep_window_sizes.empty()) {
    throw ConfigError("sweep requires --N with a comma-separated list, e.g. 50,100,200");
  }
  Pipeline p = load_pipeline(config);
  const fs::path out = resolve_output_dir(config);
  const fs::path certs_path =
      config.certs_path.empty() ? out / "certificates.json" : fs::path(config.certs_path);
  certify::CertificateTable certs = load_or_certify(p, certs_path, config.verbosity);
  const certify::ThresholdSet th =
      certify::compute_thresholds(certs, p.scenario.noise.m_bar, p.scenario.epsilon);

  std::vector<sim::ScenarioRun> runs;
  runs.reserve(config.sweep_window_sizes.size());
  for (int N : config.sweep_window_sizes) {
    if (N < 1) throw ConfigError("sweep: N must be >= 1");
    Scenario sc = p.scenario;
    sc.window_size = N;
    sc.name = p.scenario.name + "/N" + std::to_string(N);
    runs.push_back(sim::run_scenario(sc, p.bank, th));
    sim::write_run_artifacts(out / ("N" + std::to_string(N)), runs.back());
  }
  std::vector<const sim::ScenarioRun*> ptrs;
  for (const auto& r : runs) ptrs.push_back(&r);
  sim::write_summary(out, sim::summarize(ptrs));
  return kExitOk;
}

}  // namespace

int execute(const CommandConfig& config) {
  try {
    switch (config.cmd) {
      case CommandConfig::Cmd::Certify:
        return cmd_certify(config);
      case CommandConfig::Cmd::Detect:
        return cmd_detect(config);
      case CommandConfig::Cmd::Isolate:
        return cmd_isolate(config);
      case CommandConfig::Cmd::RunAll:
        return cmd_run_all(config);
      case CommandConfig::Cmd::Sweep:
        return cmd_sweep(config);
    }
    return kExitRuntime;
  } catch (const ConfigError& e) {
    report_error("validation", e.what(), e.details());
    return kExitValidation;
  } catch (const CertificationError& e) {
    report_error("certification", e.what());
    return kExitCertification;
  } catch (const std::exception& e) {
    report_error("runtime", e.what());
    return kExitRuntime;
  }
}

}  // namespace fdi::cli
