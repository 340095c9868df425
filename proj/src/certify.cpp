#include "fdibank/certify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fdibank/errors.hpp"
#include "json_util.hpp"
#include "rollout.hpp"

namespace fdi::certify {

namespace {

constexpr double kErrFloorRel = 1e-13;
constexpr double kBoundSlack = 1e-12;

double settle_target(const model::NoiseModel& noise) {
  const double scale = noise.kind == model::NoiseModel::Kind::None ? 0.0
                                                                   : noise.tau * noise.m_bar;
  return std::max(0.05 * scale, 1e-12);
}

/// Smallest k >= 0 with c * lambda^k * radius <= target (lambda in (0,1)).
int settle_step(double c, double lambda, double radius, double target, int cap) {
  if (radius <= 0.0 || c * radius <= target) return 0;
  double level = c * radius;
  int k = 0;
  while (level > target && k < cap) {
    level *= lambda;
    ++k;
  }
  return k;
}

struct TrialStreams {
  RandomStream x0, e0, noise;
};

TrialStreams trial_streams(const RandomStream& base, const std::string& phase, int trial) {
  RandomStream t = base.derive(phase + "/" + std::to_string(trial));
  return TrialStreams{t.derive("x0"), t.derive("e0"), t.derive("noise")};
}

}  // namespace

void IssCertificate::validate(const std::string& subset_key) const {
  std::vector<std::string> bad;
  if (!(c > 0.0)) bad.push_back("c must be positive");
  if (!(lambda > 0.0 && lambda < 1.0)) bad.push_back("lambda must lie in (0, 1)");
  if (!(gamma >= 0.0)) bad.push_back("gamma must be nonnegative");
  if (!(epsilon >= 0.0)) bad.push_back("epsilon must be nonnegative");
  if (!(init_error_radius >= 0.0)) bad.push_back("init_error_radius must be nonnegative");
  if (init_error_radius == 0.0 && k_star != 0) {
    bad.push_back("k_star must be 0 when init_error_radius is 0");
  }
  if (init_error_radius > 0.0 && epsilon > 0.0 &&
      c * std::pow(lambda, k_star) * init_error_radius > epsilon * (1.0 + 1e-9)) {
    bad.push_back("k_star inconsistent with (c, lambda, init_error_radius, epsilon)");
  }
  if (!bad.empty()) {
    throw ConfigError("invalid certificate for subset {" + subset_key + "}", bad);
  }
}

IssCertificate estimate_certificate(const observer::ObserverSpec& spec,
                                    const model::PlantModel& model,
                                    const model::NoiseModel& noise,
                                    const CertifyConfig& cfg,
                                    const model::InitPolicy& x0_policy,
                                    const model::InputSignal& input) {
  const std::string key = spec.subset.key();
  if (cfg.trials < 1) throw ConfigError("certification.trials must be >= 1");
  if (cfg.horizon < 8) throw ConfigError("certification.horizon must be >= 8");
  if (cfg.init_error_radius > 0.0 && cfg.epsilon <= 0.0) {
    throw ConfigError(
        "epsilon must be positive when observers start away from the true state "
        "(init_error_radius > 0)");
  }

  const RandomStream base(cfg.master_seed, "cert/" + key);
  const model::NoiseModel no_noise =
      model::NoiseModel::make(model::NoiseModel::Kind::None, noise.m_bar, noise.tau, {});

  // Decay envelope from noiseless rollouts started inside the fit ball.
  double lambda = 0.5;
  double c = 1.0;
  if (cfg.fit_radius > 0.0) {
    std::vector<detail::Rollout> fits;
    fits.reserve(static_cast<std::size_t>(cfg.trials));
    double lambda_max = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialStreams s = trial_streams(base, "fit", t);
      const Vec e0 = model::uniform_in_ball(s.e0, 0, model.n, cfg.fit_radius);
      if (e0.norm() < 1e-9) continue;
      detail::Rollout r =
          detail::roll_pair(spec, model, no_noise, model::AttackScenario::none(), x0_policy,
                            input, s.x0, e0, cfg.horizon);
      if (!r.finite) {
        throw CertificationError("divergent error trajectory in noiseless rollout", key);
      }
      const double floor = kErrFloorRel * std::max(1.0, r.e0);
      // least squares on log|e(k)| over the pre-floor segment
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int npts = 0;
      for (int k = 0; k < cfg.horizon; ++k) {
        const double e = r.err[static_cast<std::size_t>(k)];
        if (e <= floor) break;
        const double lx = static_cast<double>(k), ly = std::log(e);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++npts;
      }
      double lt = 0.01;
      if (npts >= 2) {
        const double denom = static_cast<double>(npts) * sxx - sx * sx;
        const double slope = denom == 0.0 ? 0.0 : (static_cast<double>(npts) * sxy - sx * sy) / denom;
        lt = std::clamp(std::exp(slope), 1e-6, 2.0);
      }
      lambda_max = std::max(lambda_max, lt);
      fits.push_back(std::move(r));
    }
    if (fits.empty()) {
      throw CertificationError("no usable noiseless rollouts for the envelope fit", key);
    }
    if (lambda_max >= cfg.max_lambda) {
      throw CertificationError("no geometric decay envelope (fitted lambda " +
                                   std::to_string(lambda_max) + ")",
                               key);
    }
    lambda = std::clamp(lambda_max, 1e-6, cfg.max_lambda);
    // envelope constant: make |e(k)| <= c lambda^k |e(0)| hold on every fit sample
    c = 0.0;
    for (const auto& r : fits) {
      const double floor = kErrFloorRel * std::max(1.0, r.e0);
      double pow_l = 1.0;
      for (int k = 0; k < cfg.horizon; ++k) {
        const double e = r.err[static_cast<std::size_t>(k)];
        if (e <= floor) break;
        c = std::max(c, e / (pow_l * r.e0));
        pow_l *= lambda;
      }
    }
    c = std::max(c, 1e-12);
    // post hoc: the horizon must let the fitted envelope settle
    if (settle_step(c, lambda, cfg.fit_radius, settle_target(noise), cfg.horizon) >
        cfg.horizon / 2) {
      throw CertificationError("certification horizon too short for the fitted envelope",
                               key);
    }
  }

  // Noise gain: post-settling ratio of suprema over noisy rollouts.
  const int k_settle =
      settle_step(c, lambda, cfg.init_error_radius, settle_target(noise), cfg.horizon);
  if (k_settle > cfg.horizon / 2) {
    throw CertificationError("certification horizon too short to settle from the "
                             "certified initial-error ball",
                             key);
  }
  double gamma_raw = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const TrialStreams s = trial_streams(base, "gamma", t);
    const Vec e0 = model::uniform_in_ball(s.e0, 0, model.n, cfg.init_error_radius);
    const detail::Rollout r =
        detail::roll_pair(spec, model, noise.with_stream(s.noise),
                          model::AttackScenario::none(), x0_policy, input, s.x0, e0,
                          cfg.horizon);
    if (!r.finite) {
      throw CertificationError("divergent error trajectory in noisy rollout", key);
    }
    double peak = 0.0;
    for (int k = k_settle; k < cfg.horizon; ++k) {
      peak = std::max(peak, r.err[static_cast<std::size_t>(k)]);
    }
    const double denom = r.noise_sup[static_cast<std::size_t>(cfg.horizon - 1)];
    if (denom <= 0.0) {
      if (peak > 1e-10) {
        throw CertificationError("errors persist without noise; observer not ISS", key);
      }
      continue;  // gamma contribution 0
    }
    gamma_raw = std::max(gamma_raw, peak / denom);
  }

  IssCertificate cert;
  cert.c = c;
  cert.lambda = lambda;
  cert.gamma = cfg.safety_factor * gamma_raw;
  cert.epsilon = cfg.epsilon;
  cert.init_error_radius = cfg.init_error_radius;
  cert.k_star = cfg.init_error_radius == 0.0
                    ? 0
                    : settle_step(c, lambda, cfg.init_error_radius, cfg.epsilon,
                                  1 << 24);
  cert.master_seed = cfg.master_seed;
  cert.trials = cfg.trials;
  cert.horizon = cfg.horizon;
  cert.safety_factor = cfg.safety_factor;
  cert.validate(key);

  const double violations =
      validate_certificate(spec, model, noise, cfg, x0_policy, input, cert);
  if (violations > cfg.max_violation_fraction) {
    throw CertificationError("certificate bound violated on " +
                                 std::to_string(100.0 * violations) +
                                 "% of fresh validation samples (budget " +
                                 std::to_string(100.0 * cfg.max_violation_fraction) + "%)",
                             key);
  }
  return cert;
}

double validate_certificate(const observer::ObserverSpec& spec,
                            const model::PlantModel& model,
                            const model::NoiseModel& noise, const CertifyConfig& cfg,
                            const model::InitPolicy& x0_policy,
                            const model::InputSignal& input, const IssCertificate& cert) {
  const RandomStream base(cfg.master_seed, "cert/" + spec.subset.key());
  std::int64_t samples = 0, violations = 0;
  for (int t = 0; t < cfg.validation_trials; ++t) {
    const TrialStreams s = trial_streams(base, "val", t);
    const Vec e0 = model::uniform_in_ball(s.e0, 0, model.n, cert.init_error_radius);
    const detail::Rollout r =
        detail::roll_pair(spec, model, noise.with_stream(s.noise),
                          model::AttackScenario::none(), x0_policy, input, s.x0, e0,
                          cfg.horizon);
    if (!r.finite) return 1.0;
    double pow_l = 1.0;
    for (int k = 0; k < cfg.horizon; ++k) {
      const double bound = cert.c * pow_l * r.e0 +
                           cert.gamma * r.noise_sup[static_cast<std::size_t>(k)] +
                           kBoundSlack;
      if (r.err[static_cast<std::size_t>(k)] > bound) ++violations;
      ++samples;
      pow_l *= cert.lambda;
    }
  }
  return samples == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(samples);
}

CertificateTable certify_bank(const observer::ObserverBank& bank,
                              const model::PlantModel& model,
                              const model::NoiseModel& noise, const CertifyConfig& cfg,
                              const model::InitPolicy& x0_policy,
                              const model::InputSignal& input) {
  CertificateTable table;
  for (const auto& member : bank.members) {
    table[member.subset] =
        estimate_certificate(member, model, noise, cfg, x0_policy, input);
  }
  return table;
}

ThresholdSet compute_thresholds(const CertificateTable& certs, double m_bar,
                                double epsilon) {
  if (certs.empty()) throw ConfigError("certificate table is empty");
  if (!(m_bar > 0.0)) throw ConfigError("m_bar must be positive");
  if (epsilon < 0.0) throw ConfigError("epsilon must be nonnegative");

  int p = 0;
  for (const auto& [subset, cert] : certs) p = std::max(p, subset.size());
  const SensorSet full = SensorSet::full(p);
  auto full_it = certs.find(full);
  if (full_it == certs.end()) {
    throw ConfigError("certificate table has no full-set entry {" + full.key() + "}");
  }

  std::set<int> cards;
  for (const auto& [subset, cert] : certs) {
    if (subset.max_index() > p) {
      throw ConfigError("certificate subset {" + subset.key() + "} exceeds p");
    }
    cards.insert(subset.size());
  }
  int q = 0;
  if (cards.size() > 1) {
    auto it = cards.rbegin();
    ++it;  // second largest cardinality is p - q
    q = p - *it;
  }
  const std::vector<int> expected_cards =
      q == 0 ? std::vector<int>{p} : std::vector<int>{p, p - q, p - 2 * q};
  for (int card : cards) {
    if (std::find(expected_cards.begin(), expected_cards.end(), card) ==
        expected_cards.end()) {
      throw ConfigError("certificate table mixes unexpected cardinality " +
                        std::to_string(card) + " (p = " + std::to_string(p) +
                        ", q = " + std::to_string(q) + ")");
    }
  }
  if (q > 0 && 2 * q >= p) {
    throw ConfigError("certificate table implies q >= p/2");
  }

  std::vector<std::string> missing;
  auto cert_of = [&](const SensorSet& s) -> const IssCertificate* {
    auto it = certs.find(s);
    if (it == certs.end()) {
      missing.push_back("{" + s.key() + "}");
      return nullptr;
    }
    return &it->second;
  };

  const auto detection_layer = enumerate_subsets(p, p - q);
  const auto isolation_layer =
      q == 0 ? std::vector<SensorSet>{full} : enumerate_subsets(p, p - 2 * q);

  ThresholdSet out;
  const IssCertificate& full_cert = full_it->second;
  out.gamma_bar = full_cert.gamma;
  out.k_star_detect = full_cert.k_star;
  out.k_star_isolate = 0;

  for (const auto& J : detection_layer) {
    const IssCertificate* cj = cert_of(J);
    if (!cj) continue;
    out.gamma_bar = std::max(out.gamma_bar, cj->gamma);
    out.k_star_detect = std::max(out.k_star_detect, cj->k_star);
    out.k_star_isolate = std::max(out.k_star_isolate, cj->k_star);

    double gamma_prime = cj->gamma;
    for (const auto& S : subsets_of(J, q == 0 ? J.size() : p - 2 * q)) {
      const IssCertificate* cs = cert_of(S);
      if (!cs) continue;
      gamma_prime = std::max(gamma_prime, cs->gamma);
    }
    out.gamma_prime_J[J] = gamma_prime;
  }
  for (const auto& S : isolation_layer) {
    const IssCertificate* cs = cert_of(S);
    if (cs) out.k_star_isolate = std::max(out.k_star_isolate, cs->k_star);
  }
  if (!missing.empty()) {
    throw ConfigError("certificate table is missing required subsets", missing);
  }

  out.z_bar = 2.0 * (epsilon + out.gamma_bar * m_bar);
  for (const auto& [J, gamma_prime] : out.gamma_prime_J) {
    out.z_bar_J[J] = 2.0 * (epsilon + gamma_prime * m_bar);
  }
  return out;
}

using jsonu::json;

void save_certificates(const std::filesystem::path& path, const CertificateTable& certs,
                       const CertifyConfig& cfg, double m_bar, double tau) {
  json j;
  j["m_bar"] = m_bar;
  j["tau"] = tau;
  j["epsilon"] = cfg.epsilon;
  j["master_seed"] = cfg.master_seed;
  j["trials"] = cfg.trials;
  j["horizon"] = cfg.horizon;
  j["safety_factor"] = cfg.safety_factor;
  j["fit_radius"] = cfg.fit_radius;
  j["init_error_radius"] = cfg.init_error_radius;
  j["validation_trials"] = cfg.validation_trials;
  json table = json::object();
  for (const auto& [subset, cert] : certs) {
    json c;
    c["c"] = cert.c;
    c["lambda"] = cert.lambda;
    c["gamma"] = cert.gamma;
    c["epsilon"] = cert.epsilon;
    c["init_error_radius"] = cert.init_error_radius;
    c["k_star"] = cert.k_star;
    c["master_seed"] = cert.master_seed;
    c["trials"] = cert.trials;
    c["horizon"] = cert.horizon;
    c["safety_factor"] = cert.safety_factor;
    table[subset.key()] = std::move(c);
  }
  j["certificates"] = std::move(table);
  jsonu::save_json_file(path, j);
}

LoadedCertificates load_certificates(const std::filesystem::path& path) {
  const json j = jsonu::load_json_file(path);
  std::vector<std::string> errors;
  LoadedCertificates out;
  out.m_bar = jsonu::require_number(j.value("m_bar", json()), "m_bar", errors);
  out.tau = j.contains("tau") ? jsonu::require_number(j["tau"], "tau", errors, 1.0) : 1.0;
  out.cfg.epsilon = jsonu::require_number(j.value("epsilon", json()), "epsilon", errors);
  out.cfg.master_seed = static_cast<std::uint64_t>(
      jsonu::require_int(j.value("master_seed", json()), "master_seed", errors));
  out.cfg.trials =
      static_cast<int>(jsonu::require_int(j.value("trials", json()), "trials", errors, 1));
  out.cfg.horizon = static_cast<int>(
      jsonu::require_int(j.value("horizon", json()), "horizon", errors, 8));
  out.cfg.safety_factor = jsonu::require_number(j.value("safety_factor", json()),
                                                "safety_factor", errors, 1.0);
  if (j.contains("fit_radius")) {
    out.cfg.fit_radius = jsonu::require_number(j["fit_radius"], "fit_radius", errors, 1.0);
  }
  if (j.contains("init_error_radius")) {
    out.cfg.init_error_radius =
        jsonu::require_number(j["init_error_radius"], "init_error_radius", errors, 0.0);
  }
  if (j.contains("validation_trials")) {
    out.cfg.validation_trials = static_cast<int>(
        jsonu::require_int(j["validation_trials"], "validation_trials", errors, 1));
  }
  if (!j.contains("certificates") || !j["certificates"].is_object()) {
    errors.push_back("certificates: expected an object keyed by subsets");
  } else {
    for (const auto& [key, c] : j["certificates"].items()) {
      SensorSet subset;
      try {
        subset = SensorSet::parse_key(key);
      } catch (const ConfigError& e) {
        errors.push_back("certificates." + key + ": " + e.what());
        continue;
      }
      IssCertificate cert;
      cert.c = jsonu::require_number(c.value("c", json()), "certificates." + key + ".c",
                                     errors, 1.0);
      cert.lambda = jsonu::require_number(c.value("lambda", json()),
                                          "certificates." + key + ".lambda", errors, 0.5);
      cert.gamma = jsonu::require_number(c.value("gamma", json()),
                                         "certificates." + key + ".gamma", errors);
      cert.epsilon = jsonu::require_number(c.value("epsilon", json()),
                                           "certificates." + key + ".epsilon", errors);
      cert.init_error_radius =
          jsonu::require_number(c.value("init_error_radius", json()),
                                "certificates." + key + ".init_error_radius", errors);
      cert.k_star = static_cast<int>(jsonu::require_int(
          c.value("k_star", json()), "certificates." + key + ".k_star", errors));
      cert.master_seed = static_cast<std::uint64_t>(jsonu::require_int(
          c.value("master_seed", json()), "certificates." + key + ".master_seed", errors));
      cert.trials = static_cast<int>(jsonu::require_int(
          c.value("trials", json()), "certificates." + key + ".trials", errors));
      cert.horizon = static_cast<int>(jsonu::require_int(
          c.value("horizon", json()), "certificates." + key + ".horizon", errors));
      cert.safety_factor =
          jsonu::require_number(c.value("safety_factor", json()),
                                "certificates." + key + ".safety_factor", errors, 1.0);
      if (errors.empty()) cert.validate(key);
      out.certs[subset] = cert;
    }
  }
  if (!errors.empty()) throw ConfigError("invalid certificate file " + path.string(), errors);
  return out;
}

}  // namespace fdi::certify
