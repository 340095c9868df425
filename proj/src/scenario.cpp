#include "fdibank/scenario.hpp"

#include <optional>

#include "fdibank/errors.hpp"
#include "json_util.hpp"

namespace fdi {

using jsonu::json;

void Scenario::rebind_streams() {
  noise.stream = RandomStream(seed, "noise");
  for (auto& sig : attack.signals) {
    sig.stream = RandomStream(seed, "attack/" + std::to_string(sig.sensor));
  }
  certification.master_seed = seed;
  certification.epsilon = epsilon;
  certification.init_error_radius =
      init_estimate.kind == model::EstimateInit::Kind::Ball ? init_estimate.radius : 0.0;
}

Vec Scenario::sample_x0() const {
  return init_state.sample(RandomStream(seed, "init/state"), plant.n);
}

Vec Scenario::sample_xhat0(const Vec& x0) const {
  return init_estimate.sample(RandomStream(seed, "init/estimate"), x0);
}

namespace {

model::AttackSignal parse_signal(const json& j, const std::string& field,
                                 std::vector<std::string>& errors) {
  model::AttackSignal sig;
  sig.sensor = static_cast<int>(jsonu::require_int(j.value("sensor", json()),
                                                   field + ".sensor", errors, 1));
  const std::string kind = jsonu::require_string(j.value("kind", json()), field + ".kind",
                                                 errors, "uniform");
  if (kind == "uniform") {
    sig.kind = model::AttackSignal::Kind::Uniform;
    sig.low = jsonu::require_number(j.value("low", json()), field + ".low", errors);
    sig.high = jsonu::require_number(j.value("high", json()), field + ".high", errors);
    if (sig.low > sig.high) errors.push_back(field + ": low must not exceed high");
  } else if (kind == "constant") {
    sig.kind = model::AttackSignal::Kind::Constant;
    sig.value = jsonu::require_number(j.value("value", json()), field + ".value", errors);
  } else if (kind == "ramp") {
    sig.kind = model::AttackSignal::Kind::Ramp;
    sig.start = jsonu::require_number(j.value("start", json()), field + ".start", errors);
    sig.slope = jsonu::require_number(j.value("slope", json()), field + ".slope", errors);
  } else {
    errors.push_back(field + ".kind: unknown generator '" + kind +
                     "' (uniform, constant, ramp)");
  }
  return sig;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path,
                       const ScenarioOverrides& overrides) {
  const json j = jsonu::load_json_file(path);
  std::vector<std::string> errors;
  Scenario sc;

  sc.name = j.contains("name") ? jsonu::require_string(j["name"], "name", errors)
                               : path.stem().string();

  // dimensions
  int n = 0, r = 0, p = 0;
  if (!j.contains("dimensions")) {
    errors.push_back("dimensions: missing section");
  } else {
    const auto& d = j["dimensions"];
    n = static_cast<int>(jsonu::require_int(d.value("n", json()), "dimensions.n", errors, 1));
    r = static_cast<int>(jsonu::require_int(d.value("r", json()), "dimensions.r", errors, 1));
    p = static_cast<int>(jsonu::require_int(d.value("p", json()), "dimensions.p", errors, 1));
    if (n < 1) errors.push_back("dimensions.n: must be positive");
    if (r < 1) errors.push_back("dimensions.r: must be positive");
    if (p < 1) errors.push_back("dimensions.p: must be positive");
  }

  // matrices + nonlinearity
  Mat A, G, H, C, B;
  if (!j.contains("matrices")) {
    errors.push_back("matrices: missing section");
  } else {
    const auto& m = j["matrices"];
    A = jsonu::parse_matrix(m.value("A", json()), "matrices.A", n, n, errors);
    G = jsonu::parse_matrix(m.value("G", json()), "matrices.G", n, r, errors);
    H = jsonu::parse_matrix(m.value("H", json()), "matrices.H", r, n, errors);
    C = jsonu::parse_matrix(m.value("C", json()), "matrices.C", p, n, errors);
    if (m.contains("B")) {
      B = jsonu::parse_matrix(m["B"], "matrices.B", n, 1, errors);
    } else {
      B = Mat::Zero(n, 1);
    }
  }

  model::Nonlinearity f;
  if (j.contains("nonlinearity")) {
    const auto& nl = j["nonlinearity"];
    const std::string fname =
        jsonu::require_string(nl.value("name", json()), "nonlinearity.name", errors, "zero");
    std::map<std::string, double> params;
    for (const auto& [k, v] : nl.items()) {
      if (k == "name") continue;
      params[k] = jsonu::require_number(v, "nonlinearity." + k, errors);
    }
    try {
      f = model::Nonlinearity::from_config(fname, params);
    } catch (const ConfigError& e) {
      errors.push_back(std::string("nonlinearity: ") + e.what());
    }
  }

  // noise {m_bar, tau, kind, seed}
  double m_bar = 0.0, tau = 1.0;
  auto noise_kind = model::NoiseModel::Kind::Uniform;
  if (!j.contains("noise")) {
    errors.push_back("noise: missing section");
  } else {
    const auto& nz = j["noise"];
    m_bar = jsonu::require_number(nz.value("m_bar", json()), "noise.m_bar", errors);
    if (nz.contains("tau")) tau = jsonu::require_number(nz["tau"], "noise.tau", errors, 1.0);
    if (nz.contains("kind")) {
      const std::string k = jsonu::require_string(nz["kind"], "noise.kind", errors, "uniform");
      if (k == "uniform") {
        noise_kind = model::NoiseModel::Kind::Uniform;
      } else if (k == "none") {
        noise_kind = model::NoiseModel::Kind::None;
      } else {
        errors.push_back("noise.kind: unknown kind '" + k + "' (uniform, none)");
      }
    }
    if (nz.contains("seed")) {
      sc.seed = static_cast<std::uint64_t>(
          jsonu::require_int(nz["seed"], "noise.seed", errors));
    }
    if (m_bar <= 0.0) errors.push_back("noise.m_bar: must be positive");
    if (!(tau > 0.0 && tau <= 1.0)) errors.push_back("noise.tau: must lie in (0, 1]");
  }

  // scalars
  sc.q = static_cast<int>(jsonu::require_int(j.value("q", json()), "q", errors));
  sc.horizon = static_cast<int>(jsonu::require_int(j.value("horizon", json()), "horizon",
                                                   errors, 1));
  sc.window_size =
      static_cast<int>(jsonu::require_int(j.value("N", json()), "N", errors, 1));
  if (j.contains("epsilon")) {
    sc.epsilon = jsonu::require_number(j["epsilon"], "epsilon", errors);
  }
  if (sc.horizon < 1) errors.push_back("horizon: must be >= 1");
  if (sc.window_size < 1) errors.push_back("N: must be >= 1");
  if (sc.q < 0) errors.push_back("q: must be nonnegative");
  if (sc.q > 0 && 2 * sc.q >= p) errors.push_back("q: must satisfy q < p/2");
  if (sc.epsilon < 0.0) errors.push_back("epsilon: must be nonnegative");

  // attack {W, signals}
  SensorSet W;
  std::vector<model::AttackSignal> signals;
  if (j.contains("attack")) {
    const auto& at = j["attack"];
    if (at.contains("W")) {
      if (!at["W"].is_array()) {
        errors.push_back("attack.W: expected a list of sensor indices");
      } else {
        std::vector<int> idx;
        for (const auto& v : at["W"]) {
          idx.push_back(static_cast<int>(jsonu::require_int(v, "attack.W", errors)));
        }
        try {
          W = SensorSet(idx);
        } catch (const ConfigError& e) {
          errors.push_back(std::string("attack.W: ") + e.what());
        }
      }
    }
    if (at.contains("signals")) {
      if (!at["signals"].is_array()) {
        errors.push_back("attack.signals: expected a list");
      } else {
        int i = 0;
        for (const auto& s : at["signals"]) {
          signals.push_back(
              parse_signal(s, "attack.signals[" + std::to_string(i) + "]", errors));
          ++i;
        }
      }
    }
  }

  // input
  if (j.contains("input")) {
    const auto& in = j["input"];
    const std::string kind =
        jsonu::require_string(in.value("kind", json()), "input.kind", errors, "zero");
    if (kind == "zero") {
      sc.input.kind = model::InputSignal::Kind::Zero;
    } else if (kind == "constant") {
      sc.input.kind = model::InputSignal::Kind::Constant;
      sc.input.value = jsonu::require_number(in.value("value", json()), "input.value", errors);
    } else if (kind == "sinusoid") {
      sc.input.kind = model::InputSignal::Kind::Sinusoid;
      sc.input.amplitude =
          jsonu::require_number(in.value("amplitude", json()), "input.amplitude", errors);
      sc.input.period =
          jsonu::require_number(in.value("period", json()), "input.period", errors, 1.0);
      if (in.contains("phase")) {
        sc.input.phase = jsonu::require_number(in["phase"], "input.phase", errors);
      }
      if (sc.input.period <= 0.0) errors.push_back("input.period: must be positive");
    } else {
      errors.push_back("input.kind: unknown kind '" + kind +
                       "' (zero, constant, sinusoid)");
    }
  }

  // init
  if (j.contains("init")) {
    const auto& init = j["init"];
    if (init.contains("state")) {
      const auto& st = init["state"];
      const std::string kind = jsonu::require_string(st.value("kind", json()),
                                                     "init.state.kind", errors,
                                                     "standard_normal");
      if (kind == "standard_normal") {
        sc.init_state.kind = model::InitPolicy::Kind::StandardNormal;
      } else if (kind == "fixed") {
        sc.init_state.kind = model::InitPolicy::Kind::Fixed;
        sc.init_state.fixed =
            jsonu::parse_vector(st.value("value", json()), "init.state.value", n, errors);
      } else {
        errors.push_back("init.state.kind: unknown kind '" + kind +
                         "' (standard_normal, fixed)");
      }
    }
    if (init.contains("estimate")) {
      const auto& es = init["estimate"];
      const std::string kind = jsonu::require_string(es.value("kind", json()),
                                                     "init.estimate.kind", errors,
                                                     "copy_state");
      if (kind == "copy_state") {
        sc.init_estimate.kind = model::EstimateInit::Kind::CopyState;
      } else if (kind == "fixed") {
        sc.init_estimate.kind = model::EstimateInit::Kind::Fixed;
        sc.init_estimate.fixed =
            jsonu::parse_vector(es.value("value", json()), "init.estimate.value", n, errors);
      } else if (kind == "ball") {
        sc.init_estimate.kind = model::EstimateInit::Kind::Ball;
        sc.init_estimate.radius =
            jsonu::require_number(es.value("radius", json()), "init.estimate.radius", errors);
        if (sc.init_estimate.radius < 0.0) {
          errors.push_back("init.estimate.radius: must be nonnegative");
        }
      } else {
        errors.push_back("init.estimate.kind: unknown kind '" + kind +
                         "' (copy_state, fixed, ball)");
      }
    }
  }
  if (sc.init_estimate.kind != model::EstimateInit::Kind::CopyState && sc.epsilon <= 0.0) {
    errors.push_back(
        "epsilon: must be positive when the estimate is not initialized at the true state");
  }

  // certification settings
  if (j.contains("certification")) {
    const auto& ct = j["certification"];
    if (ct.contains("trials")) {
      sc.certification.trials = static_cast<int>(
          jsonu::require_int(ct["trials"], "certification.trials", errors, 1));
    }
    if (ct.contains("horizon")) {
      sc.certification.horizon = static_cast<int>(
          jsonu::require_int(ct["horizon"], "certification.horizon", errors, 8));
    }
    if (ct.contains("safety_factor")) {
      sc.certification.safety_factor = jsonu::require_number(
          ct["safety_factor"], "certification.safety_factor", errors, 1.2);
    }
    if (ct.contains("fit_radius")) {
      sc.certification.fit_radius =
          jsonu::require_number(ct["fit_radius"], "certification.fit_radius", errors, 1.0);
    }
    if (ct.contains("validation_trials")) {
      sc.certification.validation_trials = static_cast<int>(jsonu::require_int(
          ct["validation_trials"], "certification.validation_trials", errors, 1));
    }
    if (sc.certification.trials < 1) errors.push_back("certification.trials: must be >= 1");
    if (sc.certification.horizon < 8) {
      errors.push_back("certification.horizon: must be >= 8");
    }
    if (sc.certification.safety_factor < 1.0) {
      errors.push_back("certification.safety_factor: must be >= 1");
    }
    if (sc.certification.fit_radius < 0.0) {
      errors.push_back("certification.fit_radius: must be nonnegative");
    }
    if (sc.certification.validation_trials < 1) {
      errors.push_back("certification.validation_trials: must be >= 1");
    }
  }

  // overrides (range-validated like the file fields)
  if (overrides.window_size) {
    if (*overrides.window_size < 1) errors.push_back("override N: must be >= 1");
    sc.window_size = *overrides.window_size;
  }
  if (overrides.horizon) {
    if (*overrides.horizon < 1) errors.push_back("override horizon: must be >= 1");
    sc.horizon = *overrides.horizon;
  }
  if (overrides.seed) sc.seed = *overrides.seed;
  if (overrides.tau) {
    if (!(*overrides.tau > 0.0 && *overrides.tau <= 1.0)) {
      errors.push_back("override tau: must lie in (0, 1]");
    }
    tau = *overrides.tau;
  }
  if (overrides.safety_factor) {
    if (*overrides.safety_factor < 1.0) {
      errors.push_back("override safety_factor: must be >= 1");
    }
    sc.certification.safety_factor = *overrides.safety_factor;
  }

  if (!errors.empty()) {
    throw ConfigError("invalid scenario " + path.string(), errors);
  }

  // assemble validated pieces (these throw ConfigError on their own checks)
  try {
    sc.plant = model::PlantModel::make(std::move(A), std::move(G), std::move(H),
                                       std::move(C), std::move(B), f);
    sc.noise = model::NoiseModel::make(noise_kind, m_bar, tau, {});
    sc.attack = model::AttackScenario::make(W, std::move(signals), sc.q, p);
  } catch (const ConfigError& e) {
    std::vector<std::string> det = e.details();
    det.insert(det.begin(), e.what());
    throw ConfigError("invalid scenario " + path.string(), det);
  }
  sc.rebind_streams();
  return sc;
}

}  // namespace fdi
