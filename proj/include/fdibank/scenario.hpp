#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "fdibank/certify.hpp"
#include "fdibank/model.hpp"

namespace fdi {

/// Everything one run needs, as parsed from a scenario file. All randomness
/// (noise, attacks, initial state, certification trials) derives from `seed`.
struct Scenario {
  std::string name;

  model::PlantModel plant;
  model::NoiseModel noise;          // stream assigned from `seed` at load time
  model::AttackScenario attack;
  model::InitPolicy init_state;
  model::EstimateInit init_estimate;
  model::InputSignal input;

  int q = 0;
  int horizon = 0;
  int window_size = 0;  // N
  double epsilon = 0.0;
  std::uint64_t seed = 0;

  certify::CertifyConfig certification;

  /// Re-derive the per-purpose random streams after a seed or tau override.
  void rebind_streams();

  /// x(0) for this run.
  Vec sample_x0() const;
  /// xhat(0) shared by all bank members, given x(0).
  Vec sample_xhat0(const Vec& x0) const;
};

/// Optional command-line overrides applied after parsing.
struct ScenarioOverrides {
  std::optional<int> window_size;
  std::optional<int> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<double> tau;
  std::optional<double> safety_factor;
};

/// Parse and validate a scenario file; validation failures are collected and
/// reported together with field paths.
Scenario load_scenario(const std::filesystem::path& path,
                       const ScenarioOverrides& overrides = {});

}  // namespace fdi
