#pragma once

// Internal: plant + single-observer rollouts shared by the certification
// estimator and the gain search.

#include <vector>

#include "fdibank/model.hpp"
#include "fdibank/observer.hpp"
#include "fdibank/rng.hpp"

namespace fdi::certify::detail {

struct Rollout {
  double e0 = 0.0;                // |e(0)|
  std::vector<double> err;        // |e(k)| for k = 0..horizon-1
  std::vector<double> noise_sup;  // sup_{j<=k} max_i |m~_J,i(j)|
  bool finite = true;
};

/// Simulate the pair (plant, observer) for `horizon` steps. x(0) from
/// x0_policy via `x0_stream`; xhat(0) = x(0) + e0 (caller-drawn); measurement
/// noise from `noise` (Kind::None for noiseless runs); `attack` adds the
/// attack vector to the measurement (AttackScenario::none() for none).
Rollout roll_pair(const observer::ObserverSpec& spec, const model::PlantModel& model,
                  const model::NoiseModel& noise, const model::AttackScenario& attack,
                  const model::InitPolicy& x0_policy, const model::InputSignal& input,
                  const RandomStream& x0_stream, const Vec& e0, int horizon);

}  // namespace fdi::certify::detail
