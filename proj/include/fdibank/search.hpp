#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "fdibank/model.hpp"
#include "fdibank/observer.hpp"

namespace fdi::search {

/// Randomized observer-gain search. For each required subset it samples
/// (K, L) pairs, discards candidates whose linearized error dynamics are not
/// contracting, simulates attack-free rollouts, and keeps candidates whose
/// error obeys a geometric-decay envelope. Among the keepers it picks the one
/// with the smallest threshold-to-visibility ratio: the detection threshold
/// the candidate's own noise gain would imply, divided by its worst-channel
/// response to a single-sensor attack of `visibility_attack_scale * m_bar`.
/// Small ratios mean attacks on any driven sensor stand out above the noise
/// floor.
struct SearchConfig {
  int candidates = 60000;       // raw samples per subset
  int max_survivors = 300;      // rollout-checked candidates per subset
  double spectral_radius_cap = 0.97;
  double k_zero_probability = 0.5;
  double k_range = 0.25;        // K entries ~ U(-k_range, k_range)
  double l_scale_min = 0.005;   // per-candidate scale, log-uniform
  double l_scale_max = 2.0;     // L entries ~ U(-s, s)
  int fit_trials = 12;
  int fit_horizon = 400;
  double fit_radius = 1.5;
  double lambda_cap = 0.98;     // fitted decay rate must stay below this
  double envelope_cap = 40.0;   // envelope constant must stay below this
  int noise_trials = 6;
  int noise_horizon = 600;
  double visibility_attack_scale = 2.0;  // attack magnitude, in units of m_bar
  double pair_visibility_attack_scale = 4.0;  // ditto for assigned isolation pairs
  double single_channel_probability = 0.2;    // sample L with one nonzero column
  double placed_pole_probability = 0.5;       // sample poles, place L for one channel
  double pole_low = -0.6;
  double pole_high = 0.95;
  double threshold_safety = 1.05;        // mirrors the certification inflation
  int refine_top = 16;                   // candidates rescored with a thorough gamma
  int refine_trials = 30;
  int refine_horizon = 1000;
  std::uint64_t seed = 1;
  bool verbose = false;

  /// Optional specialist-channel assignment for detection-layer subsets,
  /// keyed by subset ("1,2,3" -> 2). Unassigned subsets specialize in
  /// whichever of their channels scores best.
  std::map<std::string, int> specialist_channels;
};

/// Search gains for the full set, every cardinality p-q and (for q >= 1)
/// every cardinality p-2q subset. Throws CertificationError naming the first
/// subset for which no candidate survives.
observer::GainTable search_gains(const model::PlantModel& model, int q,
                                 const model::NoiseModel& noise,
                                 const model::InitPolicy& x0_policy,
                                 const model::InputSignal& input,
                                 const SearchConfig& cfg);

}  // namespace fdi::search
