#pragma once

#include <map>
#include <vector>

#include "fdibank/observer.hpp"
#include "fdibank/scenario.hpp"

namespace fdi::sim {

/// Per-step log of one co-simulation: plant state, measurement decomposition
/// and every bank member's estimate, aligned so xhat[m][k] estimates x[k].
struct RunTrace {
  int horizon = 0;
  int n = 0, p = 0;

  std::vector<Vec> x;   // x(k)
  std::vector<double> u;
  std::vector<Vec> y;   // y~(k) = C x + a + m~
  std::vector<Vec> a;   // attack vector
  std::vector<Vec> m;   // noise vector

  std::vector<std::vector<Vec>> xhat;  // [member][k]

  // bank layout, copied for downstream evaluation
  SensorSet full_set;
  std::vector<SensorSet> detection_layer;
  std::vector<SensorSet> isolation_layer;
  std::map<SensorSet, int> member_index;
  std::vector<observer::Role> member_roles;

  const Vec& estimate(const SensorSet& subset, int k) const;
  Vec error(const SensorSet& subset, int k) const { return estimate(subset, k) - x[static_cast<std::size_t>(k)]; }
};

/// Run plant and bank for scenario.horizon steps. The bank is (re)initialized
/// from the scenario's init policies; all randomness derives from the
/// scenario seed, so identical scenarios replay bit-for-bit.
RunTrace simulate_run(const Scenario& scenario, observer::ObserverBank& bank);

}  // namespace fdi::sim
