#include "fdibank/trace.hpp"

#include <cmath>

#include "fdibank/errors.hpp"

namespace fdi::sim {

const Vec& RunTrace::estimate(const SensorSet& subset, int k) const {
  auto it = member_index.find(subset);
  if (it == member_index.end()) {
    throw std::logic_error("trace has no member for subset {" + subset.key() + "}");
  }
  return xhat[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(k)];
}

RunTrace simulate_run(const Scenario& scenario, observer::ObserverBank& bank) {
  const auto& plant = scenario.plant;
  if (bank.p != plant.p || bank.n != plant.n) {
    throw ConfigError("bank does not match the scenario plant dimensions");
  }
  if (scenario.horizon < 1) throw ConfigError("horizon must be >= 1");

  RunTrace tr;
  tr.horizon = scenario.horizon;
  tr.n = plant.n;
  tr.p = plant.p;
  tr.full_set = bank.full_set;
  tr.detection_layer = bank.detection_layer;
  tr.isolation_layer = bank.isolation_layer;
  tr.member_index = bank.member_index;
  for (const auto& mbr : bank.members) tr.member_roles.push_back(mbr.role);

  const std::size_t H = static_cast<std::size_t>(scenario.horizon);
  tr.x.resize(H);
  tr.u.resize(H);
  tr.y.resize(H);
  tr.a.resize(H);
  tr.m.resize(H);
  tr.xhat.assign(static_cast<std::size_t>(bank.size()), std::vector<Vec>(H));

  Vec x = scenario.sample_x0();
  bank.initialize(scenario.sample_xhat0(x));

  for (int k = 0; k < scenario.horizon; ++k) {
    const std::size_t ks = static_cast<std::size_t>(k);
    const Vec a = scenario.attack.vector_at(k, plant.p);
    const Vec m = scenario.noise.sample(k, plant.p);
    const Vec y = model::measure(plant, x, a, m);
    const double u = scenario.input.at(k);

    tr.x[ks] = x;
    tr.u[ks] = u;
    tr.y[ks] = y;
    tr.a[ks] = a;
    tr.m[ks] = m;
    for (int i = 0; i < bank.size(); ++i) {
      tr.xhat[static_cast<std::size_t>(i)][ks] = bank.states[static_cast<std::size_t>(i)];
    }

    observer::step_bank(bank, plant, y, u);
    x = model::plant_step(plant, x, u);
    if (!x.allFinite()) {
      throw RunError("plant state diverged to non-finite values at step " +
                     std::to_string(k));
    }
  }
  return tr;
}

}  // namespace fdi::sim
