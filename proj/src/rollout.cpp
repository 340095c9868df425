#include "rollout.hpp"

#include <cmath>

namespace fdi::certify::detail {

Rollout roll_pair(const observer::ObserverSpec& spec, const model::PlantModel& model,
                  const model::NoiseModel& noise, const model::AttackScenario& attack,
                  const model::InitPolicy& x0_policy, const model::InputSignal& input,
                  const RandomStream& x0_stream, const Vec& e0, int horizon) {
  Rollout out;
  out.err.resize(static_cast<std::size_t>(horizon));
  out.noise_sup.resize(static_cast<std::size_t>(horizon));
  out.e0 = e0.norm();

  Vec x = x0_policy.sample(x0_stream, model.n);
  Vec xhat = x + e0;
  double sup = 0.0;

  for (int k = 0; k < horizon; ++k) {
    const double err = (xhat - x).norm();
    out.err[static_cast<std::size_t>(k)] = err;
    if (!std::isfinite(err)) {
      out.finite = false;
      break;
    }
    const Vec m = noise.sample(k, model.p);
    const Vec m_J = model::restrict(m, spec.subset);
    sup = std::max(sup, m_J.cwiseAbs().maxCoeff());
    out.noise_sup[static_cast<std::size_t>(k)] = sup;

    const double u = input.at(k);
    const Vec y = model.C * x + attack.vector_at(k, model.p) + m;
    xhat = observer_step(spec, model, xhat, y, u);
    x = model::plant_step(model, x, u);
  }
  return out;
}

}  // namespace fdi::certify::detail
