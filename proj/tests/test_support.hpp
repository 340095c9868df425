#pragma once

// Shared fixtures: the two-state four-sensor example plant used across the
// test suites, plus small helpers.

#include <map>
#include <string>

#include "fdibank/model.hpp"
#include "fdibank/rng.hpp"

namespace testsup {

using fdi::Mat;
using fdi::Vec;

/// x+ = [[1, d],[0, 1]] x + [d a/2; d a] sin(x1 + x2) + [d; d] u, four sensors.
inline fdi::model::PlantModel example_plant(double delta = 0.1, double alpha = 1.0) {
  Mat A(2, 2), G(2, 1), H(1, 2), C(4, 2), B(2, 1);
  A << 1.0, delta, 0.0, 1.0;
  G << 0.5 * delta * alpha, delta * alpha;
  H << 1.0, 1.0;
  C << 3.0, 0.3, 3.0, 0.6, 6.0, 0.9, 1.2, 12.0;
  B << delta, delta;
  return fdi::model::PlantModel::make(A, G, H, C, B, fdi::model::Nonlinearity::sine());
}

inline fdi::model::NoiseModel no_noise(double m_bar = 0.5) {
  return fdi::model::NoiseModel::make(fdi::model::NoiseModel::Kind::None, m_bar, 1.0, {});
}

inline fdi::model::NoiseModel uniform_noise(double m_bar, double tau, std::uint64_t seed,
                                            const std::string& label = "noise") {
  return fdi::model::NoiseModel::make(fdi::model::NoiseModel::Kind::Uniform, m_bar, tau,
                                      fdi::RandomStream(seed, label));
}

}  // namespace testsup
