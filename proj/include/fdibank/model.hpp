#pragma once

#include <cstdint>
#include <vector>

#include "fdibank/linalg.hpp"
#include "fdibank/nonlinearity.hpp"
#include "fdibank/rng.hpp"
#include "fdibank/sensor_set.hpp"

namespace fdi::model {

/// Discrete-time plant
///   x+ = A x + G f(H x) + B u,     y~ = C x + a + m~
/// with componentwise nonlinearity f and scalar exogenous input u.
/// The exogenous term is restricted to the linear form B*u.
struct PlantModel {
  int n = 0;  // states
  int r = 0;  // nonlinearity channels
  int p = 0;  // sensors

  Mat A;  // n x n
  Mat G;  // n x r
  Mat H;  // r x n
  Mat C;  // p x n
  Mat B;  // n x 1
  Nonlinearity f;

  /// Validates mutual dimension consistency; throws ConfigError.
  static PlantModel make(Mat A, Mat G, Mat H, Mat C, Mat B, Nonlinearity f);
};

/// Bounded measurement noise. Samples are componentwise |m_i(k)| <= tau*m_bar;
/// identical stream keys reproduce identical sequences.
struct NoiseModel {
  enum class Kind { None, Uniform };

  Kind kind = Kind::Uniform;
  double m_bar = 0.0;  // known bound, > 0
  double tau = 1.0;    // actual scale, in (0, 1]
  RandomStream stream;

  static NoiseModel make(Kind kind, double m_bar, double tau, RandomStream stream);

  /// Noise vector for step k. Counter layout: draw k*p + i for component i.
  Vec sample(int k, int p) const;

  /// Same noise model on a different stream (e.g. certification trials).
  NoiseModel with_stream(RandomStream s) const;
};

/// One attacked sensor's signal generator.
struct AttackSignal {
  enum class Kind { Uniform, Constant, Ramp };

  int sensor = 0;  // 1-based
  Kind kind = Kind::Uniform;
  double low = 0.0, high = 0.0;   // uniform
  double value = 0.0;             // constant
  double start = 0.0, slope = 0.0;  // ramp: start + slope*k
  RandomStream stream;

  double at(int k) const;
};

/// Attacked-sensor set W with per-sensor signals; a_i(k) == 0 for i not in W.
struct AttackScenario {
  SensorSet attacked;                 // W
  std::vector<AttackSignal> signals;  // one per element of W, same order
  int q_bound = 0;                    // card(W) <= q_bound

  /// Validates supp(signals) == W, card(W) <= q, q < p/2 (for q >= 1).
  static AttackScenario make(SensorSet attacked, std::vector<AttackSignal> signals,
                             int q_bound, int p);

  static AttackScenario none(int q_bound = 0);

  Vec vector_at(int k, int p) const;
};

/// Initial plant state policy.
struct InitPolicy {
  enum class Kind { StandardNormal, Fixed };
  Kind kind = Kind::StandardNormal;
  Vec fixed;

  Vec sample(const RandomStream& stream, int n) const;
};

/// Initial estimate policy shared by every bank member.
struct EstimateInit {
  enum class Kind { CopyState, Fixed, Ball };
  Kind kind = Kind::CopyState;
  Vec fixed;
  double radius = 0.0;  // Ball: x(0) + uniform draw from |d| <= radius

  Vec sample(const RandomStream& stream, const Vec& x0) const;
};

/// Scalar exogenous input sequence u(k).
struct InputSignal {
  enum class Kind { Zero, Constant, Sinusoid };
  Kind kind = Kind::Zero;
  double value = 0.0;                   // constant
  double amplitude = 0.0, period = 1.0, phase = 0.0;  // sinusoid

  double at(int k) const;
};

/// x+ = A x + G f(H x) + B u.
Vec plant_step(const PlantModel& model, const Vec& x, double u);

/// y~ = C x + a(k) + m~(k). Components of a outside W are exactly zero.
Vec measure(const PlantModel& model, const Vec& x, const AttackScenario& attack,
            const NoiseModel& noise, int k);

/// Same, from precomputed attack/noise vectors (used when logging them).
Vec measure(const PlantModel& model, const Vec& x, const Vec& a, const Vec& m);

/// Stack entries of v indexed by J (ascending). Throws ConfigError on empty J
/// or out-of-range index.
Vec restrict(const Vec& v, const SensorSet& J);

/// Stack rows of M indexed by J, e.g. C_J from C.
Mat restrict_rows(const Mat& M, const SensorSet& J);

/// Draw uniformly from the closed n-ball of given radius (normal direction,
/// radial CDF inversion). Counters: 2n per draw index.
Vec uniform_in_ball(const RandomStream& stream, std::uint64_t draw_index, int n,
                    double radius);

}  // namespace fdi::model
