#pragma once

#include <map>
#include <string>

#include "fdibank/linalg.hpp"

namespace fdi::model {

/// Componentwise scalar map applied to each entry of Hx. Only named entries
/// from the registry below can appear in scenario files; arbitrary expressions
/// are rejected at parse time.
///
/// Registry: "zero", "identity", "sine" (amplitude*sin(frequency*s)),
/// "tanh" (amplitude*tanh(gain*s)), "saturation" (clamp to [-limit, limit]).
class Nonlinearity {
 public:
  Nonlinearity() : kind_(Kind::Zero) {}

  static Nonlinearity zero();
  static Nonlinearity identity();
  static Nonlinearity sine(double amplitude = 1.0, double frequency = 1.0);
  static Nonlinearity hyperbolic_tangent(double amplitude = 1.0, double gain = 1.0);
  static Nonlinearity saturation(double limit = 1.0);

  /// Look up by registry name with a flat parameter map. Unknown names or
  /// parameters throw ConfigError.
  static Nonlinearity from_config(const std::string& name,
                                  const std::map<std::string, double>& params);

  double operator()(double s) const;

  /// Entrywise application; entry i depends only on entry i of w.
  Vec apply(const Vec& w) const;

  /// [min, max] of the map's slope over all arguments (sector bound).
  std::pair<double, double> slope_range() const;

  const std::string& name() const { return name_; }
  std::map<std::string, double> params() const;

 private:
  enum class Kind { Zero, Identity, Sine, Tanh, Saturation };

  Kind kind_;
  std::string name_ = "zero";
  double a_ = 1.0;  // amplitude / limit
  double b_ = 1.0;  // frequency / gain
};

}  // namespace fdi::model
