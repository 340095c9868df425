#include "fdibank/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

#include "fdibank/errors.hpp"

namespace fdi::model {

Nonlinearity Nonlinearity::zero() {
  Nonlinearity f;
  f.kind_ = Kind::Zero;
  f.name_ = "zero";
  return f;
}

Nonlinearity Nonlinearity::identity() {
  Nonlinearity f;
  f.kind_ = Kind::Identity;
  f.name_ = "identity";
  return f;
}

Nonlinearity Nonlinearity::sine(double amplitude, double frequency) {
  Nonlinearity f;
  f.kind_ = Kind::Sine;
  f.name_ = "sine";
  f.a_ = amplitude;
  f.b_ = frequency;
  return f;
}

Nonlinearity Nonlinearity::hyperbolic_tangent(double amplitude, double gain) {
  Nonlinearity f;
  f.kind_ = Kind::Tanh;
  f.name_ = "tanh";
  f.a_ = amplitude;
  f.b_ = gain;
  return f;
}

Nonlinearity Nonlinearity::saturation(double limit) {
  Nonlinearity f;
  f.kind_ = Kind::Saturation;
  f.name_ = "saturation";
  f.a_ = limit;
  return f;
}

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& name,
                double fallback) {
  auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known, const std::string& fname) {
  for (const auto& [k, v] : params) {
    if (std::find_if(known.begin(), known.end(),
                     [&](const char* s) { return k == s; }) == known.end()) {
      throw ConfigError("nonlinearity '" + fname + "': unknown parameter '" + k + "'");
    }
  }
}

}  // namespace

Nonlinearity Nonlinearity::from_config(const std::string& name,
                                       const std::map<std::string, double>& params) {
  if (name == "zero") {
    reject_unknown(params, {}, name);
    return zero();
  }
  if (name == "identity") {
    reject_unknown(params, {}, name);
    return identity();
  }
  if (name == "sine") {
    reject_unknown(params, {"amplitude", "frequency"}, name);
    return sine(param_or(params, "amplitude", 1.0), param_or(params, "frequency", 1.0));
  }
  if (name == "tanh") {
    reject_unknown(params, {"amplitude", "gain"}, name);
    return hyperbolic_tangent(param_or(params, "amplitude", 1.0),
                              param_or(params, "gain", 1.0));
  }
  if (name == "saturation") {
    reject_unknown(params, {"limit"}, name);
    double limit = param_or(params, "limit", 1.0);
    if (limit <= 0.0) throw ConfigError("saturation limit must be positive");
    return saturation(limit);
  }
  throw ConfigError("unknown nonlinearity '" + name +
                    "' (registry: zero, identity, sine, tanh, saturation)");
}

double Nonlinearity::operator()(double s) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Identity:
      return s;
    case Kind::Sine:
      return a_ * std::sin(b_ * s);
    case Kind::Tanh:
      return a_ * std::tanh(b_ * s);
    case Kind::Saturation:
      return std::clamp(s, -a_, a_);
  }
  return 0.0;
}

Vec Nonlinearity::apply(const Vec& w) const {
  Vec out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) out[i] = (*this)(w[i]);
  return out;
}

std::pair<double, double> Nonlinearity::slope_range() const {
  switch (kind_) {
    case Kind::Zero:
      return {0.0, 0.0};
    case Kind::Identity:
      return {1.0, 1.0};
    case Kind::Sine:
      return {-std::abs(a_ * b_), std::abs(a_ * b_)};
    case Kind::Tanh:
      return {0.0, std::abs(a_ * b_)};
    case Kind::Saturation:
      return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

std::map<std::string, double> Nonlinearity::params() const {
  switch (kind_) {
    case Kind::Zero:
    case Kind::Identity:
      return {};
    case Kind::Sine:
      return {{"amplitude", a_}, {"frequency", b_}};
    case Kind::Tanh:
      return {{"amplitude", a_}, {"gain", b_}};
    case Kind::Saturation:
      return {{"limit", a_}};
  }
  return {};
}

}  // namespace fdi::model
