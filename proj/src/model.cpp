#include "fdibank/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fdibank/errors.hpp"

namespace fdi::model {

PlantModel PlantModel::make(Mat A, Mat G, Mat H, Mat C, Mat B, Nonlinearity f) {
  PlantModel m;
  m.n = static_cast<int>(A.rows());
  m.r = static_cast<int>(G.cols());
  m.p = static_cast<int>(C.rows());

  std::vector<std::string> bad;
  if (m.n < 1) bad.push_back("matrices.A: must be nonempty square");
  if (A.cols() != m.n) bad.push_back("matrices.A: not square");
  if (G.rows() != m.n) bad.push_back("matrices.G: expected " + std::to_string(m.n) + " rows");
  if (m.r < 1) bad.push_back("matrices.G: must have at least one column");
  if (H.rows() != m.r || H.cols() != m.n)
    bad.push_back("matrices.H: expected " + std::to_string(m.r) + "x" + std::to_string(m.n));
  if (m.p < 1) bad.push_back("matrices.C: must have at least one row");
  if (C.cols() != m.n)
    bad.push_back("matrices.C: expected " + std::to_string(m.n) + " columns");
  if (B.rows() != m.n || B.cols() != 1)
    bad.push_back("matrices.B: expected " + std::to_string(m.n) + "x1");
  if (!bad.empty()) throw ConfigError("inconsistent plant dimensions", bad);

  m.A = std::move(A);
  m.G = std::move(G);
  m.H = std::move(H);
  m.C = std::move(C);
  m.B = std::move(B);
  m.f = std::move(f);
  return m;
}

NoiseModel NoiseModel::make(Kind kind, double m_bar, double tau, RandomStream stream) {
  if (m_bar <= 0.0) throw ConfigError("noise.m_bar must be positive");
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("noise.tau must lie in (0, 1]");
  NoiseModel nm;
  nm.kind = kind;
  nm.m_bar = m_bar;
  nm.tau = tau;
  nm.stream = stream;
  return nm;
}

Vec NoiseModel::sample(int k, int p) const {
  Vec m = Vec::Zero(p);
  if (kind == Kind::None) return m;
  const double scale = tau * m_bar;
  const std::uint64_t base = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(p);
  for (int i = 0; i < p; ++i) {
    m[i] = stream.uniform(base + static_cast<std::uint64_t>(i), -scale, scale);
  }
  return m;
}

NoiseModel NoiseModel::with_stream(RandomStream s) const {
  NoiseModel nm = *this;
  nm.stream = s;
  return nm;
}

double AttackSignal::at(int k) const {
  switch (kind) {
    case Kind::Uniform:
      return stream.uniform(static_cast<std::uint64_t>(k), low, high);
    case Kind::Constant:
      return value;
    case Kind::Ramp:
      return start + slope * static_cast<double>(k);
  }
  return 0.0;
}

AttackScenario AttackScenario::make(SensorSet attacked, std::vector<AttackSignal> signals,
                                    int q_bound, int p) {
  if (q_bound < 0) throw ConfigError("attack.q must be nonnegative");
  if (2 * q_bound >= p && q_bound > 0) {
    throw ConfigError("q = " + std::to_string(q_bound) + " violates q < p/2 (p = " +
                      std::to_string(p) + ", need p - 2q > 0)");
  }
  if (attacked.size() > q_bound) {
    throw ConfigError("attack.W has " + std::to_string(attacked.size()) +
                      " sensors but q = " + std::to_string(q_bound));
  }
  if (attacked.max_index() > p) {
    throw ConfigError("attack.W references sensor " + std::to_string(attacked.max_index()) +
                      " but p = " + std::to_string(p));
  }
  if (static_cast<int>(signals.size()) != attacked.size()) {
    throw ConfigError("attack.signals must define exactly one signal per attacked sensor");
  }
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (signals[i].sensor != attacked.indices()[i]) {
      throw ConfigError("attack.signals[" + std::to_string(i) + "]: sensor " +
                        std::to_string(signals[i].sensor) + " does not match W");
    }
  }
  AttackScenario a;
  a.attacked = std::move(attacked);
  a.signals = std::move(signals);
  a.q_bound = q_bound;
  return a;
}

AttackScenario AttackScenario::none(int q_bound) {
  AttackScenario a;
  a.q_bound = q_bound;
  return a;
}

Vec AttackScenario::vector_at(int k, int p) const {
  Vec a = Vec::Zero(p);
  for (const auto& sig : signals) a[sig.sensor - 1] = sig.at(k);
  return a;
}

Vec InitPolicy::sample(const RandomStream& stream, int n) const {
  if (kind == Kind::Fixed) {
    if (fixed.size() != n) throw ConfigError("init.state: fixed vector has wrong length");
    return fixed;
  }
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = stream.normal(static_cast<std::uint64_t>(i));
  return x;
}

Vec EstimateInit::sample(const RandomStream& stream, const Vec& x0) const {
  switch (kind) {
    case Kind::CopyState:
      return x0;
    case Kind::Fixed:
      if (fixed.size() != x0.size())
        throw ConfigError("init.estimate: fixed vector has wrong length");
      return fixed;
    case Kind::Ball:
      return x0 + uniform_in_ball(stream, 0, static_cast<int>(x0.size()), radius);
  }
  return x0;
}

double InputSignal::at(int k) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return value;
    case Kind::Sinusoid:
      return amplitude *
             std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / period + phase);
  }
  return 0.0;
}

Vec plant_step(const PlantModel& model, const Vec& x, double u) {
  if (x.size() != model.n) {
    throw ConfigError("plant_step: state has length " + std::to_string(x.size()) +
                      ", expected " + std::to_string(model.n));
  }
  return model.A * x + model.G * model.f.apply(model.H * x) + model.B * u;
}

Vec measure(const PlantModel& model, const Vec& x, const Vec& a, const Vec& m) {
  if (x.size() != model.n || a.size() != model.p || m.size() != model.p) {
    throw ConfigError("measure: dimension mismatch");
  }
  return model.C * x + a + m;
}

Vec measure(const PlantModel& model, const Vec& x, const AttackScenario& attack,
            const NoiseModel& noise, int k) {
  return measure(model, x, attack.vector_at(k, model.p), noise.sample(k, model.p));
}

Vec restrict(const Vec& v, const SensorSet& J) {
  if (J.empty()) throw ConfigError("restrict: subset must be nonempty");
  if (J.max_index() > v.size()) {
    throw ConfigError("restrict: index " + std::to_string(J.max_index()) +
                      " exceeds vector length " + std::to_string(v.size()));
  }
  Vec out(J.size());
  for (int i = 0; i < J.size(); ++i) out[i] = v[J.indices()[static_cast<std::size_t>(i)] - 1];
  return out;
}

Mat restrict_rows(const Mat& M, const SensorSet& J) {
  if (J.empty()) throw ConfigError("restrict_rows: subset must be nonempty");
  if (J.max_index() > M.rows()) {
    throw ConfigError("restrict_rows: index " + std::to_string(J.max_index()) +
                      " exceeds row count " + std::to_string(M.rows()));
  }
  Mat out(J.size(), M.cols());
  for (int i = 0; i < J.size(); ++i) {
    out.row(i) = M.row(J.indices()[static_cast<std::size_t>(i)] - 1);
  }
  return out;
}

Vec uniform_in_ball(const RandomStream& stream, std::uint64_t draw_index, int n,
                    double radius) {
  if (radius <= 0.0) return Vec::Zero(n);
  // Draw d uses normal counters [d*(n+1), d*(n+1)+n-1] (u01 pairs underneath)
  // and the u01 counter 2*(d*(n+1)+n), which no normal in any draw touches.
  const std::uint64_t nbase = draw_index * (static_cast<std::uint64_t>(n) + 1);
  Vec g(n);
  for (int i = 0; i < n; ++i) g[i] = stream.normal(nbase + static_cast<std::uint64_t>(i));
  const double norm = g.norm();
  if (norm == 0.0) return Vec::Zero(n);
  const double u = stream.u01(2 * (nbase + static_cast<std::uint64_t>(n)));
  const double rad = radius * std::pow(u, 1.0 / static_cast<double>(n));
  return (rad / norm) * g;
}

}  // namespace fdi::model
