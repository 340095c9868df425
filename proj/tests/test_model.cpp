#include <cmath>
#include <doctest.h>

#include "fdibank/errors.hpp"
#include "fdibank/model.hpp"
#include "test_support.hpp"

using namespace fdi;
using namespace fdi::model;
using testsup::example_plant;

TEST_SUITE("model") {

TEST_CASE("plant_step at the origin with no input is a fixed point") {
  const PlantModel plant = example_plant();
  const Vec x = Vec::Zero(2);
  CHECK(plant_step(plant, x, 0.0) == Vec::Zero(2));
}

TEST_CASE("plant_step matches independent scalar evaluation") {
  // independently evaluated: x+ = (x1 + d*x2 + (d*a/2) sin(x1+x2) + d*u,
  //                                x2 + d*a sin(x1+x2) + d*u)
  const double delta = 0.1, alpha = 1.0;
  const PlantModel plant = example_plant(delta, alpha);

  Vec x(2);
  x << 1.0, 0.0;
  const Vec next = plant_step(plant, x, 0.0);
  const double s = std::sin(1.0 + 0.0);
  CHECK(next[0] == doctest::Approx(1.0 + delta * 0.0 + 0.5 * delta * alpha * s).epsilon(1e-15));
  CHECK(next[1] == doctest::Approx(0.0 + delta * alpha * s).epsilon(1e-15));

  // sin(0) = 0 leaves only the d*u terms
  const Vec from_zero = plant_step(plant, Vec::Zero(2), 1.0);
  CHECK(from_zero[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(from_zero[1] == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("plant_step rejects mismatched state length") {
  const PlantModel plant = example_plant();
  CHECK_THROWS_AS(plant_step(plant, Vec::Zero(3), 0.0), ConfigError);
}

TEST_CASE("PlantModel::make rejects inconsistent dimensions") {
  Mat A(2, 2), G(2, 1), H(1, 2), C(4, 2), B(2, 1);
  A.setIdentity();
  G.setZero();
  H.setZero();
  C.setZero();
  B.setZero();
  Mat H_bad(1, 3);
  H_bad.setZero();
  CHECK_THROWS_AS(PlantModel::make(A, G, H_bad, C, B, Nonlinearity::zero()), ConfigError);
  Mat B_bad(2, 2);
  B_bad.setZero();
  CHECK_THROWS_AS(PlantModel::make(A, G, H, C, B_bad, Nonlinearity::zero()), ConfigError);
}

TEST_CASE("measure without attack or noise is exactly Cx") {
  const PlantModel plant = example_plant();
  const AttackScenario attack = AttackScenario::none(1);
  const NoiseModel noise = testsup::no_noise();

  Vec x(2);
  x << 1.0, 0.0;
  const Vec y = measure(plant, x, attack, noise, 0);
  CHECK(y == plant.C * x);

  // first column of the output matrix
  CHECK(y[0] == 3.0);
  CHECK(y[1] == 3.0);
  CHECK(y[2] == 6.0);
  CHECK(y[3] == 1.2);
}

TEST_CASE("measure adds the attack only on W") {
  const PlantModel plant = example_plant();
  AttackSignal sig;
  sig.sensor = 2;
  sig.kind = AttackSignal::Kind::Constant;
  sig.value = 10.0;
  const AttackScenario attack =
      AttackScenario::make(SensorSet({2}), {sig}, 1, plant.p);
  const Vec y = measure(plant, Vec::Zero(2), attack, testsup::no_noise(), 3);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 10.0);
  CHECK(y[2] == 0.0);
  CHECK(y[3] == 0.0);
}

TEST_CASE("attack support stays inside W across random scenarios") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AttackSignal sig;
    sig.sensor = 3;
    sig.kind = AttackSignal::Kind::Uniform;
    sig.low = -2.0;
    sig.high = 2.0;
    sig.stream = RandomStream(seed, "attack/3");
    const AttackScenario attack = AttackScenario::make(SensorSet({3}), {sig}, 1, 4);
    for (int k = 0; k < 50; ++k) {
      const Vec a = attack.vector_at(k, 4);
      CHECK(a[0] == 0.0);
      CHECK(a[1] == 0.0);
      CHECK(a[3] == 0.0);
    }
  }
}

TEST_CASE("attack scenario validation") {
  CHECK_THROWS_AS(AttackScenario::make(SensorSet({1, 2}), {}, 1, 4), ConfigError);
  // q < p/2 required so p - 2q > 0
  AttackSignal sig;
  sig.sensor = 1;
  sig.kind = AttackSignal::Kind::Constant;
  CHECK_THROWS_AS(AttackScenario::make(SensorSet({1}), {sig}, 2, 4), ConfigError);
  CHECK_THROWS_AS(AttackScenario::make(SensorSet({5}), {sig}, 1, 4), ConfigError);
}

TEST_CASE("noise sequences are seed-deterministic and bounded") {
  const double m_bar = 0.5, tau = 0.8;
  const NoiseModel a = testsup::uniform_noise(m_bar, tau, 99);
  const NoiseModel b = testsup::uniform_noise(m_bar, tau, 99);
  const NoiseModel c = testsup::uniform_noise(m_bar, tau, 100);
  bool any_different = false;
  for (int k = 0; k < 200; ++k) {
    const Vec ma = a.sample(k, 4);
    CHECK(ma == b.sample(k, 4));
    if (ma != c.sample(k, 4)) any_different = true;
    CHECK(ma.cwiseAbs().maxCoeff() <= tau * m_bar);
  }
  CHECK(any_different);
}

TEST_CASE("noise model validation") {
  CHECK_THROWS_AS(NoiseModel::make(NoiseModel::Kind::Uniform, 0.0, 1.0, {}), ConfigError);
  CHECK_THROWS_AS(NoiseModel::make(NoiseModel::Kind::Uniform, 0.5, 0.0, {}), ConfigError);
  CHECK_THROWS_AS(NoiseModel::make(NoiseModel::Kind::Uniform, 0.5, 1.5, {}), ConfigError);
}

TEST_CASE("restrict stacks the selected entries in ascending order") {
  Vec v(3);
  v << 7.0, 8.0, 9.0;
  CHECK(restrict(v, SensorSet({1, 2, 3})) == v);

  const Vec sub = restrict(v, SensorSet({1, 3}));
  REQUIRE(sub.size() == 2);
  CHECK(sub[0] == 7.0);
  CHECK(sub[1] == 9.0);
}

TEST_CASE("restrict_rows forms C_J") {
  const PlantModel plant = example_plant();
  const Mat C_J = restrict_rows(plant.C, SensorSet({2, 4}));
  REQUIRE(C_J.rows() == 2);
  CHECK(C_J(0, 0) == 3.0);
  CHECK(C_J(0, 1) == 0.6);
  CHECK(C_J(1, 0) == 1.2);
  CHECK(C_J(1, 1) == 12.0);
}

TEST_CASE("restrict rejects empty and out-of-range subsets") {
  Vec v(3);
  v << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(restrict(v, SensorSet()), ConfigError);
  CHECK_THROWS_AS(restrict(v, SensorSet({4})), ConfigError);
}

TEST_CASE("restricting by J then by positions inside J equals restricting by S") {
  const RandomStream s(3, "restrict-prop");
  std::uint64_t ctr = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const int p = 3 + static_cast<int>(s.bits(ctr++) % 5);  // 3..7
    Vec v(p);
    for (int i = 0; i < p; ++i) v[i] = s.uniform(ctr++, -10.0, 10.0);

    // random J with |J| >= 2, then random S inside J
    std::vector<int> j_idx;
    for (int i = 1; i <= p; ++i) {
      if (s.u01(ctr++) < 0.6) j_idx.push_back(i);
    }
    if (j_idx.size() < 2) continue;
    std::vector<int> s_idx, s_pos;
    for (std::size_t i = 0; i < j_idx.size(); ++i) {
      if (s.u01(ctr++) < 0.5) {
        s_idx.push_back(j_idx[i]);
        s_pos.push_back(static_cast<int>(i) + 1);  // 1-based position inside J
      }
    }
    if (s_idx.empty()) continue;

    const SensorSet J(j_idx), S(s_idx), S_in_J(s_pos);
    CHECK(restrict(restrict(v, J), S_in_J) == restrict(v, S));
  }
}

}  // TEST_SUITE
