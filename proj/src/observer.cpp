#include "fdibank/observer.hpp"

#include <string>

#include "fdibank/errors.hpp"

namespace fdi::observer {

std::string role_name(Role role) {
  switch (role) {
    case Role::Full:
      return "full";
    case Role::Detection:
      return "detect";
    case Role::Isolation:
      return "isolate";
  }
  return "?";
}

ObserverSpec ObserverSpec::make(SensorSet subset, Mat K, Mat L, Role role, int n, int r) {
  const int card = subset.size();
  if (card < 1) throw ConfigError("observer subset must be nonempty");
  if (K.rows() != r || K.cols() != card) {
    throw ConfigError("gains for {" + subset.key() + "}: K must be " + std::to_string(r) +
                      "x" + std::to_string(card));
  }
  if (L.rows() != n || L.cols() != card) {
    throw ConfigError("gains for {" + subset.key() + "}: L must be " + std::to_string(n) +
                      "x" + std::to_string(card));
  }
  ObserverSpec spec;
  spec.subset = std::move(subset);
  spec.K = std::move(K);
  spec.L = std::move(L);
  spec.role = role;
  return spec;
}

void GainTable::insert(const SensorSet& subset, Mat K, Mat L) {
  entries_[subset] = GainEntry{std::move(K), std::move(L)};
}

bool GainTable::has(const SensorSet& subset) const { return entries_.contains(subset); }

const GainEntry& GainTable::at(const SensorSet& subset) const {
  auto it = entries_.find(subset);
  if (it == entries_.end()) {
    throw ConfigError("gain table has no entry for subset {" + subset.key() + "}");
  }
  return it->second;
}

const Vec& ObserverBank::state_of(const SensorSet& subset) const {
  auto it = member_index.find(subset);
  if (it == member_index.end()) {
    throw std::logic_error("bank has no member for subset {" + subset.key() + "}");
  }
  return states[static_cast<std::size_t>(it->second)];
}

void ObserverBank::initialize(const Vec& xhat0) {
  if (xhat0.size() != n) throw ConfigError("bank initialization: wrong state length");
  for (auto& s : states) s = xhat0;
}

Vec observer_step(const ObserverSpec& spec, const model::PlantModel& model,
                  const Vec& xhat, const Vec& y, double u) {
  if (xhat.size() != model.n) throw ConfigError("observer_step: wrong estimate length");
  if (y.size() != model.p) throw ConfigError("observer_step: wrong measurement length");
  const Mat C_J = model::restrict_rows(model.C, spec.subset);
  const Vec innovation = C_J * xhat - model::restrict(y, spec.subset);
  return model.A * xhat + model.G * model.f.apply(model.H * xhat + spec.K * innovation) +
         spec.L * innovation + model.B * u;
}

ObserverBank build_bank(const model::PlantModel& model, int q, const GainTable& gains) {
  const int p = model.p;
  if (q < 0) throw ConfigError("q must be nonnegative");
  if (q > 0 && 2 * q >= p) {
    throw ConfigError("q = " + std::to_string(q) + " violates q < p/2 for p = " +
                      std::to_string(p));
  }

  ObserverBank bank;
  bank.p = p;
  bank.q = q;
  bank.n = model.n;
  bank.full_set = SensorSet::full(p);
  bank.detection_layer = enumerate_subsets(p, p - q);
  bank.isolation_layer = q == 0 ? std::vector<SensorSet>{} : enumerate_subsets(p, p - 2 * q);

  auto add_member = [&](const SensorSet& subset, Role role) {
    if (bank.member_index.contains(subset)) return;  // q = 0 degeneracy
    if (!gains.has(subset)) return;                  // caller collects the gap below
    const GainEntry& g = gains.at(subset);
    bank.member_index[subset] = bank.size();
    bank.members.push_back(ObserverSpec::make(subset, g.K, g.L, role, model.n, model.r));
    bank.states.push_back(Vec::Zero(model.n));
  };

  std::vector<std::string> missing;
  auto require = [&](const SensorSet& subset, Role role) {
    add_member(subset, role);
    if (!bank.member_index.contains(subset)) missing.push_back("{" + subset.key() + "}");
  };

  require(bank.full_set, Role::Full);
  for (const auto& J : bank.detection_layer) require(J, Role::Detection);
  for (const auto& S : bank.isolation_layer) require(S, Role::Isolation);

  if (!missing.empty()) {
    throw ConfigError("gain table is missing " + std::to_string(missing.size()) +
                      " required subsets", missing);
  }
  return bank;
}

void step_bank(ObserverBank& bank, const model::PlantModel& model, const Vec& y, double u) {
  std::vector<Vec> next(bank.states.size());
  for (std::size_t i = 0; i < bank.members.size(); ++i) {
    next[i] = observer_step(bank.members[i], model, bank.states[i], y, u);
  }
  bank.states = std::move(next);
}

}  // namespace fdi::observer
