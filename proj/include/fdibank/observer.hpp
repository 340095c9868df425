#pragma once

#include <map>
#include <string>
#include <vector>

#include "fdibank/linalg.hpp"
#include "fdibank/model.hpp"
#include "fdibank/sensor_set.hpp"

namespace fdi::observer {

enum class Role { Full, Detection, Isolation };

std::string role_name(Role role);

/// One bank member: observer driven by the sensors in `subset`, with
///   xhat+ = A xhat + G f(H xhat + K (C_J xhat - y_J)) + L (C_J xhat - y_J) + B u.
struct ObserverSpec {
  SensorSet subset;
  Mat K;  // r x card(J)
  Mat L;  // n x card(J)
  Role role = Role::Full;

  static ObserverSpec make(SensorSet subset, Mat K, Mat L, Role role, int n, int r);
};

struct GainEntry {
  Mat K, L;
};

/// Gain table keyed by sensor subset; file I/O in gains.cpp.
class GainTable {
 public:
  void insert(const SensorSet& subset, Mat K, Mat L);
  bool has(const SensorSet& subset) const;
  const GainEntry& at(const SensorSet& subset) const;
  const std::map<SensorSet, GainEntry>& entries() const { return entries_; }

 private:
  std::map<SensorSet, GainEntry> entries_;
};

/// The bank: the full-set observer, one per subset of cardinality p-q
/// (detection layer), one per subset of cardinality p-2q (isolation layer).
/// Members are unique subsets in enumeration order: full first, then the
/// detection layer, then the isolation layer. For q = 0 the layers coincide
/// with the full set and the bank degenerates to a single member.
struct ObserverBank {
  int p = 0, q = 0, n = 0;
  SensorSet full_set;
  std::vector<SensorSet> detection_layer;
  std::vector<SensorSet> isolation_layer;

  std::vector<ObserverSpec> members;
  std::map<SensorSet, int> member_index;
  std::vector<Vec> states;  // xhat per member, aligned with members

  int size() const { return static_cast<int>(members.size()); }
  const Vec& state_of(const SensorSet& subset) const;

  /// Same initial estimate for every member.
  void initialize(const Vec& xhat0);
};

/// One observer update from the full measurement vector; y is restricted to
/// y_J internally.
Vec observer_step(const ObserverSpec& spec, const model::PlantModel& model,
                  const Vec& xhat, const Vec& y, double u);

/// Build the bank for (p, q) from the gain table. Missing subsets are
/// reported together in one ConfigError.
ObserverBank build_bank(const model::PlantModel& model, int q, const GainTable& gains);

/// Advance every member synchronously, in enumeration order, from the shared
/// measurement. Each member's update reads only its own pre-step state.
void step_bank(ObserverBank& bank, const model::PlantModel& model, const Vec& y, double u);

}  // namespace fdi::observer
