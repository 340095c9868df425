#pragma once

#include <compare>
#include <string>
#include <vector>

namespace fdi {

/// Set of 1-based sensor indices, kept sorted ascending. Orders
/// lexicographically on the index list, which makes subset enumerations and
/// map iteration deterministic.
class SensorSet {
 public:
  SensorSet() = default;

  /// Sorts and validates; duplicate or non-positive indices are rejected.
  explicit SensorSet(std::vector<int> indices);

  /// The full set {1, ..., p}.
  static SensorSet full(int p);

  /// Parse a "1,3,4" key as written by key().
  static SensorSet parse_key(const std::string& key);

  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int sensor) const;
  bool subset_of(const SensorSet& other) const;
  int max_index() const { return indices_.empty() ? 0 : indices_.back(); }

  /// Sorted 1-based indices.
  const std::vector<int>& indices() const { return indices_; }

  /// Canonical "1,3,4" form, used as file key and CSV field (with ';' see csv).
  std::string key() const;

  SensorSet set_union(const SensorSet& other) const;

  friend auto operator<=>(const SensorSet&, const SensorSet&) = default;

 private:
  std::vector<int> indices_;
};

/// All subsets of {1,...,p} with the given cardinality, ascending
/// lexicographic order. Throws ConfigError for cardinality outside [1, p].
std::vector<SensorSet> enumerate_subsets(int p, int cardinality);

/// All subsets of `base` with the given cardinality, lexicographic order.
std::vector<SensorSet> subsets_of(const SensorSet& base, int cardinality);

/// Binomial coefficient C(n, k) in exact integer arithmetic (small n).
long long binomial(int n, int k);

}  // namespace fdi
