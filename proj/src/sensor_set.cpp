#include "fdibank/sensor_set.hpp"

#include <algorithm>
#include <sstream>

#include "fdibank/errors.hpp"

namespace fdi {

SensorSet::SensorSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1) {
      throw ConfigError("sensor indices are 1-based; got " + std::to_string(indices_[i]));
    }
    if (i > 0 && indices_[i] == indices_[i - 1]) {
      throw ConfigError("duplicate sensor index " + std::to_string(indices_[i]));
    }
  }
}

SensorSet SensorSet::full(int p) {
  std::vector<int> idx(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  return SensorSet(std::move(idx));
}

SensorSet SensorSet::parse_key(const std::string& key) {
  std::vector<int> idx;
  std::stringstream ss(key);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      idx.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ConfigError("malformed subset key '" + key + "'");
    }
  }
  if (idx.empty()) throw ConfigError("empty subset key");
  return SensorSet(std::move(idx));
}

bool SensorSet::contains(int sensor) const {
  return std::binary_search(indices_.begin(), indices_.end(), sensor);
}

bool SensorSet::subset_of(const SensorSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

std::string SensorSet::key() const {
  std::string out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(indices_[i]);
  }
  return out;
}

SensorSet SensorSet::set_union(const SensorSet& other) const {
  std::vector<int> merged;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(merged));
  return SensorSet(std::move(merged));
}

std::vector<SensorSet> subsets_of(const SensorSet& base, int cardinality) {
  const auto& pool = base.indices();
  const int n = static_cast<int>(pool.size());
  if (cardinality < 1 || cardinality > n) {
    throw ConfigError("subset cardinality " + std::to_string(cardinality) +
                      " out of range [1, " + std::to_string(n) + "]");
  }
  std::vector<SensorSet> out;
  std::vector<int> pick(static_cast<std::size_t>(cardinality));
  // Standard combination walk; pool is sorted, so output is lexicographic.
  for (int i = 0; i < cardinality; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<int> subset(static_cast<std::size_t>(cardinality));
    for (int i = 0; i < cardinality; ++i) {
      subset[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    }
    out.emplace_back(std::move(subset));
    int i = cardinality - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - cardinality + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < cardinality; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::vector<SensorSet> enumerate_subsets(int p, int cardinality) {
  if (p < 1) throw ConfigError("sensor count p must be positive");
  return subsets_of(SensorSet::full(p), cardinality);
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace fdi
