#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fdi {

/// Invalid configuration: bad dimensions, malformed files, out-of-range
/// parameters. Carries per-field detail messages. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, std::vector<std::string> details = {})
      : std::runtime_error(msg), details_(std::move(details)) {}

  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

/// An observer failed certification (divergent error, no geometric envelope,
/// or too many envelope violations). Names the offending subset. Exit code 3.
class CertificationError : public std::runtime_error {
 public:
  CertificationError(const std::string& msg, std::string subset_key)
      : std::runtime_error(msg + " (observer subset {" + subset_key + "})"),
        subset_key_(std::move(subset_key)) {}

  const std::string& subset_key() const { return subset_key_; }

 private:
  std::string subset_key_;
};

/// Failure while executing a run (I/O, numeric blow-up). Exit code 4.
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fdi
