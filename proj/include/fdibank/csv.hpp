#pragma once

#include <filesystem>
#include <string>

#include "fdibank/sensor_set.hpp"

namespace fdi::csv {

/// Doubles are serialized with 17 significant digits so replays are
/// bit-exact through the CSV round trip.
std::string fmt(double v);
std::string fmt(int v);
std::string fmt(std::uint64_t v);
std::string fmt(bool v);

/// Sensor sets inside CSV fields use ';' separators ("1;3;4"); empty set
/// serializes as "-".
std::string fmt(const SensorSet& s);

inline std::string fmt(const std::string& s) { return s; }
inline std::string fmt(const char* s) { return s; }

/// Write content to path atomically: temp file in the same directory, then
/// rename. Parent directories are created as needed.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Row builder: row("a", 1, 2.5) -> "a,1,2.5\n".
template <typename... Fields>
std::string row(const Fields&... fields) {
  std::string out;
  bool first = true;
  auto append = [&](const std::string& f) {
    if (!first) out += ',';
    first = false;
    out += f;
  };
  (append(fmt(fields)), ...);
  out += '\n';
  return out;
}

}  // namespace fdi::csv
