#pragma once

#include <filesystem>

#include "fdibank/observer.hpp"

namespace fdi::observer {

/// Load a gain-table file: JSON with dimensions {n, r, p} and a "gains"
/// object keyed by sorted index lists ("1,2,4"), each entry carrying K and L
/// as row-major lists of rows. Dimension mismatches throw ConfigError with
/// the offending key.
GainTable load_gain_table(const std::filesystem::path& path, int n, int r, int p);

/// Write a gain table atomically (temp file + rename).
void save_gain_table(const std::filesystem::path& path, const GainTable& table, int n,
                     int r, int p);

}  // namespace fdi::observer
