#pragma once

// Internal helpers for JSON config parsing with field-path error messages.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdibank/errors.hpp"
#include "fdibank/linalg.hpp"

namespace fdi::jsonu {

using nlohmann::json;

json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& j);

/// Matrix as a row-major list of rows; every row must have `cols` entries
/// (cols < 0 means: take the first row's length). rows < 0: any row count.
Mat parse_matrix(const json& j, const std::string& field, Eigen::Index rows,
                 Eigen::Index cols, std::vector<std::string>& errors);

Vec parse_vector(const json& j, const std::string& field, Eigen::Index size,
                 std::vector<std::string>& errors);

json matrix_to_json(const Mat& m);

double require_number(const json& j, const std::string& field,
                      std::vector<std::string>& errors, double fallback = 0.0);
std::int64_t require_int(const json& j, const std::string& field,
                         std::vector<std::string>& errors, std::int64_t fallback = 0);
std::string require_string(const json& j, const std::string& field,
                           std::vector<std::string>& errors,
                           const std::string& fallback = "");

}  // namespace fdi::jsonu
