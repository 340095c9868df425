#include "json_util.hpp"

#include <fstream>

#include "fdibank/csv.hpp"

namespace fdi::jsonu {

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void save_json_file(const std::filesystem::path& path, const json& j) {
  csv::write_file_atomic(path, j.dump(2) + "\n");
}

Mat parse_matrix(const json& j, const std::string& field, Eigen::Index rows,
                 Eigen::Index cols, std::vector<std::string>& errors) {
  if (!j.is_array() || j.empty()) {
    errors.push_back(field + ": expected a nonempty list of rows");
    return Mat();
  }
  Eigen::Index ncols = cols;
  if (ncols < 0) {
    if (!j[0].is_array()) {
      errors.push_back(field + ": rows must be lists of numbers");
      return Mat();
    }
    ncols = static_cast<Eigen::Index>(j[0].size());
  }
  if (rows >= 0 && static_cast<Eigen::Index>(j.size()) != rows) {
    errors.push_back(field + ": expected " + std::to_string(rows) + " rows, got " +
                     std::to_string(j.size()));
    return Mat();
  }
  Mat m(static_cast<Eigen::Index>(j.size()), ncols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != ncols) {
      errors.push_back(field + ": row " + std::to_string(i + 1) + " has " +
                       std::to_string(row.is_array() ? row.size() : 0) +
                       " entries, expected " + std::to_string(ncols));
      return Mat();
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number()) {
        errors.push_back(field + ": row " + std::to_string(i + 1) + " entry " +
                         std::to_string(c + 1) + " is not a number");
        return Mat();
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = row[c].get<double>();
    }
  }
  return m;
}

Vec parse_vector(const json& j, const std::string& field, Eigen::Index size,
                 std::vector<std::string>& errors) {
  if (!j.is_array()) {
    errors.push_back(field + ": expected a list of numbers");
    return Vec();
  }
  if (size >= 0 && static_cast<Eigen::Index>(j.size()) != size) {
    errors.push_back(field + ": expected " + std::to_string(size) + " entries, got " +
                     std::to_string(j.size()));
    return Vec();
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      errors.push_back(field + ": entry " + std::to_string(i + 1) + " is not a number");
      return Vec();
    }
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

double require_number(const json& j, const std::string& field,
                      std::vector<std::string>& errors, double fallback) {
  if (!j.is_number()) {
    errors.push_back(field + ": expected a number");
    return fallback;
  }
  return j.get<double>();
}

std::int64_t require_int(const json& j, const std::string& field,
                         std::vector<std::string>& errors, std::int64_t fallback) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    errors.push_back(field + ": expected an integer");
    return fallback;
  }
  return j.get<std::int64_t>();
}

std::string require_string(const json& j, const std::string& field,
                           std::vector<std::string>& errors, const std::string& fallback) {
  if (!j.is_string()) {
    errors.push_back(field + ": expected a string");
    return fallback;
  }
  return j.get<std::string>();
}

}  // namespace fdi::jsonu
