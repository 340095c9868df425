#include "fdibank/gains.hpp"

#include "fdibank/errors.hpp"
#include "json_util.hpp"

namespace fdi::observer {

using jsonu::json;

GainTable load_gain_table(const std::filesystem::path& path, int n, int r, int p) {
  const json j = jsonu::load_json_file(path);
  std::vector<std::string> errors;

  auto check_dim = [&](const char* name, int expected) {
    if (!j.contains(name) || !j[name].is_number_integer() || j[name].get<int>() != expected) {
      errors.push_back(std::string(name) + ": gain table declares " +
                       (j.contains(name) ? j[name].dump() : "nothing") + ", scenario needs " +
                       std::to_string(expected));
    }
  };
  check_dim("n", n);
  check_dim("r", r);
  check_dim("p", p);

  GainTable table;
  if (!j.contains("gains") || !j["gains"].is_object()) {
    errors.push_back("gains: expected an object keyed by sorted index lists");
  } else {
    for (const auto& [key, entry] : j["gains"].items()) {
      SensorSet subset;
      try {
        subset = SensorSet::parse_key(key);
      } catch (const ConfigError& e) {
        errors.push_back("gains." + key + ": " + e.what());
        continue;
      }
      if (subset.max_index() > p) {
        errors.push_back("gains." + key + ": sensor index exceeds p = " + std::to_string(p));
        continue;
      }
      if (!entry.contains("K") || !entry.contains("L")) {
        errors.push_back("gains." + key + ": entry must carry K and L");
        continue;
      }
      Mat K = jsonu::parse_matrix(entry["K"], "gains." + key + ".K", r, subset.size(), errors);
      Mat L = jsonu::parse_matrix(entry["L"], "gains." + key + ".L", n, subset.size(), errors);
      if (K.size() > 0 && L.size() > 0) table.insert(subset, std::move(K), std::move(L));
    }
  }

  if (!errors.empty()) throw ConfigError("invalid gain table " + path.string(), errors);
  return table;
}

void save_gain_table(const std::filesystem::path& path, const GainTable& table, int n,
                     int r, int p) {
  json j;
  j["n"] = n;
  j["r"] = r;
  j["p"] = p;
  json gains = json::object();
  for (const auto& [subset, entry] : table.entries()) {
    json g;
    g["K"] = jsonu::matrix_to_json(entry.K);
    g["L"] = jsonu::matrix_to_json(entry.L);
    gains[subset.key()] = std::move(g);
  }
  j["gains"] = std::move(gains);
  jsonu::save_json_file(path, j);
}

}  // namespace fdi::observer
