#include "rigidity/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rigidity/errors.hpp"

namespace rigidity {

using nlohmann::json;

int Config::grid_for_dim(int d) const {
  if (d <= 1) return grid_d1;
  if (d == 2) return grid_d2;
  if (d == 3) return grid_d3;
  return grid_higher;
}

void Config::apply_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw input_error("config: expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "grid_d1") grid_d1 = value.get<int>();
      else if (key == "grid_d2") grid_d2 = value.get<int>();
      else if (key == "grid_d3") grid_d3 = value.get<int>();
      else if (key == "grid_higher") grid_higher = value.get<int>();
      else if (key == "rank_tol_rel") rank_tol_rel = value.get<double>();
      else if (key == "class_tol") class_tol = value.get<double>();
      else if (key == "verify_tol") verify_tol = value.get<double>();
      else if (key == "loop_tol") loop_tol = value.get<double>();
      else if (key == "winding_resolution") winding_resolution = value.get<int>();
      else if (key == "parallel") parallel = value.get<bool>();
      else throw input_error("config: unknown key '" + key + "'");
    } catch (const json::exception&) {
      throw input_error("config: bad value for key '" + key + "'");
    }
  }
}

Config Config::resolve(const std::string& config_path) {
  Config config;
  auto apply_file = [&config](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("config file not found: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    config.apply_json_text(buffer.str());
  };
  if (const char* env = std::getenv("RIGIDITY_CONFIG"); env && *env) apply_file(env);
  if (!config_path.empty()) apply_file(config_path);
  return config;
}

}  // namespace rigidity
