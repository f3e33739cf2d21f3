#pragma once

#include <string>

namespace rigidity {

/// Central defaults for grids and tolerances. Resolution order: built-in
/// defaults, then the file named by RIGIDITY_CONFIG, then --config, then
/// explicit flags.
struct Config {
  int grid_d1 = 64;
  int grid_d2 = 64;
  int grid_d3 = 16;
  int grid_higher = 8;
  double rank_tol_rel = 1e-9;
  double class_tol = 1e-10;
  double verify_tol = 1e-10;
  double loop_tol = 1e-9;
  int winding_resolution = 512;
  bool parallel = true;

  int grid_for_dim(int d) const;
  void apply_json_text(const std::string& text);

  static Config resolve(const std::string& config_path = "");
};

}  // namespace rigidity
