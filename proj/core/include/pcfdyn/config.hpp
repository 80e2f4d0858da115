#pragma once

#include "pcfdyn/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pcfdyn {

/// Settings shared by the CLI subcommands and the self-test. Loaded from
/// JSON with the same field names; unknown keys are rejected.
struct RunConfig {
  std::string float_mode = "double";  // only "double" is implemented
  int bottcher_order = 12;
  long relation_cap = 81;
  long enumerate_cap = 9;
  int green_max_iterations = 300;
  int orbit_cap = 64;
  int branch_order = 8;
  double tol = 1e-12;
  int resolution = 512;
  std::vector<int> caps{2, 3, 4};
  std::uint64_t seed = 20240601;
  int threads = 1;
  std::string out;  // empty: stdout
  std::string grid_csv, grid_pgm;

  /// Throws InvalidArgument on a nonpositive cap or unknown float mode.
  void validate() const;
};

Json to_json(const RunConfig& cfg);
RunConfig config_from_json(const Json& j);
RunConfig load_config(const std::string& path);

}  // namespace pcfdyn
