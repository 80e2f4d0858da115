#include "pcfdyn/config.hpp"

#include "pcfdyn/error.hpp"

#include <fstream>

namespace pcfdyn {

void RunConfig::validate() const {
  if (float_mode != "double") throw Error(ErrorKind::InvalidArgument, "float_mode must be \"double\"");
  if (bottcher_order < 1 || relation_cap < 1 || enumerate_cap < 1 || green_max_iterations < 1 || orbit_cap < 1 ||
      branch_order < 1 || resolution < 2 || threads < 1)
    throw Error(ErrorKind::InvalidArgument, "caps must be positive");
  if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  for (int c : caps)
    if (c < 1) throw Error(ErrorKind::InvalidArgument, "orbit caps must be positive");
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["float_mode"] = cfg.float_mode;
  j["bottcher_order"] = cfg.bottcher_order;
  j["relation_cap"] = cfg.relation_cap;
  j["enumerate_cap"] = cfg.enumerate_cap;
  j["green_max_iterations"] = cfg.green_max_iterations;
  j["orbit_cap"] = cfg.orbit_cap;
  j["branch_order"] = cfg.branch_order;
  j["tol"] = cfg.tol;
  j["resolution"] = cfg.resolution;
  j["caps"] = cfg.caps;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["out"] = cfg.out;
  j["grid_csv"] = cfg.grid_csv;
  j["grid_pgm"] = cfg.grid_pgm;
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "float_mode") cfg.float_mode = v.get<std::string>();
      else if (key == "bottcher_order") cfg.bottcher_order = v.get<int>();
      else if (key == "relation_cap") cfg.relation_cap = v.get<long>();
      else if (key == "enumerate_cap") cfg.enumerate_cap = v.get<long>();
      else if (key == "green_max_iterations") cfg.green_max_iterations = v.get<int>();
      else if (key == "orbit_cap") cfg.orbit_cap = v.get<int>();
      else if (key == "branch_order") cfg.branch_order = v.get<int>();
      else if (key == "tol") cfg.tol = v.get<double>();
      else if (key == "resolution") cfg.resolution = v.get<int>();
      else if (key == "caps") cfg.caps = v.get<std::vector<int>>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "threads") cfg.threads = v.get<int>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "grid_csv") cfg.grid_csv = v.get<std::string>();
      else if (key == "grid_pgm") cfg.grid_pgm = v.get<std::string>();
      else throw Error(ErrorKind::InvalidArgument, "unknown config key: " + key);
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace pcfdyn
