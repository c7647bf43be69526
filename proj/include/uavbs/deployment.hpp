#pragma once

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavbs/channel.hpp"
#include "uavbs/geometry.hpp"

namespace uavbs {

// One deployed aerial base station. `served` keeps the admission order;
// ids are assigned in commit order starting from 0.
struct UavBs {
  int id = 0;
  Position3 pos;
  Circle coverage;
  std::vector<int> served;
};

// A complete placement solution: the fleet, the user -> UAV association
// (absent key = unserved), and the solver wall time.
struct Deployment {
  std::vector<UavBs> uavs;
  std::map<int, int> association;
  double solve_time_s = 0.0;

  std::vector<Position3> positions() const {
    std::vector<Position3> out;
    out.reserve(uavs.size());
    for (const UavBs& u : uavs) {
      out.push_back(u.pos);
    }
    return out;
  }
};

inline nlohmann::json deployment_to_json(const Deployment& d) {
  nlohmann::json j;
  nlohmann::json arr = nlohmann::json::array();
  for (const UavBs& u : d.uavs) {
    arr.push_back({{"id", u.id},
                   {"x", u.pos.x},
                   {"y", u.pos.y},
                   {"h", u.pos.h},
                   {"r", u.coverage.radius}});
  }
  j["uavs"] = std::move(arr);
  nlohmann::json assoc = nlohmann::json::object();
  for (const auto& [user, uav] : d.association) {
    assoc[std::to_string(user)] = uav;
  }
  j["association"] = std::move(assoc);
  j["solve_time_s"] = d.solve_time_s;
  return j;
}

inline Deployment deployment_from_json(const nlohmann::json& j) {
  Deployment d;
  for (const auto& ju : j.at("uavs")) {
    UavBs u;
    u.id = ju.at("id").get<int>();
    u.pos = {ju.at("x").get<double>(), ju.at("y").get<double>(),
             ju.at("h").get<double>()};
    u.coverage = {{u.pos.x, u.pos.y}, ju.at("r").get<double>()};
    d.uavs.push_back(std::move(u));
  }
  for (const auto& [key, value] : j.at("association").items()) {
    d.association[std::stoi(key)] = value.get<int>();
  }
  // Rebuild served lists (ordered by user id; the export drops admission order).
  for (const auto& [user, uav] : d.association) {
    for (UavBs& u : d.uavs) {
      if (u.id == uav) {
        u.served.push_back(user);
        break;
      }
    }
  }
  d.solve_time_s = j.value("solve_time_s", 0.0);
  return d;
}

inline void write_deployment_file(const std::string& path, const Deployment& d) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write deployment file: " + path);
  }
  out << deployment_to_json(d).dump(2) << '\n';
}

inline Deployment read_deployment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read deployment file: " + path);
  }
  nlohmann::json j;
  in >> j;
  return deployment_from_json(j);
}

}  // namespace uavbs
