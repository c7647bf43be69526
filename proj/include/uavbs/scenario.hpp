#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavbs/geometry.hpp"
#include "uavbs/rng.hpp"

namespace uavbs {

using Vec2 = Point2;

struct GroundUser {
  int id = 0;
  Point2 pos;
  Vec2 vel;
};

struct ScenarioConfig {
  double area_width_m = 400.0;
  double area_height_m = 400.0;
  int n_users = 600;
  int n_parents = 8;
  double cluster_radius_m = 40.0;
  std::uint64_t seed = 1;
  double alpha = 0.5;          // Gauss-Markov memory level
  Vec2 mean_velocity{0.0, 0.0};
  double noise_sigma = 1.0;    // m/s per axis
  double dt_s = 1.0;

  void validate() const {
    if (area_width_m <= 0 || area_height_m <= 0) {
      throw std::invalid_argument("area must have positive extent");
    }
    if (n_users < 1 || n_parents < 1) {
      throw std::invalid_argument("need at least one user and one parent");
    }
    if (cluster_radius_m <= 0) {
      throw std::invalid_argument("cluster radius must be positive");
    }
    if (alpha < 0.0 || alpha > 1.0) {
      throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    if (dt_s <= 0) {
      throw std::invalid_argument("dt must be positive");
    }
  }
};

struct Scenario {
  std::vector<GroundUser> users;
  std::vector<Point2> parents;
};

// Matern cluster process: parents uniform over the area, each user uniform
// in a disk around a uniformly chosen parent. Draws falling outside the
// area are redrawn (the parent stays fixed), so the user count is exact.
inline Scenario generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  Scenario out;
  out.parents.reserve(cfg.n_parents);
  for (int i = 0; i < cfg.n_parents; ++i) {
    out.parents.push_back(
        {rng.uniform(0.0, cfg.area_width_m), rng.uniform(0.0, cfg.area_height_m)});
  }
  out.users.reserve(cfg.n_users);
  for (int i = 0; i < cfg.n_users; ++i) {
    const Point2& parent =
        out.parents[rng.uniform_index(static_cast<std::uint64_t>(cfg.n_parents))];
    Point2 pos;
    do {
      const double r = cfg.cluster_radius_m * std::sqrt(rng.uniform());
      const double phi = 2.0 * M_PI * rng.uniform();
      pos = {parent.x + r * std::cos(phi), parent.y + r * std::sin(phi)};
    } while (pos.x < 0.0 || pos.x > cfg.area_width_m || pos.y < 0.0 ||
             pos.y > cfg.area_height_m);
    out.users.push_back({i, pos, {0.0, 0.0}});
  }
  return out;
}

inline std::vector<GroundUser> generate_users(const ScenarioConfig& cfg) {
  return generate_scenario(cfg).users;
}

namespace detail {

// Reflect one coordinate into [0, limit], flipping its velocity per bounce.
inline void reflect(double& coord, double& vel, double limit) {
  while (coord < 0.0 || coord > limit) {
    if (coord < 0.0) {
      coord = -coord;
      vel = -vel;
    } else {
      coord = 2.0 * limit - coord;
      vel = -vel;
    }
  }
}

}  // namespace detail

// One Gauss-Markov slot: positions advance with the previous velocity,
// velocities relax toward the mean with correlated Gaussian noise, and
// walls reflect both position and the bounced velocity component.
inline std::vector<GroundUser> step_mobility(std::vector<GroundUser> users,
                                             const ScenarioConfig& cfg,
                                             Rng& rng) {
  cfg.validate();
  const double memory = cfg.alpha;
  const double drift = 1.0 - cfg.alpha;
  const double noise_gain = std::sqrt(1.0 - cfg.alpha * cfg.alpha);
  for (GroundUser& u : users) {
    u.pos.x += u.vel.x * cfg.dt_s;
    u.pos.y += u.vel.y * cfg.dt_s;
    u.vel.x = memory * u.vel.x + drift * cfg.mean_velocity.x +
              noise_gain * rng.gaussian(cfg.noise_sigma);
    u.vel.y = memory * u.vel.y + drift * cfg.mean_velocity.y +
              noise_gain * rng.gaussian(cfg.noise_sigma);
    detail::reflect(u.pos.x, u.vel.x, cfg.area_width_m);
    detail::reflect(u.pos.y, u.vel.y, cfg.area_height_m);
  }
  return users;
}

// --- snapshot serialization -------------------------------------------------

inline nlohmann::json scenario_to_json(const std::vector<GroundUser>& users,
                                       const ScenarioConfig& cfg) {
  nlohmann::json j;
  j["area"] = {{"width", cfg.area_width_m}, {"height", cfg.area_height_m}};
  j["seed"] = cfg.seed;
  nlohmann::json arr = nlohmann::json::array();
  for (const GroundUser& u : users) {
    arr.push_back({{"id", u.id},
                   {"x", u.pos.x},
                   {"y", u.pos.y},
                   {"vx", u.vel.x},
                   {"vy", u.vel.y}});
  }
  j["users"] = std::move(arr);
  return j;
}

struct ScenarioSnapshot {
  std::vector<GroundUser> users;
  double area_width_m = 0.0;
  double area_height_m = 0.0;
  std::uint64_t seed = 0;
};

inline ScenarioSnapshot scenario_from_json(const nlohmann::json& j) {
  ScenarioSnapshot snap;
  snap.area_width_m = j.at("area").at("width").get<double>();
  snap.area_height_m = j.at("area").at("height").get<double>();
  snap.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& ju : j.at("users")) {
    snap.users.push_back({ju.at("id").get<int>(),
                          {ju.at("x").get<double>(), ju.at("y").get<double>()},
                          {ju.at("vx").get<double>(), ju.at("vy").get<double>()}});
  }
  return snap;
}

inline void write_scenario_file(const std::string& path,
                                const std::vector<GroundUser>& users,
                                const ScenarioConfig& cfg) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write scenario file: " + path);
  }
  out << scenario_to_json(users, cfg).dump(2) << '\n';
}

inline ScenarioSnapshot read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read scenario file: " + path);
  }
  nlohmann::json j;
  in >> j;
  return scenario_from_json(j);
}

}  // namespace uavbs
