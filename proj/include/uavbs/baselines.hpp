#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uavbs/channel.hpp"
#include "uavbs/deployment.hpp"
#include "uavbs/geometry.hpp"
#include "uavbs/scenario.hpp"

namespace uavbs {

struct AreaSize {
  double width_m = 400.0;
  double height_m = 400.0;
};

inline AreaSize area_of(const ScenarioConfig& cfg) {
  return {cfg.area_width_m, cfg.area_height_m};
}

struct BaselineOptions {
  // Forces a fixed flight altitude (clamped to the legal band) instead of
  // the coverage-driven clamp, for fully static comparisons.
  std::optional<double> fixed_altitude_m;
};

namespace detail {

inline double clamp_altitude(double h, const DeploymentConstraints& cons) {
  return std::clamp(h, cons.h_min_m, cons.h_max_m);
}

inline double baseline_altitude(double sec_radius,
                                const DeploymentConstraints& cons,
                                const BaselineOptions& opts) {
  if (opts.fixed_altitude_m) {
    return clamp_altitude(*opts.fixed_altitude_m, cons);
  }
  return clamp_altitude(
      required_altitude(sec_radius, cons.theta_bw_rad, cons.h_min_m), cons);
}

// Admits each user to its target UAV nearest-first (horizontal distance to
// the UAV, ties by index) until the capacity cap; overflow stays unserved.
inline void admit_nearest_first(const std::vector<GroundUser>& users,
                                const std::vector<int>& target_uav,
                                int gamma_max, Deployment& d) {
  for (UavBs& uav : d.uavs) {
    std::vector<std::size_t> wanting;
    for (std::size_t i = 0; i < users.size(); ++i) {
      if (target_uav[i] == uav.id) {
        wanting.push_back(i);
      }
    }
    std::sort(wanting.begin(), wanting.end(),
              [&](std::size_t a, std::size_t b) {
                const double da =
                    squared_distance(users[a].pos, {uav.pos.x, uav.pos.y});
                const double db =
                    squared_distance(users[b].pos, {uav.pos.x, uav.pos.y});
                return da < db || (da == db && a < b);
              });
    if (static_cast<int>(wanting.size()) > gamma_max) {
      wanting.resize(static_cast<std::size_t>(gamma_max));
    }
    for (std::size_t idx : wanting) {
      uav.served.push_back(users[idx].id);
      d.association[users[idx].id] = uav.id;
    }
  }
}

// Index of the nearest UAV by horizontal distance; ties to the lowest id.
inline int nearest_uav(const Point2& p, const std::vector<UavBs>& uavs) {
  int best = 0;
  double best_d2 = squared_distance(p, {uavs[0].pos.x, uavs[0].pos.y});
  for (std::size_t j = 1; j < uavs.size(); ++j) {
    const double d2 = squared_distance(p, {uavs[j].pos.x, uavs[j].pos.y});
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(j);
    }
  }
  return best;
}

struct LloydResult {
  std::vector<int> assignment;
  std::vector<Point2> centroids;
  std::vector<double> wcss_history;
};

// Plain Lloyd iterations seeded from k distinct users, run to an
// assignment fixpoint or the iteration cap. Empty clusters keep their
// previous centroid.
inline LloydResult lloyd(const std::vector<Point2>& points, int k,
                         std::uint64_t seed, int max_iterations = 100) {
  Rng rng(seed);
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  rng.shuffle(order);

  LloydResult res;
  res.centroids.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    res.centroids.push_back(points[order[static_cast<std::size_t>(j)]]);
  }
  res.assignment.assign(points.size(), -1);

  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<int> next(points.size());
    double wcss = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      int best = 0;
      double best_d2 = squared_distance(points[i], res.centroids[0]);
      for (int j = 1; j < k; ++j) {
        const double d2 =
            squared_distance(points[i], res.centroids[static_cast<std::size_t>(j)]);
        if (d2 < best_d2) {
          best_d2 = d2;
          best = j;
        }
      }
      next[i] = best;
      wcss += best_d2;
    }
    res.wcss_history.push_back(wcss);
    const bool converged = (next == res.assignment);
    res.assignment = std::move(next);
    if (converged) {
      break;
    }
    std::vector<double> sx(static_cast<std::size_t>(k), 0.0);
    std::vector<double> sy(static_cast<std::size_t>(k), 0.0);
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto j = static_cast<std::size_t>(res.assignment[i]);
      sx[j] += points[i].x;
      sy[j] += points[i].y;
      ++count[j];
    }
    for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
      if (count[j] > 0) {
        res.centroids[j] = {sx[j] / count[j], sy[j] / count[j]};
      }
    }
  }
  return res;
}

inline void check_fleet_size(int k, const DeploymentConstraints& cons) {
  if (k < 1) {
    throw std::invalid_argument("fleet size must be >= 1");
  }
  if (k > cons.k_max) {
    throw std::invalid_argument("fleet size exceeds available UAVs");
  }
}

// Places one UAV per non-empty cluster (SEC center, coverage-driven
// altitude) and returns the UAV index for each cluster, or -1.
inline std::vector<int> place_cluster_uavs(
    const std::vector<GroundUser>& users, const std::vector<int>& assignment,
    int k, const DeploymentConstraints& cons, const BaselineOptions& opts,
    Deployment& d) {
  std::vector<int> cluster_to_uav(static_cast<std::size_t>(k), -1);
  for (int j = 0; j < k; ++j) {
    std::vector<Point2> members;
    for (std::size_t i = 0; i < users.size(); ++i) {
      if (assignment[i] == j) {
        members.push_back(users[i].pos);
      }
    }
    if (members.empty()) {
      continue;
    }
    const Circle sec = smallest_enclosing_circle(members);
    const double h = baseline_altitude(sec.radius, cons, opts);
    UavBs uav;
    uav.id = static_cast<int>(d.uavs.size());
    uav.pos = {sec.center.x, sec.center.y, h};
    uav.coverage = {sec.center, coverage_radius(h, cons.theta_bw_rad)};
    cluster_to_uav[static_cast<std::size_t>(j)] = uav.id;
    d.uavs.push_back(std::move(uav));
  }
  return cluster_to_uav;
}

}  // namespace detail

// Counter-clockwise spiral: fixed-altitude, fixed-radius disks placed on
// successive hull vertices of the uncovered set, each pushed inward so the
// boundary user sits on the disk edge toward the area center. The boundary
// user is always admitted (progress), the rest nearest-first to the cap.
inline Deployment run_ccs(const std::vector<GroundUser>& users,
                          const DeploymentConstraints& cons,
                          const ChannelParams& params, const AreaSize& area) {
  if (users.empty()) {
    throw std::invalid_argument("no users");
  }
  cons.validate();
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const double h = detail::clamp_altitude(100.0, cons);
  const double radius = coverage_radius(h, cons.theta_bw_rad);
  const Point2 area_center{0.5 * area.width_m, 0.5 * area.height_m};
  const int gamma = cons.gamma_max();

  Deployment d;
  std::vector<std::size_t> uncovered(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    uncovered[i] = i;
  }

  bool fleet_full = false;
  while (!uncovered.empty() && !fleet_full) {
    std::vector<Point2> pts;
    pts.reserve(uncovered.size());
    for (std::size_t idx : uncovered) {
      pts.push_back(users[idx].pos);
    }
    const std::vector<Point2> hull = convex_hull(pts);
    bool progressed = false;

    for (const Point2& vertex : hull) {
      if (static_cast<int>(d.uavs.size()) >= cons.k_max) {
        fleet_full = true;
        break;
      }
      // The vertex may have been swept up by a disk earlier in this pass.
      auto it = std::find_if(uncovered.begin(), uncovered.end(),
                             [&](std::size_t idx) {
                               return users[idx].pos == vertex;
                             });
      if (it == uncovered.end()) {
        continue;
      }
      const std::size_t boundary_idx = *it;
      const Point2 b = users[boundary_idx].pos;
      Point2 center = b;
      const double len = distance(b, area_center);
      if (len > kGeomEps) {
        center = {b.x + radius * (area_center.x - b.x) / len,
                  b.y + radius * (area_center.y - b.y) / len};
      }

      std::vector<std::size_t> in_disk;
      for (std::size_t idx : uncovered) {
        if (idx != boundary_idx &&
            distance(users[idx].pos, center) <= radius + kGeomEps) {
          in_disk.push_back(idx);
        }
      }
      std::sort(in_disk.begin(), in_disk.end(),
                [&](std::size_t a, std::size_t c) {
                  const double da = squared_distance(users[a].pos, center);
                  const double dc = squared_distance(users[c].pos, center);
                  return da < dc || (da == dc && a < c);
                });
      if (static_cast<int>(in_disk.size()) > gamma - 1) {
        in_disk.resize(static_cast<std::size_t>(gamma - 1));
      }
      in_disk.insert(in_disk.begin(), boundary_idx);

      UavBs uav;
      uav.id = static_cast<int>(d.uavs.size());
      uav.pos = {center.x, center.y, h};
      uav.coverage = {center, radius};
      for (std::size_t idx : in_disk) {
        uav.served.push_back(users[idx].id);
        d.association[users[idx].id] = uav.id;
      }
      d.uavs.push_back(std::move(uav));
      std::vector<std::size_t> remaining;
      remaining.reserve(uncovered.size());
      for (std::size_t idx : uncovered) {
        if (std::find(in_disk.begin(), in_disk.end(), idx) == in_disk.end()) {
          remaining.push_back(idx);
        }
      }
      uncovered = std::move(remaining);
      progressed = true;
      if (uncovered.empty()) {
        break;
      }
    }
    if (!progressed) {
      break;
    }
  }

  d.solve_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return d;
}

// Lloyd clustering with UAVs on each cluster's smallest enclosing circle;
// users then associate to the nearest UAV under the capacity cap.
inline Deployment run_kmeans(const std::vector<GroundUser>& users, int k,
                             const DeploymentConstraints& cons,
                             const ChannelParams& params, std::uint64_t seed,
                             const BaselineOptions& opts = {}) {
  if (users.empty()) {
    throw std::invalid_argument("no users");
  }
  detail::check_fleet_size(k, cons);
  cons.validate();
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();

  k = std::min(k, static_cast<int>(users.size()));
  std::vector<Point2> pts;
  pts.reserve(users.size());
  for (const GroundUser& u : users) {
    pts.push_back(u.pos);
  }
  const detail::LloydResult lr = detail::lloyd(pts, k, seed);

  Deployment d;
  detail::place_cluster_uavs(users, lr.assignment, k, cons, opts, d);
  std::vector<int> target(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    target[i] = detail::nearest_uav(users[i].pos, d.uavs);
  }
  detail::admit_nearest_first(users, target, cons.gamma_max(), d);

  d.solve_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return d;
}

// Seeded random generator sites partition the users into dominance
// regions; each non-empty region gets a UAV over its smallest enclosing
// circle and users stay with their region's UAV up to the capacity cap.
inline Deployment run_voronoi(const std::vector<GroundUser>& users, int k,
                              const DeploymentConstraints& cons,
                              const ChannelParams& params, std::uint64_t seed,
                              const AreaSize& area,
                              const BaselineOptions& opts = {}) {
  if (users.empty()) {
    throw std::invalid_argument("no users");
  }
  detail::check_fleet_size(k, cons);
  cons.validate();
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();

  Rng rng(seed);
  std::vector<Point2> sites;
  sites.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    sites.push_back(
        {rng.uniform(0.0, area.width_m), rng.uniform(0.0, area.height_m)});
  }
  std::vector<int> cell(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    cell[i] = static_cast<int>(nearest_point_index(users[i].pos, sites));
  }

  Deployment d;
  const std::vector<int> cell_to_uav =
      detail::place_cluster_uavs(users, cell, k, cons, opts, d);
  std::vector<int> target(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    target[i] = cell_to_uav[static_cast<std::size_t>(cell[i])];
  }
  detail::admit_nearest_first(users, target, cons.gamma_max(), d);

  d.solve_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return d;
}

// Uniformly random 3D placements; nearest-UAV association with the
// capacity cap. The floor every other method should clear.
inline Deployment run_random(const std::vector<GroundUser>& users, int k,
                             const DeploymentConstraints& cons,
                             const ChannelParams& params, std::uint64_t seed,
                             const AreaSize& area) {
  if (users.empty()) {
    throw std::invalid_argument("no users");
  }
  detail::check_fleet_size(k, cons);
  cons.validate();
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();

  Rng rng(seed);
  Deployment d;
  for (int j = 0; j < k; ++j) {
    UavBs uav;
    uav.id = j;
    uav.pos = {rng.uniform(0.0, area.width_m), rng.uniform(0.0, area.height_m),
               rng.uniform(cons.h_min_m, cons.h_max_m)};
    uav.coverage = {{uav.pos.x, uav.pos.y},
                    coverage_radius(uav.pos.h, cons.theta_bw_rad)};
    d.uavs.push_back(std::move(uav));
  }
  std::vector<int> target(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    target[i] = detail::nearest_uav(users[i].pos, d.uavs);
  }
  detail::admit_nearest_first(users, target, cons.gamma_max(), d);

  d.solve_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return d;
}

}  // namespace uavbs
