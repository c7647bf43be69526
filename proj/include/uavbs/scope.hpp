#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "uavbs/channel.hpp"
#include "uavbs/deployment.hpp"
#include "uavbs/geometry.hpp"
#include "uavbs/scenario.hpp"

namespace uavbs {

enum class Feasibility { ok, capacity, altitude, qos };

inline const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::ok:
      return "ok";
    case Feasibility::capacity:
      return "capacity";
    case Feasibility::altitude:
      return "altitude";
    default:
      return "qos";
  }
}

// Worst-placed member of a cluster: the one farthest from the circle
// center. Users closer in enjoy shorter links, so checking this one
// bounds the whole cluster.
inline std::size_t edge_member_index(const std::vector<Point2>& cluster,
                                     const Point2& center) {
  std::size_t worst = 0;
  double worst_d2 = squared_distance(center, cluster[0]);
  for (std::size_t i = 1; i < cluster.size(); ++i) {
    const double d2 = squared_distance(center, cluster[i]);
    if (d2 > worst_d2) {
      worst_d2 = d2;
      worst = i;
    }
  }
  return worst;
}

// First violated constraint for a candidate cluster, checked in the fixed
// order capacity -> altitude -> qos. The QoS check evaluates the edge
// member's rate with the UAV at the altitude the candidate circle demands,
// against the already committed fleet as interferers.
inline Feasibility check_feasibility(const std::vector<Point2>& cluster,
                                     const Circle& candidate,
                                     const DeploymentConstraints& cons,
                                     const ChannelParams& params,
                                     const std::vector<Position3>& existing_uavs) {
  if (cluster.empty()) {
    throw std::invalid_argument("empty cluster");
  }
  if (static_cast<int>(cluster.size()) > cons.gamma_max()) {
    return Feasibility::capacity;
  }
  const double h_req =
      required_altitude(candidate.radius, cons.theta_bw_rad, cons.h_min_m);
  if (h_req > cons.h_max_m) {
    return Feasibility::altitude;
  }
  std::vector<Position3> fleet = existing_uavs;
  fleet.push_back({candidate.center.x, candidate.center.y, h_req});
  const Point2 edge = cluster[edge_member_index(cluster, candidate.center)];
  const double rate =
      achievable_rate_bps(edge, fleet.size() - 1, fleet,
                          static_cast<int>(cluster.size()), params,
                          cons.theta_bw_rad);
  if (rate < cons.r_min_bps) {
    return Feasibility::qos;
  }
  return Feasibility::ok;
}

struct ClusterResult {
  Position3 pos;
  Circle circle;
  std::vector<std::size_t> members;  // indices into users, expansion order
};

// Grows a cluster from the seed user by repeatedly pulling in the
// candidate nearest to the running centroid, recomputing the smallest
// enclosing circle and the altitude it requires, and stopping at the
// first capacity/altitude/QoS violation. The returned state is the last
// feasible one; the bare seed at h_min is feasible by construction.
inline ClusterResult cluster_and_sec(std::size_t seed_index,
                                     const std::vector<std::size_t>& uncovered,
                                     const std::vector<GroundUser>& users,
                                     const DeploymentConstraints& cons,
                                     const ChannelParams& params,
                                     const std::vector<Position3>& existing_uavs,
                                     std::uint64_t sec_seed = kSecShuffleSeed) {
  const Point2 seed_pos = users[seed_index].pos;
  ClusterResult result;
  result.members = {seed_index};
  result.pos = {seed_pos.x, seed_pos.y, cons.h_min_m};
  result.circle = {seed_pos, 0.0};

  std::vector<std::size_t> candidates;
  candidates.reserve(uncovered.size());
  for (std::size_t idx : uncovered) {
    if (idx != seed_index) {
      candidates.push_back(idx);
    }
  }

  std::vector<Point2> cluster_pts = {seed_pos};
  const int gamma = cons.gamma_max();
  while (static_cast<int>(result.members.size()) < gamma &&
         !candidates.empty()) {
    std::vector<Point2> candidate_pts;
    candidate_pts.reserve(candidates.size());
    for (std::size_t idx : candidates) {
      candidate_pts.push_back(users[idx].pos);
    }
    const std::size_t nn =
        nearest_point_index(centroid(cluster_pts), candidate_pts);

    std::vector<Point2> test_pts = cluster_pts;
    test_pts.push_back(candidate_pts[nn]);
    const Circle circle = smallest_enclosing_circle(test_pts, sec_seed);
    if (check_feasibility(test_pts, circle, cons, params, existing_uavs) !=
        Feasibility::ok) {
      break;
    }
    result.members.push_back(candidates[nn]);
    result.circle = circle;
    result.pos = {circle.center.x, circle.center.y,
                  required_altitude(circle.radius, cons.theta_bw_rad,
                                    cons.h_min_m)};
    cluster_pts = std::move(test_pts);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(nn));
  }
  return result;
}

namespace detail {

// First uncovered user sitting exactly on the given hull vertex. Hull
// vertices are copied from input coordinates, so exact comparison is the
// right match; duplicates resolve to the lowest index.
inline std::size_t user_at_vertex(const Point2& vertex,
                                  const std::vector<std::size_t>& uncovered,
                                  const std::vector<GroundUser>& users) {
  for (std::size_t idx : uncovered) {
    if (users[idx].pos == vertex) {
      return idx;
    }
  }
  throw std::logic_error("hull vertex does not match any uncovered user");
}

}  // namespace detail

// The peeling loop: take the convex hull of the still-uncovered users,
// seed a cluster at the first hull vertex (counter-clockwise order starts
// at the lexicographically smallest), expand it under the tri-constraint
// check, commit a UAV over the cluster's smallest enclosing circle, and
// repeat until everyone is served or the fleet is exhausted.
inline Deployment run_scope(const std::vector<GroundUser>& users,
                            const DeploymentConstraints& cons,
                            const ChannelParams& params,
                            std::uint64_t sec_seed = kSecShuffleSeed) {
  if (users.empty()) {
    throw std::invalid_argument("no users");
  }
  cons.validate();
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();

  Deployment d;
  std::vector<std::size_t> uncovered(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    uncovered[i] = i;
  }
  std::vector<Position3> fleet_positions;

  while (!uncovered.empty() && static_cast<int>(d.uavs.size()) < cons.k_max) {
    std::vector<Point2> pts;
    pts.reserve(uncovered.size());
    for (std::size_t idx : uncovered) {
      pts.push_back(users[idx].pos);
    }
    const std::vector<Point2> hull = convex_hull(pts);
    const std::size_t seed_index =
        detail::user_at_vertex(hull.front(), uncovered, users);

    const ClusterResult cluster = cluster_and_sec(
        seed_index, uncovered, users, cons, params, fleet_positions, sec_seed);

    UavBs uav;
    uav.id = static_cast<int>(d.uavs.size());
    uav.pos = cluster.pos;
    uav.coverage = {{cluster.pos.x, cluster.pos.y},
                    coverage_radius(cluster.pos.h, cons.theta_bw_rad)};
    for (std::size_t idx : cluster.members) {
      uav.served.push_back(users[idx].id);
      d.association[users[idx].id] = uav.id;
    }
    d.uavs.push_back(std::move(uav));
    fleet_positions.push_back(cluster.pos);

    std::vector<std::size_t> remaining;
    remaining.reserve(uncovered.size());
    for (std::size_t idx : uncovered) {
      if (std::find(cluster.members.begin(), cluster.members.end(), idx) ==
          cluster.members.end()) {
        remaining.push_back(idx);
      }
    }
    uncovered = std::move(remaining);
  }

  d.solve_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return d;
}

}  // namespace uavbs
