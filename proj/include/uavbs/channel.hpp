#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "uavbs/geometry.hpp"

namespace uavbs {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// UAV position: horizontal coordinates plus altitude, all in meters.
struct Position3 {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
};

inline Point2 ground_of(const Position3& p) { return {p.x, p.y}; }

// Probabilistic air-to-ground channel constants. Defaults are the typical
// urban values (a, b, excess losses) with thermal noise at -174 dBm/Hz.
struct ChannelParams {
  double a = 12.08;                 // LoS sigmoid steepness
  double b = 0.11;                  // LoS sigmoid slope, 1/deg
  double eta_los_db = 1.6;          // excess LoS attenuation
  double eta_nlos_db = 23.0;        // excess NLoS attenuation
  double carrier_hz = 2.0e9;
  double bandwidth_hz = 20.0e6;
  double tx_power_w = 0.1;
  double noise_density_w_hz = 3.9810717055349725e-21;  // 10^(-20.4)
  double hover_power_w = 150.0;

  void validate() const {
    if (a <= 0 || b <= 0 || carrier_hz <= 0 || bandwidth_hz <= 0 ||
        tx_power_w <= 0 || noise_density_w_hz <= 0 || hover_power_w <= 0) {
      throw std::invalid_argument("channel parameters must be positive");
    }
    if (eta_nlos_db < eta_los_db) {
      throw std::invalid_argument("eta_nlos must be >= eta_los");
    }
  }
};

// Deployment-side limits. gamma_max (users per UAV) is derived from the
// backhaul budget and the per-user rate floor.
struct DeploymentConstraints {
  double h_min_m = 10.0;
  double h_max_m = 120.0;
  double theta_bw_rad = 0.25 * M_PI;  // half-power half-beamwidth
  double r_min_bps = 2.0e6;
  double c_backhaul_bps = 150.0e6;
  int k_max = 50;

  int gamma_max() const {
    return static_cast<int>(std::floor(c_backhaul_bps / r_min_bps));
  }

  void validate() const {
    if (!(h_min_m > 0) || h_max_m < h_min_m) {
      throw std::invalid_argument("altitude limits require 0 < h_min <= h_max");
    }
    if (!(theta_bw_rad > 0) || theta_bw_rad >= 0.5 * M_PI) {
      throw std::invalid_argument("theta_bw must lie in (0, pi/2)");
    }
    if (r_min_bps <= 0 || c_backhaul_bps <= 0) {
      throw std::invalid_argument("rate parameters must be positive");
    }
    if (gamma_max() < 1) {
      throw std::invalid_argument("backhaul admits no user at the rate floor");
    }
    if (k_max < 1) {
      throw std::invalid_argument("k_max must be >= 1");
    }
  }
};

// Elevation angle seen from the user, in degrees, using the 3D distance.
inline double elevation_angle_deg(const Position3& uav, const Point2& user) {
  const double dx = uav.x - user.x;
  const double dy = uav.y - user.y;
  const double d3 = std::sqrt(dx * dx + dy * dy + uav.h * uav.h);
  if (d3 <= 0.0) {
    throw std::invalid_argument("degenerate geometry");
  }
  return (180.0 / M_PI) * std::asin(uav.h / d3);
}

// Sigmoid LoS probability in the elevation angle.
inline double los_probability(double theta_deg, const ChannelParams& p) {
  return 1.0 / (1.0 + p.a * std::exp(-p.b * (theta_deg - p.a)));
}

inline double free_space_path_loss_db(double distance_m, double carrier_hz) {
  return 20.0 * std::log10(4.0 * M_PI * carrier_hz * distance_m / kSpeedOfLight);
}

// LoS/NLoS mixture of free-space loss plus the excess attenuation factors.
inline double mean_path_loss_db(double distance_3d_m, double theta_deg,
                                const ChannelParams& p) {
  if (distance_3d_m <= 0.0) {
    throw std::invalid_argument("distance must be positive");
  }
  const double fspl = free_space_path_loss_db(distance_3d_m, p.carrier_hz);
  const double p_los = los_probability(theta_deg, p);
  return p_los * (fspl + p.eta_los_db) + (1.0 - p_los) * (fspl + p.eta_nlos_db);
}

inline double received_power_w(const Point2& user, const Position3& uav,
                               const ChannelParams& p) {
  const double dx = uav.x - user.x;
  const double dy = uav.y - user.y;
  const double d3 = std::sqrt(dx * dx + dy * dy + uav.h * uav.h);
  const double theta = elevation_angle_deg(uav, user);
  return p.tx_power_w * std::pow(10.0, -mean_path_loss_db(d3, theta, p) / 10.0);
}

// Ground footprint radius of the conical beam at altitude h.
inline double coverage_radius(double h_m, double theta_bw_rad) {
  return h_m * std::tan(theta_bw_rad);
}

// Altitude needed to cover a circle of radius r_c, floored at h_min.
inline double required_altitude(double r_c_m, double theta_bw_rad,
                                double h_min_m) {
  return std::max(h_min_m, r_c_m / std::tan(theta_bw_rad));
}

// A UAV interferes with a user only when the user sits inside its beam
// footprint; outside the cone it contributes nothing.
inline bool in_footprint(const Point2& user, const Position3& uav,
                         double theta_bw_rad) {
  return distance(user, ground_of(uav)) <=
         coverage_radius(uav.h, theta_bw_rad) + kGeomEps;
}

// Linear SINR for a user served by uavs[serving]. All other UAVs whose
// footprint covers the user interfere at full transmit power; the noise
// floor scales with the bandwidth share actually allotted to the user.
inline double sinr(const Point2& user, std::size_t serving,
                   std::span<const Position3> uavs, const ChannelParams& p,
                   double theta_bw_rad, double bandwidth_share_hz) {
  if (serving >= uavs.size()) {
    throw std::invalid_argument("invalid serving UAV index");
  }
  if (bandwidth_share_hz <= 0.0) {
    throw std::invalid_argument("bandwidth share must be positive");
  }
  const double signal = received_power_w(user, uavs[serving], p);
  double interference = 0.0;
  for (std::size_t k = 0; k < uavs.size(); ++k) {
    if (k != serving && in_footprint(user, uavs[k], theta_bw_rad)) {
      interference += received_power_w(user, uavs[k], p);
    }
  }
  return signal / (interference + p.noise_density_w_hz * bandwidth_share_hz);
}

inline double shannon_rate_bps(double bandwidth_share_hz, double sinr_linear) {
  return bandwidth_share_hz * std::log2(1.0 + sinr_linear);
}

// Achievable downlink rate when the serving UAV splits its bandwidth
// equally over n_served users.
inline double achievable_rate_bps(const Point2& user, std::size_t serving,
                                  std::span<const Position3> uavs,
                                  int n_served, const ChannelParams& p,
                                  double theta_bw_rad) {
  const double share = p.bandwidth_hz / static_cast<double>(n_served);
  return shannon_rate_bps(share,
                          sinr(user, serving, uavs, p, theta_bw_rad, share));
}

}  // namespace uavbs
