#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "uavbs/rng.hpp"

namespace uavbs {

// Absolute tolerance for geometric comparisons, in meters.
inline constexpr double kGeomEps = 1e-9;

// Seed for the smallest-enclosing-circle input permutation. Fixed so that
// repeated solves of the same instance are bit-identical.
inline constexpr std::uint64_t kSecShuffleSeed = 0x9e3779b97f4a7c15ull;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Point2& a, const Point2& b) {
  return a.x == b.x && a.y == b.y;
}

inline bool lex_less(const Point2& a, const Point2& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

inline double squared_distance(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point2& a, const Point2& b) {
  return std::sqrt(squared_distance(a, b));
}

// Cross product of (a - o) and (b - o); positive for a left turn.
inline double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

struct Circle {
  Point2 center;
  double radius = 0.0;

  bool contains(const Point2& p, double eps = kGeomEps) const {
    return distance(center, p) <= radius + eps;
  }
};

// Convex hull by Andrew's monotone chain. Vertices come back in
// counter-clockwise order starting from the lexicographically smallest
// point; collinear points on edges are dropped. Duplicates in the input
// are deduplicated first. For fewer than three distinct points the
// deduplicated input is returned.
inline std::vector<Point2> convex_hull(std::vector<Point2> points) {
  if (points.empty()) {
    throw std::invalid_argument("empty point set");
  }
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  if (n <= 2) {
    return points;
  }

  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= kGeomEps) {
      --k;
    }
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= kGeomEps) {
      --k;
    }
    hull[k++] = points[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

// Index of the candidate closest to `reference`; ties go to the lowest index.
inline std::size_t nearest_point_index(const Point2& reference,
                                       const std::vector<Point2>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("no candidates");
  }
  std::size_t best = 0;
  double best_d2 = squared_distance(reference, candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d2 = squared_distance(reference, candidates[i]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

inline Point2 centroid(const std::vector<Point2>& points) {
  if (points.empty()) {
    throw std::invalid_argument("empty point set");
  }
  double sx = 0.0, sy = 0.0;
  for (const Point2& p : points) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(points.size());
  return {sx / n, sy / n};
}

namespace detail {

inline Circle circle_from_two(const Point2& a, const Point2& b) {
  const Point2 c{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  return {c, 0.5 * distance(a, b)};
}

// Circumcircle of three points, translated to keep the arithmetic small.
// Falls back to the widest two-point circle for (near-)collinear triples.
inline Circle circle_from_three(const Point2& a, const Point2& b,
                                const Point2& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::abs(d) < 1e-12) {
    Circle best{{0, 0}, -1.0};
    for (const Circle& cand :
         {circle_from_two(a, b), circle_from_two(a, c), circle_from_two(b, c)}) {
      if (cand.contains(a) && cand.contains(b) && cand.contains(c) &&
          (best.radius < 0.0 || cand.radius < best.radius)) {
        best = cand;
      }
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const Point2 center{a.x + (cy * b2 - by * c2) / d,
                      a.y + (bx * c2 - cx * b2) / d};
  return {center, distance(center, a)};
}

// Smallest circle with all of `boundary` on its edge (|boundary| <= 3).
inline Circle circle_from_boundary(const std::array<Point2, 3>& boundary,
                                   int count) {
  switch (count) {
    case 0:
      return {{0.0, 0.0}, -1.0};
    case 1:
      return {boundary[0], 0.0};
    case 2:
      return circle_from_two(boundary[0], boundary[1]);
    default: {
      // Prefer a two-point circle when the third boundary point already fits.
      for (int i = 0; i < 3; ++i) {
        const Circle c = circle_from_two(boundary[i], boundary[(i + 1) % 3]);
        if (c.contains(boundary[(i + 2) % 3])) {
          return c;
        }
      }
      return circle_from_three(boundary[0], boundary[1], boundary[2]);
    }
  }
}

inline Circle welzl(const std::vector<Point2>& pts, std::size_t n,
                    std::array<Point2, 3>& boundary, int boundary_count) {
  if (n == 0 || boundary_count == 3) {
    return circle_from_boundary(boundary, boundary_count);
  }
  const Point2& p = pts[n - 1];
  Circle c = welzl(pts, n - 1, boundary, boundary_count);
  if (c.radius >= 0.0 && c.contains(p)) {
    return c;
  }
  boundary[boundary_count] = p;
  return welzl(pts, n - 1, boundary, boundary_count + 1);
}

}  // namespace detail

// Smallest enclosing circle via Welzl's algorithm. The input is run through
// a seeded permutation instead of a nondeterministic shuffle, so the same
// point sequence always yields the same circle bit for bit.
inline Circle smallest_enclosing_circle(
    std::vector<Point2> points, std::uint64_t shuffle_seed = kSecShuffleSeed) {
  if (points.empty()) {
    throw std::invalid_argument("empty point set");
  }
  Rng rng(shuffle_seed);
  rng.shuffle(points);
  std::array<Point2, 3> boundary{};
  return detail::welzl(points, points.size(), boundary, 0);
}

}  // namespace uavbs
