#include "mapsx/geometry.hpp"

#include <algorithm>
#include <limits>

namespace mapsx {

namespace {

// Sign of the turn p -> q -> r: +1 counter-clockwise, -1 clockwise,
// 0 within the collinearity tolerance.
int orientation(Point2 p, Point2 q, Point2 r) {
  const double v = cross(q - p, r - p);
  if (std::abs(v) <= kGeomEps) return 0;
  return v > 0.0 ? 1 : -1;
}

// Assumes p, q, r collinear: is q inside the bounding box of pr?
bool on_segment(Point2 p, Point2 q, Point2 r) {
  return q.x <= std::max(p.x, r.x) + kGeomEps && q.x >= std::min(p.x, r.x) - kGeomEps &&
         q.y <= std::max(p.y, r.y) + kGeomEps && q.y >= std::min(p.y, r.y) - kGeomEps;
}

// Crossing or touching, closed-set semantics.
bool segments_cross(const Segment2& s, const Segment2& t) {
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);

  if (o1 != o2 && o3 != o4) return true;

  if (o1 == 0 && on_segment(s.a, t.a, s.b)) return true;
  if (o2 == 0 && on_segment(s.a, t.b, s.b)) return true;
  if (o3 == 0 && on_segment(t.a, s.a, t.b)) return true;
  if (o4 == 0 && on_segment(t.a, s.b, t.b)) return true;
  return false;
}

}  // namespace

double point_segment_distance(Point2 p, const Segment2& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  double t = dot(p - s.a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

double segment_distance(const Segment2& a, const Segment2& b) {
  if (segments_cross(a, b)) return 0.0;
  return std::min(std::min(point_segment_distance(a.a, b), point_segment_distance(a.b, b)),
                  std::min(point_segment_distance(b.a, a), point_segment_distance(b.b, a)));
}

bool seg_intersect(const Segment2& a, const Segment2& b, double eps) {
  return segment_distance(a, b) <= eps;
}

bool polylines_conflict(const Polyline2& p, const Polyline2& q, double clearance) {
  return polylines_conflict(p, q, clearance, nullptr);
}

bool polylines_conflict(const Polyline2& p, const Polyline2& q, double clearance,
                        std::uint64_t* pairs_evaluated) {
  const auto segment_of = [](const Polyline2& pl, std::size_t i) -> Segment2 {
    if (pl.points.size() == 1) return {pl.points[0], pl.points[0]};
    return {pl.points[i], pl.points[i + 1]};
  };
  const std::size_t np = p.points.size() <= 1 ? 1 : p.points.size() - 1;
  const std::size_t nq = q.points.size() <= 1 ? 1 : q.points.size() - 1;

  for (std::size_t i = 0; i < np; ++i) {
    const Segment2 si = segment_of(p, i);
    for (std::size_t j = 0; j < nq; ++j) {
      if (pairs_evaluated) ++*pairs_evaluated;
      if (seg_intersect(si, segment_of(q, j), clearance)) return true;
    }
  }
  return false;
}

namespace {

double aabb_distance(Point2 c, const Aabb& r) {
  const double dx = std::max({r.xmin - c.x, 0.0, c.x - r.xmax});
  const double dy = std::max({r.ymin - c.y, 0.0, c.y - r.ymax});
  return std::hypot(dx, dy);
}

double polygon_distance(Point2 c, const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % n];
    if (cross(b - a, c - a) < -kGeomEps) inside = false;
    best = std::min(best, point_segment_distance(c, {a, b}));
  }
  return inside ? 0.0 : best;
}

}  // namespace

double obstacle_distance(Point2 c, const Obstacle& o) {
  return std::visit(
      [&](const auto& shape) {
        if constexpr (std::is_same_v<std::decay_t<decltype(shape)>, Aabb>) {
          return aabb_distance(c, shape);
        } else {
          return polygon_distance(c, shape);
        }
      },
      o);
}

bool disc_hits_obstacle(Point2 c, double radius, const Obstacle& o) {
  return obstacle_distance(c, o) <= radius;
}

}  // namespace mapsx
