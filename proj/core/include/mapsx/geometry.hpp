#pragma once

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

namespace mapsx {

// Tolerance for orientation-degenerate segment cases (near-collinear points).
inline constexpr double kGeomEps = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// Degenerate segments (a == b) are allowed and treated as points.
struct Segment2 {
  Point2 a;
  Point2 b;
};

struct Polyline2 {
  std::vector<Point2> points;  // at least one vertex
};

// Closed axis-aligned box; doubles as the workspace bounds.
struct Aabb {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(Point2 p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

// Convex polygon, vertices in counter-clockwise order.
struct ConvexPolygon {
  std::vector<Point2> vertices;
};

using Obstacle = std::variant<Aabb, ConvexPolygon>;

double point_segment_distance(Point2 p, const Segment2& s);

// Minimum distance between two closed segments; 0 when they cross or touch.
double segment_distance(const Segment2& a, const Segment2& b);

// True iff the minimum distance between the segments is <= eps. With eps = 0
// this is a crossing/touching test using orientation predicates; collinear
// overlap counts as intersecting.
bool seg_intersect(const Segment2& a, const Segment2& b, double eps);

// True iff any segment of p comes within `clearance` of any segment of q.
// All-pairs check; quadratic in the segment counts.
bool polylines_conflict(const Polyline2& p, const Polyline2& q, double clearance);

// Same check, counting the number of segment pairs evaluated (for the
// deterministic work clock).
bool polylines_conflict(const Polyline2& p, const Polyline2& q, double clearance,
                        std::uint64_t* pairs_evaluated);

// Distance from a point to the obstacle set; 0 inside or on the boundary.
double obstacle_distance(Point2 c, const Obstacle& o);

// True iff the disc of the given radius centred at c touches the obstacle.
// Radius 0 reduces to point containment (boundary included).
bool disc_hits_obstacle(Point2 c, double radius, const Obstacle& o);

}  // namespace mapsx
