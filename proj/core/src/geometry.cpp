#include "geoscore/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace geoscore {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

bool finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void check_geo(const GeoPoint& p) {
  if (!std::isfinite(p.lon) || !std::isfinite(p.lat) || p.lon < -180.0 ||
      p.lon > 180.0 || p.lat < -90.0 || p.lat > 90.0) {
    throw GeometryError("lon/lat out of range");
  }
}

double segment_length(const Point2& a, const Point2& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

// Open ring normalization: drop a repeated closing vertex and collapse
// consecutive duplicates.
std::vector<Point2> normalize_ring(std::vector<Point2> ring) {
  for (const auto& p : ring) {
    if (!finite(p)) throw GeometryError("non-finite ring coordinate");
  }
  if (ring.size() >= 2 && ring.front() == ring.back()) ring.pop_back();
  std::vector<Point2> out;
  out.reserve(ring.size());
  for (const auto& p : ring) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  if (out.size() >= 2 && out.front() == out.back()) out.pop_back();
  return out;
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Segment intersection test including collinear overlap and endpoint touch.
bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1,
                        const Point2& q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(p1, q1, q2)) return true;
  if (d2 == 0 && on_segment(p2, q1, q2)) return true;
  if (d3 == 0 && on_segment(q1, p1, p2)) return true;
  if (d4 == 0 && on_segment(q2, p1, p2)) return true;
  return false;
}

// Even-odd containment; boundary points count as inside.
bool point_in_ring(const Point2& p, const std::vector<Point2>& ring) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = ring[j];
    const Point2& b = ring[i];
    if (cross(a, b, p) == 0 && on_segment(p, a, b)) return true;
    if ((b.y > p.y) != (a.y > p.y)) {
      const double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

void check_simple_ring(const std::vector<Point2>& ring, const char* what) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a1 = ring[i];
    const Point2& a2 = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point2& b1 = ring[j];
      const Point2& b2 = ring[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent segments may only touch at their shared endpoint.
        const Point2& shared = (j == i + 1) ? a2 : a1;
        const Point2& afree = (j == i + 1) ? a1 : a2;
        const Point2& bfree = (j == i + 1) ? b2 : b1;
        if (cross(shared, afree, bfree) == 0 &&
            (on_segment(afree, shared, bfree) || on_segment(bfree, shared, afree))) {
          throw GeometryError(std::string(what) + ": collinear spike in ring");
        }
        continue;
      }
      if (segments_intersect(a1, a2, b1, b2)) {
        throw GeometryError(std::string(what) + ": self-intersecting ring");
      }
    }
  }
}

bool rings_edges_intersect(const std::vector<Point2>& r1,
                           const std::vector<Point2>& r2) {
  const std::size_t n1 = r1.size(), n2 = r2.size();
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      if (segments_intersect(r1[i], r1[(i + 1) % n1], r2[j], r2[(j + 1) % n2])) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

void BBox::expand(const Point2& p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

void BBox::expand(const BBox& b) {
  expand(b.lo);
  expand(b.hi);
}

bool BBox::overlaps(const BBox& b) const {
  return lo.x <= b.hi.x && b.lo.x <= hi.x && lo.y <= b.hi.y && b.lo.y <= hi.y;
}

BBox BBox::of(const std::vector<Point2>& points) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BBox box{{inf, inf}, {-inf, -inf}};
  for (const auto& p : points) box.expand(p);
  return box;
}

Polyline::Polyline(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw GeometryError("polyline needs >= 2 vertices");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (!finite(vertices_[i])) throw GeometryError("non-finite polyline vertex");
    if (vertices_[i] == vertices_[i + 1]) {
      throw GeometryError("consecutive duplicate polyline vertices");
    }
    total += segment_length(vertices_[i], vertices_[i + 1]);
  }
  if (!finite(vertices_.back())) throw GeometryError("non-finite polyline vertex");
  if (!(total > 0.0)) throw GeometryError("zero-length polyline");
}

Polygon::Polygon(std::vector<Point2> exterior,
                 std::vector<std::vector<Point2>> holes) {
  exterior_ = normalize_ring(std::move(exterior));
  if (exterior_.size() < 3) throw GeometryError("exterior ring needs >= 3 distinct vertices");
  check_simple_ring(exterior_, "exterior");
  double area = ring_signed_area(exterior_);
  if (area == 0.0) throw GeometryError("zero-area exterior ring");
  if (area < 0.0) std::reverse(exterior_.begin(), exterior_.end());

  holes_.reserve(holes.size());
  for (auto& h : holes) {
    auto ring = normalize_ring(std::move(h));
    if (ring.size() < 3) throw GeometryError("hole ring needs >= 3 distinct vertices");
    check_simple_ring(ring, "hole");
    double ha = ring_signed_area(ring);
    if (ha == 0.0) throw GeometryError("zero-area hole ring");
    if (ha > 0.0) std::reverse(ring.begin(), ring.end());  // holes clockwise
    if (!point_in_ring(ring.front(), exterior_) ||
        rings_edges_intersect(ring, exterior_)) {
      throw GeometryError("hole outside exterior ring");
    }
    for (const auto& other : holes_) {
      if (rings_edges_intersect(ring, other) ||
          point_in_ring(ring.front(), other) || point_in_ring(other.front(), ring)) {
        throw GeometryError("overlapping hole rings");
      }
    }
    holes_.push_back(std::move(ring));
  }

  bbox_ = BBox::of(exterior_);
}

std::vector<Point2> project_to_local(const std::vector<GeoPoint>& points,
                                     const GeoPoint& origin) {
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(project_to_local(p, origin));
  return out;
}

Point2 project_to_local(const GeoPoint& point, const GeoPoint& origin) {
  check_geo(origin);
  check_geo(point);
  const double dlon = point.lon - origin.lon;
  const double dlat = point.lat - origin.lat;
  if (std::abs(dlon) > kProjectionExtentDeg || std::abs(dlat) > kProjectionExtentDeg) {
    throw ExtentError("point outside projection validity window");
  }
  const double cos0 = std::cos(origin.lat * kDegToRad);
  return {kEarthRadiusM * cos0 * dlon * kDegToRad, kEarthRadiusM * dlat * kDegToRad};
}

GeoPoint unproject(const Point2& point, const GeoPoint& origin) {
  check_geo(origin);
  const double cos0 = std::cos(origin.lat * kDegToRad);
  if (cos0 <= 0.0) throw GeometryError("projection origin at a pole");
  return {origin.lon + point.x / (kEarthRadiusM * cos0) * kRadToDeg,
          origin.lat + point.y / kEarthRadiusM * kRadToDeg};
}

double polyline_length(const Polyline& line) {
  const auto& v = line.vertices();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) total += segment_length(v[i], v[i + 1]);
  return total;
}

double ring_signed_area(const std::vector<Point2>& ring) {
  double a = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    a += ring[j].x * ring[i].y - ring[i].x * ring[j].y;
  }
  return 0.5 * a;
}

double polygon_area(const Polygon& p) {
  double area = ring_signed_area(p.exterior());  // exterior is CCW, positive
  for (const auto& h : p.holes()) {
    area += ring_signed_area(h);  // holes are CW, negative
  }
  return area;
}

PolylineProjection point_to_polyline(const Point2& point, const Polyline& line) {
  const auto& v = line.vertices();
  PolylineProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[i + 1];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((point.x - a.x) * dx + (point.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Point2 nearest{a.x + t * dx, a.y + t * dy};
    const double d = std::hypot(point.x - nearest.x, point.y - nearest.y);
    if (d < best.distance) {
      best = {d, nearest, i, t};
    }
  }
  return best;
}

double snap_to_grid(double v) { return std::round(v / kSnapGridM) * kSnapGridM; }

}  // namespace geoscore
