#ifndef GEOSCORE_GEOMETRY_HPP
#define GEOSCORE_GEOMETRY_HPP

/// Planar computational-geometry kernel: local projection, lengths,
/// point-to-line queries, polygon areas and IoU.
///
/// All metric computations run in a tile-local frame of projected meters
/// (x east, y north). Geographic input is converted once through
/// project_to_local() and back through unproject() for exports.
///
/// Types are immutable after construction and validate their invariants
/// in the constructor; operations are pure functions.

#include <cstddef>
#include <vector>

#include "geoscore/errors.hpp"

namespace geoscore {

/// Point in the tile-local projected frame, meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Geographic position, WGS84 degrees.
struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Equatorial radius used by the local equirectangular projection.
inline constexpr double kEarthRadiusM = 6378137.0;

/// Validity window of the local projection, degrees from the origin.
/// Tiles span a few hundred meters; anything near a degree away from the
/// origin indicates mispaired inputs.
inline constexpr double kProjectionExtentDeg = 1.25;

/// Coordinates are snapped to this grid before boolean operations so that
/// clipping results are deterministic across platforms.
inline constexpr double kSnapGridM = 1e-9;

/// Axis-aligned bounding box in the projected frame.
struct BBox {
  Point2 lo{0.0, 0.0};
  Point2 hi{0.0, 0.0};

  void expand(const Point2& p);
  void expand(const BBox& b);
  [[nodiscard]] bool overlaps(const BBox& b) const;
  [[nodiscard]] double width() const { return hi.x - lo.x; }
  [[nodiscard]] double height() const { return hi.y - lo.y; }

  static BBox of(const std::vector<Point2>& points);
};

/// Open chain of at least two vertices with positive total length.
/// Consecutive duplicate vertices are rejected.
class Polyline {
 public:
  explicit Polyline(std::vector<Point2> vertices);

  [[nodiscard]] const std::vector<Point2>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] const Point2& front() const { return vertices_.front(); }
  [[nodiscard]] const Point2& back() const { return vertices_.back(); }

 private:
  std::vector<Point2> vertices_;
};

/// Simple polygon with optional holes.
///
/// Rings are stored open (no repeated closing vertex); the exterior is
/// normalized counterclockwise and holes clockwise. Construction rejects
/// self-intersecting rings, zero-area rings, holes outside the exterior
/// and mutually intersecting holes.
class Polygon {
 public:
  explicit Polygon(std::vector<Point2> exterior,
                   std::vector<std::vector<Point2>> holes = {});

  [[nodiscard]] const std::vector<Point2>& exterior() const { return exterior_; }
  [[nodiscard]] const std::vector<std::vector<Point2>>& holes() const { return holes_; }
  [[nodiscard]] const BBox& bbox() const { return bbox_; }

 private:
  std::vector<Point2> exterior_;
  std::vector<std::vector<Point2>> holes_;
  BBox bbox_;
};

/// Equirectangular projection about `origin`:
///   x = R * cos(lat0) * dlon,  y = R * dlat   (angles in radians).
/// Throws ExtentError when a point is farther than kProjectionExtentDeg
/// from the origin and GeometryError on out-of-range lon/lat.
std::vector<Point2> project_to_local(const std::vector<GeoPoint>& points,
                                     const GeoPoint& origin);

Point2 project_to_local(const GeoPoint& point, const GeoPoint& origin);

/// Inverse of project_to_local; exact to ~1e-12 degrees at tile scale.
GeoPoint unproject(const Point2& point, const GeoPoint& origin);

/// Sum of Euclidean segment lengths, meters.
double polyline_length(const Polyline& line);

/// Exterior area minus hole areas, square meters. Always positive for a
/// valid Polygon.
double polygon_area(const Polygon& p);

/// Area of the boolean intersection. Commutative, zero when disjoint.
double polygon_intersection_area(const Polygon& a, const Polygon& b);

/// Intersection over union: I / (area(a) + area(b) - I), clamped to [0,1].
double iou(const Polygon& a, const Polygon& b);

/// Result of projecting a point onto a polyline.
struct PolylineProjection {
  double distance = 0.0;       ///< meters to the nearest point
  Point2 nearest{0.0, 0.0};    ///< nearest point, lies on the line
  std::size_t segment_index = 0;
  double param = 0.0;          ///< position within the segment, [0,1]
};

/// Global minimum over all segments; ties keep the lowest segment index.
PolylineProjection point_to_polyline(const Point2& point, const Polyline& line);

/// Shoelace signed area of an open ring (positive when counterclockwise).
double ring_signed_area(const std::vector<Point2>& ring);

/// Snap a coordinate to the deterministic kSnapGridM grid.
double snap_to_grid(double v);

}  // namespace geoscore

#endif  // GEOSCORE_GEOMETRY_HPP
