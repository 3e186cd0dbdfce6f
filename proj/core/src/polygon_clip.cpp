// Polygon intersection area via vertical trapezoid decomposition.
//
// Each polygon (exterior plus holes, even-odd filled) is cut into
// trapezoids at the x coordinates of its vertices. Within a slab the
// rings of a simple polygon cannot cross, so the edges spanning the slab
// pair up bottom/top into disjoint trapezoids. The intersection area of
// two polygons is then the sum of pairwise trapezoid/trapezoid overlap
// areas, each computed by clipping one convex quad against the other.
//
// Only the measure is produced, never the intersection topology, which
// keeps degenerate contact cases (shared edges, vertex-on-edge) harmless:
// they contribute zero area.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "geoscore/geometry.hpp"

namespace geoscore {

namespace {

struct Trapezoid {
  double x0, x1;      // slab bounds, x0 < x1
  double ylo0, yhi0;  // y interval at x0
  double ylo1, yhi1;  // y interval at x1

  [[nodiscard]] double ymin() const { return std::min(ylo0, ylo1); }
  [[nodiscard]] double ymax() const { return std::max(yhi0, yhi1); }
};

struct SlabEdge {
  double x0, y0, x1, y1;  // x0 < x1
};

std::vector<Point2> snapped_ring(const std::vector<Point2>& ring) {
  std::vector<Point2> out;
  out.reserve(ring.size());
  for (const auto& p : ring) {
    Point2 q{snap_to_grid(p.x), snap_to_grid(p.y)};
    if (out.empty() || !(out.back() == q)) out.push_back(q);
  }
  if (out.size() >= 2 && out.front() == out.back()) out.pop_back();
  return out;
}

std::vector<Trapezoid> decompose(const Polygon& poly) {
  std::vector<std::vector<Point2>> rings;
  rings.push_back(snapped_ring(poly.exterior()));
  for (const auto& h : poly.holes()) rings.push_back(snapped_ring(h));

  std::vector<double> xs;
  std::vector<SlabEdge> edges;
  for (const auto& ring : rings) {
    const std::size_t n = ring.size();
    if (n < 3) continue;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point2& a = ring[j];
      const Point2& b = ring[i];
      xs.push_back(a.x);
      if (a.x == b.x) continue;  // vertical edges never span a slab
      if (a.x < b.x) {
        edges.push_back({a.x, a.y, b.x, b.y});
      } else {
        edges.push_back({b.x, b.y, a.x, a.y});
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Exact vertex y at edge endpoints: interpolating with t == 1 rounds
  // away from e.y1, which would leave trapezoid sides inverted by an ulp
  // where two edges meet (and the clip would then discard the whole
  // trapezoid).
  auto y_at = [](const SlabEdge& e, double x) {
    if (x == e.x0) return e.y0;
    if (x == e.x1) return e.y1;
    return e.y0 + (x - e.x0) / (e.x1 - e.x0) * (e.y1 - e.y0);
  };

  std::vector<Trapezoid> traps;
  std::vector<std::array<double, 2>> span;  // (y at xa, y at xb)
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const double xa = xs[s];
    const double xb = xs[s + 1];
    span.clear();
    for (const auto& e : edges) {
      if (e.x0 <= xa && e.x1 >= xb) {
        span.push_back({y_at(e, xa), y_at(e, xb)});
      }
    }
    std::sort(span.begin(), span.end(), [](const auto& u, const auto& v) {
      const double mu = u[0] + u[1];
      const double mv = v[0] + v[1];
      if (mu != mv) return mu < mv;
      return u[0] < v[0];
    });
    for (std::size_t k = 0; k + 1 < span.size(); k += 2) {
      Trapezoid t{xa, xb, span[k][0], span[k + 1][0], span[k][1], span[k + 1][1]};
      // rounding may still invert an end by an ulp; keep intervals ordered
      if (t.ylo0 > t.yhi0) std::swap(t.ylo0, t.yhi0);
      if (t.ylo1 > t.yhi1) std::swap(t.ylo1, t.yhi1);
      traps.push_back(t);
    }
  }
  return traps;
}

// Clip the quad of `a` against the four half-planes of `b` (both CCW),
// then return the shoelace area of what survives.
double overlap_area(const Trapezoid& a, const Trapezoid& b) {
  std::vector<Point2> subject{{a.x0, a.ylo0}, {a.x1, a.ylo1}, {a.x1, a.yhi1}, {a.x0, a.yhi0}};
  const std::array<Point2, 4> clip{{{b.x0, b.ylo0}, {b.x1, b.ylo1}, {b.x1, b.yhi1}, {b.x0, b.yhi0}}};

  std::vector<Point2> next;
  for (std::size_t i = 0; i < clip.size(); ++i) {
    const Point2& c1 = clip[i];
    const Point2& c2 = clip[(i + 1) % clip.size()];
    const double ex = c2.x - c1.x;
    const double ey = c2.y - c1.y;
    if (ex == 0.0 && ey == 0.0) continue;  // degenerate clip edge
    next.clear();
    const std::size_t n = subject.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Point2& p = subject[j];
      const Point2& q = subject[(j + 1) % n];
      const double dp = ex * (p.y - c1.y) - ey * (p.x - c1.x);
      const double dq = ex * (q.y - c1.y) - ey * (q.x - c1.x);
      const bool pin = dp >= 0.0;
      const bool qin = dq >= 0.0;
      if (pin) next.push_back(p);
      if (pin != qin) {
        const double t = dp / (dp - dq);
        next.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
    subject = next;
    if (subject.size() < 3) return 0.0;
  }
  return std::max(0.0, ring_signed_area(subject));
}

// Deterministic order of the pair so intersection is exactly commutative.
bool canonical_less(const Polygon& a, const Polygon& b) {
  auto cmp_ring = [](const std::vector<Point2>& r1, const std::vector<Point2>& r2) {
    if (r1.size() != r2.size()) return r1.size() < r2.size() ? -1 : 1;
    for (std::size_t i = 0; i < r1.size(); ++i) {
      if (r1[i].x != r2[i].x) return r1[i].x < r2[i].x ? -1 : 1;
      if (r1[i].y != r2[i].y) return r1[i].y < r2[i].y ? -1 : 1;
    }
    return 0;
  };
  int c = cmp_ring(a.exterior(), b.exterior());
  if (c != 0) return c < 0;
  if (a.holes().size() != b.holes().size()) return a.holes().size() < b.holes().size();
  for (std::size_t i = 0; i < a.holes().size(); ++i) {
    c = cmp_ring(a.holes()[i], b.holes()[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// Area of the grid-snapped geometry, matching what the intersection sees.
double snapped_area(const Polygon& p) {
  double area = std::abs(ring_signed_area(snapped_ring(p.exterior())));
  for (const auto& h : p.holes()) {
    area -= std::abs(ring_signed_area(snapped_ring(h)));
  }
  return area;
}

}  // namespace

double polygon_intersection_area(const Polygon& a, const Polygon& b) {
  if (!a.bbox().overlaps(b.bbox())) return 0.0;

  const Polygon* first = &a;
  const Polygon* second = &b;
  if (canonical_less(*second, *first)) std::swap(first, second);

  const auto ta = decompose(*first);
  const auto tb = decompose(*second);

  double total = 0.0;
  for (const auto& u : ta) {
    for (const auto& v : tb) {
      if (u.x1 <= v.x0 || v.x1 <= u.x0) continue;
      if (u.ymax() <= v.ymin() || v.ymax() <= u.ymin()) continue;
      total += overlap_area(u, v);
    }
  }
  return total;
}

// Defined here rather than in geometry.cpp so the union area is computed
// on the same snapped coordinates as the intersection; mixing raw and
// snapped areas would bias iou(a, a) by the grid width.
double iou(const Polygon& a, const Polygon& b) {
  const double area_a = snapped_area(a);
  const double area_b = snapped_area(b);
  if (!(area_a > 0.0) && !(area_b > 0.0)) {
    throw GeometryError("iou undefined for two zero-area polygons");
  }
  const double inter = polygon_intersection_area(a, b);
  const double uni = area_a + area_b - inter;
  if (!(uni > 0.0)) throw GeometryError("iou undefined: empty union");
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace geoscore
