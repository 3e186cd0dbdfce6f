#include <doctest.h>

#include <cmath>
#include <random>

#include "geoscore/geometry.hpp"
#include "support.hpp"

using namespace geoscore;
using testsupport::rect;

TEST_CASE("projection maps the origin to (0,0)") {
  const GeoPoint origin{12.5, 41.9};
  const Point2 p = project_to_local(origin, origin);
  CHECK(p.x == doctest::Approx(0.0));
  CHECK(p.y == doctest::Approx(0.0));
}

TEST_CASE("projection north scale is R * dlat") {
  const GeoPoint origin{0.0, 0.0};
  const Point2 p = project_to_local(GeoPoint{0.0, 0.001}, origin);
  CHECK(p.x == doctest::Approx(0.0));
  CHECK(p.y == doctest::Approx(111.3194908).epsilon(1e-6));
}

TEST_CASE("projection east scale shrinks with cos(lat)") {
  const GeoPoint origin{0.0, 60.0};
  const Point2 p = project_to_local(GeoPoint{0.001, 60.0}, origin);
  CHECK(p.x == doctest::Approx(55.6597454).epsilon(1e-6));
  CHECK(p.y == doctest::Approx(0.0));
}

TEST_CASE("projection rejects points outside the validity window") {
  const GeoPoint origin{0.0, 0.0};
  CHECK_THROWS_AS(project_to_local(GeoPoint{2.0, 0.0}, origin), ExtentError);
  CHECK_THROWS_AS(project_to_local(GeoPoint{0.0, -2.0}, origin), ExtentError);
  CHECK_THROWS_AS(project_to_local(GeoPoint{200.0, 0.0}, origin), GeometryError);
}

TEST_CASE("projection round trip reproduces lon/lat to 1e-9 degrees") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lond(-0.01, 0.01);
  std::uniform_real_distribution<double> latd(-0.01, 0.01);
  const GeoPoint origin{115.2, 36.1};
  for (int i = 0; i < 200; ++i) {
    const GeoPoint g{origin.lon + lond(rng), origin.lat + latd(rng)};
    const GeoPoint back = unproject(project_to_local(g, origin), origin);
    CHECK(std::abs(back.lon - g.lon) < 1e-9);
    CHECK(std::abs(back.lat - g.lat) < 1e-9);
  }
}

TEST_CASE("polyline length sums Euclidean segments") {
  CHECK(polyline_length(Polyline({{0, 0}, {3, 4}})) == doctest::Approx(5.0));
  CHECK(polyline_length(Polyline({{0, 0}, {1, 0}, {1, 1}})) == doctest::Approx(2.0));
}

TEST_CASE("polyline rejects duplicate consecutive vertices") {
  CHECK_THROWS_AS(Polyline({{1, 1}, {1, 1}}), GeometryError);
  CHECK_THROWS_AS(Polyline(std::vector<Point2>{{1, 1}}), GeometryError);
}

TEST_CASE("polyline length is invariant under vertex insertion") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cd(-100.0, 100.0);
  std::uniform_real_distribution<double> td(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> pts;
    for (int i = 0; i < 5; ++i) pts.push_back({cd(rng), cd(rng)});
    const Polyline line(pts);
    // insert an interior point on a random segment
    std::uniform_int_distribution<std::size_t> sd(0, pts.size() - 2);
    const std::size_t s = sd(rng);
    const double t = td(rng);
    const Point2 mid{pts[s].x + t * (pts[s + 1].x - pts[s].x),
                     pts[s].y + t * (pts[s + 1].y - pts[s].y)};
    std::vector<Point2> refined(pts);
    refined.insert(refined.begin() + static_cast<std::ptrdiff_t>(s) + 1, mid);
    CHECK(polyline_length(Polyline(refined)) ==
          doctest::Approx(polyline_length(line)).epsilon(1e-12));
  }
}

TEST_CASE("polygon area: unit square, hole, triangle") {
  CHECK(polygon_area(rect(0, 0, 1, 1)) == doctest::Approx(1.0));
  const Polygon with_hole({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                          {{{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}}});
  CHECK(polygon_area(with_hole) == doctest::Approx(0.75));
  CHECK(polygon_area(Polygon({{0, 0}, {2, 0}, {0, 2}})) == doctest::Approx(2.0));
}

TEST_CASE("polygon validation rejects degenerate and self-intersecting rings") {
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {2, 0}}), GeometryError);  // zero area
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), GeometryError);  // bowtie
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                          {{{2, 2}, {3, 2}, {3, 3}, {2, 3}}}),
                  GeometryError);  // hole outside
}

TEST_CASE("intersection area basics") {
  const Polygon unit = rect(0, 0, 1, 1);
  CHECK(polygon_intersection_area(unit, unit) == doctest::Approx(1.0));
  CHECK(polygon_intersection_area(unit, rect(5, 5, 6, 6)) == doctest::Approx(0.0));
  CHECK(polygon_intersection_area(unit, rect(0.5, 0, 1.5, 1)) == doctest::Approx(0.5));
}

TEST_CASE("intersection area respects holes") {
  const Polygon with_hole({{0, 0}, {4, 0}, {4, 4}, {0, 4}},
                          {{{1, 1}, {3, 1}, {3, 3}, {1, 3}}});
  // probe polygon sits entirely inside the hole
  CHECK(polygon_intersection_area(with_hole, rect(1.5, 1.5, 2.5, 2.5)) ==
        doctest::Approx(0.0));
  // probe straddles the hole boundary
  CHECK(polygon_intersection_area(with_hole, rect(0.5, 1.5, 1.5, 2.5)) ==
        doctest::Approx(0.5));
}

TEST_CASE("iou examples and range") {
  const Polygon unit = rect(0, 0, 1, 1);
  CHECK(iou(unit, unit) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(iou(unit, rect(3, 3, 4, 4)) == doctest::Approx(0.0));
  CHECK(iou(unit, rect(0.5, 0, 1.5, 1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("iou is symmetric, bounded and scale invariant") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  std::uniform_real_distribution<double> sd(0.1, 40.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Polygon a = testsupport::random_convex(rng, {cd(rng), cd(rng)}, 0.5, 1.5);
    const Polygon b = testsupport::random_convex(rng, {cd(rng), cd(rng)}, 0.5, 1.5);
    const double ab = iou(a, b);
    const double ba = iou(b, a);
    CHECK(ab == ba);  // exact: the pair is ordered canonically inside
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(iou(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    const double s = sd(rng);
    auto scale = [s](const Polygon& p) {
      std::vector<Point2> ext;
      for (const auto& v : p.exterior()) ext.push_back({v.x * s, v.y * s});
      return Polygon(ext);
    };
    CHECK(std::abs(iou(scale(a), scale(b)) - ab) < 1e-9);
  }
}

TEST_CASE("intersection area matches the Monte Carlo oracle on convex pairs") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> offset(-0.3, 0.3);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon a = testsupport::random_convex(rng, {0, 0}, 0.8, 1.3);
    const Polygon b = testsupport::random_convex(rng, {offset(rng), offset(rng)}, 0.8, 1.3);
    const double exact = polygon_intersection_area(a, b);
    const double sampled = testsupport::mc_intersection_area(a, b, 200000, rng);
    CHECK(std::abs(sampled - exact) / exact < 2e-2);
  }
}

TEST_CASE("point_to_polyline basics") {
  const Polyline line({{-1, 0}, {1, 0}});
  SUBCASE("point above the middle") {
    const auto r = point_to_polyline({0, 1}, line);
    CHECK(r.distance == doctest::Approx(1.0));
    CHECK(r.nearest.x == doctest::Approx(0.0));
    CHECK(r.nearest.y == doctest::Approx(0.0));
  }
  SUBCASE("point on a vertex") {
    const Polyline two({{0, 0}, {1, 0}, {1, 1}});
    const auto r = point_to_polyline({1, 0}, two);
    CHECK(r.distance == doctest::Approx(0.0));
    CHECK(r.nearest.x == doctest::Approx(1.0));
    CHECK(r.nearest.y == doctest::Approx(0.0));
  }
  SUBCASE("clamped to an endpoint") {
    const Polyline seg({{0, 0}, {1, 0}});
    const auto r = point_to_polyline({2, 1}, seg);
    CHECK(r.distance == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.nearest.x == doctest::Approx(1.0));
    CHECK(r.nearest.y == doctest::Approx(0.0));
    CHECK(r.param == doctest::Approx(1.0));
  }
}
