#ifndef GEOSCORE_TESTS_SUPPORT_HPP
#define GEOSCORE_TESTS_SUPPORT_HPP

// Shared fixtures and independent oracles. The oracles deliberately use
// different algorithms than the library (ray casting + Monte Carlo for
// areas, exhaustive path enumeration for shortest paths) so they can
// vouch for the production implementations.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "geoscore/apls.hpp"
#include "geoscore/buildings_metric.hpp"
#include "geoscore/records.hpp"
#include "geoscore/road_graph.hpp"

namespace testsupport {

using geoscore::BuildingRecord;
using geoscore::ControlNodeSet;
using geoscore::Point2;
using geoscore::Polygon;
using geoscore::Polyline;
using geoscore::RoadGraph;
using geoscore::RoadSegmentRecord;

inline RoadSegmentRecord road(std::vector<Point2> pts, int id = 0) {
  return RoadSegmentRecord{Polyline(std::move(pts)), id, geoscore::RoadType::Residential,
                           geoscore::Surface::Paved, geoscore::BridgeType::NotBridge, 2};
}

inline Polygon rect(double x0, double y0, double x1, double y1) {
  return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

inline BuildingRecord building(int id, const Polygon& footprint) {
  return BuildingRecord{id, footprint};
}

// Random convex polygon: vertices on a circle at jittered spoke angles,
// so the shape always contains a disk around its center (keeps random
// intersections measurable for the Monte Carlo comparisons).
inline Polygon random_convex(std::mt19937_64& rng, Point2 center, double rmin, double rmax,
                             int nmin = 5, int nmax = 12) {
  std::uniform_int_distribution<int> nd(nmin, nmax);
  std::uniform_real_distribution<double> rd(rmin, rmax);
  std::uniform_real_distribution<double> jd(0.0, 0.8);
  const int n = nd(rng);
  const double radius = rd(rng);
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * (static_cast<double>(i) + jd(rng)) / n;
    pts.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return Polygon(pts);
}

// Independent even-odd containment test (ray casting).
inline bool ray_cast_inside(const Point2& p, const std::vector<Point2>& ring) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = ring[j];
    const Point2& b = ring[i];
    if ((b.y > p.y) != (a.y > p.y)) {
      const double x = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

inline bool oracle_point_in_polygon(const Point2& p, const Polygon& poly) {
  if (!ray_cast_inside(p, poly.exterior())) return false;
  for (const auto& hole : poly.holes()) {
    if (ray_cast_inside(p, hole)) return false;
  }
  return true;
}

// Monte Carlo estimate of the intersection area over the union bbox.
inline double mc_intersection_area(const Polygon& a, const Polygon& b, std::size_t samples,
                                   std::mt19937_64& rng) {
  geoscore::BBox box = a.bbox();
  box.expand(b.bbox());
  std::uniform_real_distribution<double> xd(box.lo.x, box.hi.x);
  std::uniform_real_distribution<double> yd(box.lo.y, box.hi.y);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point2 p{xd(rng), yd(rng)};
    if (oracle_point_in_polygon(p, a) && oracle_point_in_polygon(p, b)) ++hits;
  }
  return box.width() * box.height() * static_cast<double>(hits) /
         static_cast<double>(samples);
}

// Exhaustive shortest path over simple paths; lengths are accumulated as
// a left fold from the source exactly like a relaxation chain would.
inline void enumerate_paths(const RoadGraph& g, int node, int target, double acc,
                            std::vector<char>& visited, std::optional<double>& best) {
  if (node == target) {
    if (!best || acc < *best) best = acc;
    return;
  }
  visited[static_cast<std::size_t>(node)] = 1;
  for (int e : g.adjacency[static_cast<std::size_t>(node)]) {
    const auto& edge = g.edges[static_cast<std::size_t>(e)];
    const int other = edge.a == node ? edge.b : edge.a;
    if (visited[static_cast<std::size_t>(other)]) continue;
    enumerate_paths(g, other, target, acc + edge.length, visited, best);
  }
  visited[static_cast<std::size_t>(node)] = 0;
}

inline std::optional<double> brute_force_shortest(const RoadGraph& g, int a, int b) {
  if (a == b) return 0.0;
  std::optional<double> best;
  std::vector<char> visited(g.nodes.size(), 0);
  enumerate_paths(g, a, b, 0.0, visited, best);
  return best;
}

// One direction of the metric with every shortest path found by
// exhaustive enumeration; mirrors the production pair order and
// accumulation so agreement can be checked exactly.
inline double apls_direction_oracle(const RoadGraph& source, const ControlNodeSet& controls,
                                    const geoscore::SnapResult& snap) {
  double sum = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    for (std::size_t j = i + 1; j < controls.size(); ++j) {
      const auto len = brute_force_shortest(source, controls.ids[i], controls.ids[j]);
      if (!len || !(*len > 0.0)) continue;
      ++count;
      const int a = snap.mapping[i];
      const int b = snap.mapping[j];
      if (a == geoscore::kUnsnapped || b == geoscore::kUnsnapped) {
        sum += 1.0;
        continue;
      }
      const auto target_len = brute_force_shortest(snap.augmented_target, a, b);
      if (!target_len) {
        sum += 1.0;
        continue;
      }
      sum += std::min(1.0, std::abs(*len - *target_len) / *len);
    }
  }
  if (count == 0) return 0.0;
  return std::clamp(1.0 - sum / static_cast<double>(count), 0.0, 1.0);
}

// Floyd-Warshall over the node set, an all-pairs oracle.
inline std::vector<std::vector<double>> floyd_warshall(const RoadGraph& g) {
  const std::size_t n = g.nodes.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : g.edges) {
    const auto a = static_cast<std::size_t>(e.a);
    const auto b = static_cast<std::size_t>(e.b);
    d[a][b] = std::min(d[a][b], e.length);
    d[b][a] = std::min(d[b][a], e.length);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

// Random connected graph as straight segments: a random spanning tree
// over scattered nodes plus a few extra chords. Chords are deduplicated
// so no road is labeled twice.
inline std::vector<RoadSegmentRecord> random_connected_segments(std::mt19937_64& rng,
                                                                int n_nodes, double extent,
                                                                int extra_edges) {
  std::uniform_real_distribution<double> cd(0.0, extent);
  std::vector<Point2> nodes;
  nodes.reserve(static_cast<std::size_t>(n_nodes));
  for (int i = 0; i < n_nodes; ++i) nodes.push_back({cd(rng), cd(rng)});

  std::set<std::pair<int, int>> used;
  std::vector<RoadSegmentRecord> segments;
  int id = 0;
  for (int i = 1; i < n_nodes; ++i) {
    std::uniform_int_distribution<int> pd(0, i - 1);
    const int j = pd(rng);
    used.insert({std::min(i, j), std::max(i, j)});
    segments.push_back(road({nodes[static_cast<std::size_t>(j)],
                             nodes[static_cast<std::size_t>(i)]},
                            id++));
  }
  std::uniform_int_distribution<int> nd(0, n_nodes - 1);
  for (int e = 0; e < extra_edges; ++e) {
    const int i = nd(rng);
    const int j = nd(rng);
    if (i == j || !used.insert({std::min(i, j), std::max(i, j)}).second) continue;
    segments.push_back(road({nodes[static_cast<std::size_t>(i)],
                             nodes[static_cast<std::size_t>(j)]},
                            id++));
  }
  return segments;
}

// Rectangular street grid: nx vertical and ny horizontal lines with the
// given spacing, each line one long record.
inline std::vector<RoadSegmentRecord> grid_segments(int nx, int ny, double spacing) {
  std::vector<RoadSegmentRecord> segments;
  int id = 0;
  for (int x = 0; x < nx; ++x) {
    std::vector<Point2> pts;
    for (int y = 0; y < ny; ++y) pts.push_back({x * spacing, y * spacing});
    segments.push_back(road(std::move(pts), id++));
  }
  for (int y = 0; y < ny; ++y) {
    std::vector<Point2> pts;
    for (int x = 0; x < nx; ++x) pts.push_back({x * spacing, y * spacing});
    segments.push_back(road(std::move(pts), id++));
  }
  return segments;
}

// Greedy-vs-optimal oracle: maximum one-to-one matching size on the
// candidate pairs with IoU >= threshold, via augmenting paths.
inline int max_matching_size(int n_truth, int n_proposal,
                             const std::vector<std::pair<int, int>>& candidates) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_truth));
  for (const auto& [t, p] : candidates) adj[static_cast<std::size_t>(t)].push_back(p);
  std::vector<int> match_p(static_cast<std::size_t>(n_proposal), -1);

  std::vector<char> seen;
  std::function<bool(int)> try_kuhn = [&](int t) -> bool {
    for (int p : adj[static_cast<std::size_t>(t)]) {
      if (seen[static_cast<std::size_t>(p)]) continue;
      seen[static_cast<std::size_t>(p)] = 1;
      if (match_p[static_cast<std::size_t>(p)] < 0 || try_kuhn(match_p[static_cast<std::size_t>(p)])) {
        match_p[static_cast<std::size_t>(p)] = t;
        return true;
      }
    }
    return false;
  };

  int size = 0;
  for (int t = 0; t < n_truth; ++t) {
    seen.assign(static_cast<std::size_t>(n_proposal), 0);
    if (try_kuhn(t)) ++size;
  }
  return size;
}

}  // namespace testsupport

#endif  // GEOSCORE_TESTS_SUPPORT_HPP
