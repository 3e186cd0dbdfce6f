#include "geoscore/road_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <utility>

#include <json.hpp>

#include "graph_detail.hpp"

namespace geoscore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kArcEps = 1e-9;

using Coord = std::pair<double, double>;

Coord key(const Point2& p) { return {p.x, p.y}; }

double dist2(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

bool lex_less(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [](const Point2& p, const Point2& q) {
        return p.x != q.x ? p.x < q.x : p.y < q.y;
      });
}

// Union-find over endpoint coordinates bucketed at the merge tolerance.
class EndpointClusters {
 public:
  EndpointClusters(const std::vector<Point2>& coords, double tolerance)
      : coords_(coords), parent_(coords.size()) {
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<int>(i);
    if (tolerance <= 0.0) return;
    std::map<std::pair<long long, long long>, std::vector<int>> buckets;
    auto bucket_of = [&](const Point2& p) {
      return std::make_pair(static_cast<long long>(std::floor(p.x / tolerance)),
                            static_cast<long long>(std::floor(p.y / tolerance)));
    };
    for (int i = 0; i < static_cast<int>(coords_.size()); ++i) {
      buckets[bucket_of(coords_[static_cast<std::size_t>(i)])].push_back(i);
    }
    const double tol2 = tolerance * tolerance;
    for (int i = 0; i < static_cast<int>(coords_.size()); ++i) {
      const auto base = bucket_of(coords_[static_cast<std::size_t>(i)]);
      for (long long dy = -1; dy <= 1; ++dy) {
        for (long long dx = -1; dx <= 1; ++dx) {
          auto it = buckets.find({base.first + dx, base.second + dy});
          if (it == buckets.end()) continue;
          for (int j : it->second) {
            if (j < i && dist2(coords_[static_cast<std::size_t>(i)],
                               coords_[static_cast<std::size_t>(j)]) <= tol2) {
              unite(i, j);
            }
          }
        }
      }
    }
  }

  int find(int i) {
    while (parent_[static_cast<std::size_t>(i)] != i) {
      parent_[static_cast<std::size_t>(i)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(i)])];
      i = parent_[static_cast<std::size_t>(i)];
    }
    return i;
  }

  // Cluster centroid, snapped to the deterministic grid.
  std::map<Coord, Point2> representatives() {
    std::map<int, std::vector<int>> members;
    for (int i = 0; i < static_cast<int>(coords_.size()); ++i) {
      members[find(i)].push_back(i);
    }
    std::map<Coord, Point2> rep;
    for (const auto& [root, idxs] : members) {
      double sx = 0.0, sy = 0.0;
      for (int i : idxs) {
        sx += coords_[static_cast<std::size_t>(i)].x;
        sy += coords_[static_cast<std::size_t>(i)].y;
      }
      const Point2 c{snap_to_grid(sx / static_cast<double>(idxs.size())),
                     snap_to_grid(sy / static_cast<double>(idxs.size()))};
      for (int i : idxs) rep[key(coords_[static_cast<std::size_t>(i)])] = c;
    }
    return rep;
  }

 private:
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

  const std::vector<Point2>& coords_;
  std::vector<int> parent_;
};

}  // namespace

namespace detail {

void build_adjacency(RoadGraph& graph) {
  graph.adjacency.assign(graph.nodes.size(), {});
  for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    graph.adjacency[static_cast<std::size_t>(edge.a)].push_back(e);
    if (edge.b != edge.a) graph.adjacency[static_cast<std::size_t>(edge.b)].push_back(e);
  }
}

RoadGraph assemble(const std::vector<Point2>& coords, std::vector<RawEdge> edges) {
  // Keep only coordinates referenced by an edge, deduplicated and sorted.
  std::map<Coord, int> ids;
  for (const auto& e : edges) {
    ids.emplace(key(coords[static_cast<std::size_t>(e.a)]), 0);
    ids.emplace(key(coords[static_cast<std::size_t>(e.b)]), 0);
  }
  RoadGraph graph;
  graph.nodes.reserve(ids.size());
  int next = 0;
  for (auto& [coord, id] : ids) {
    id = next++;
    graph.nodes.push_back({coord.first, coord.second});
  }

  for (auto& raw : edges) {
    int a = ids.at(key(coords[static_cast<std::size_t>(raw.a)]));
    int b = ids.at(key(coords[static_cast<std::size_t>(raw.b)]));
    std::vector<Point2> geom = std::move(raw.geometry);
    if (a > b) {
      std::swap(a, b);
      std::reverse(geom.begin(), geom.end());
    } else if (a == b) {
      std::vector<Point2> rev(geom.rbegin(), geom.rend());
      if (lex_less(rev, geom)) geom = std::move(rev);
    }
    Polyline line(std::move(geom));
    const double length = polyline_length(line);
    graph.edges.push_back({a, b, std::move(line), length});
  }

  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const RoadGraph::Edge& x, const RoadGraph::Edge& y) {
              if (x.a != y.a) return x.a < y.a;
              if (x.b != y.b) return x.b < y.b;
              if (x.length != y.length) return x.length < y.length;
              return lex_less(x.geometry.vertices(), y.geometry.vertices());
            });

  // Drop exact duplicates (the same road labeled twice); parallel edges
  // with distinct geometry are kept.
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end(),
                                [](const RoadGraph::Edge& x, const RoadGraph::Edge& y) {
                                  return x.a == y.a && x.b == y.b &&
                                         x.geometry.vertices() == y.geometry.vertices();
                                }),
                    graph.edges.end());

  build_adjacency(graph);
  graph.kinds.resize(graph.nodes.size());
  for (std::size_t n = 0; n < graph.nodes.size(); ++n) {
    graph.kinds[n] =
        graph.adjacency[n].size() == 1 ? NodeKind::Endpoint : NodeKind::Intersection;
  }
  return graph;
}

}  // namespace detail

RoadGraph build_graph(const std::vector<RoadSegmentRecord>& segments,
                      double merge_tolerance, std::vector<std::string>* warnings) {
  // Snap vertices to the deterministic grid and drop degenerate segments.
  std::vector<std::vector<Point2>> chains;
  for (const auto& seg : segments) {
    std::vector<Point2> chain;
    for (const auto& v : seg.geometry.vertices()) {
      Point2 p{snap_to_grid(v.x), snap_to_grid(v.y)};
      if (chain.empty() || !(chain.back() == p)) chain.push_back(p);
    }
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      len += std::hypot(chain[i + 1].x - chain[i].x, chain[i + 1].y - chain[i].y);
    }
    if (chain.size() < 2 || !(len > 0.0)) {
      if (warnings) {
        warnings->push_back("zero-length segment skipped (road_id " +
                            std::to_string(seg.road_id) + ")");
      }
      continue;
    }
    chains.push_back(std::move(chain));
  }

  // A coordinate seen more than once across all chains is a junction;
  // chain endpoints are always nodes.
  std::map<Coord, int> occurrences;
  for (const auto& chain : chains) {
    for (const auto& v : chain) ++occurrences[key(v)];
  }

  std::map<Coord, int> endpoint_ids;
  std::vector<Point2> endpoint_coords;
  for (const auto& chain : chains) {
    for (const Point2& p : {chain.front(), chain.back()}) {
      if (endpoint_ids.emplace(key(p), static_cast<int>(endpoint_coords.size())).second) {
        endpoint_coords.push_back(p);
      }
    }
  }
  EndpointClusters clusters(endpoint_coords, merge_tolerance);
  const auto cluster_rep = clusters.representatives();

  // Final coordinate of a split point: cluster centroid for endpoints,
  // the exact shared coordinate otherwise.
  auto resolve = [&](const Point2& p) {
    auto it = cluster_rep.find(key(p));
    return it != cluster_rep.end() ? it->second : p;
  };

  std::vector<Point2> raw_coords;
  std::map<Coord, int> raw_ids;
  auto intern = [&](const Point2& p) {
    auto [it, inserted] = raw_ids.emplace(key(p), static_cast<int>(raw_coords.size()));
    if (inserted) raw_coords.push_back(p);
    return it->second;
  };

  std::vector<detail::RawEdge> raw_edges;
  for (const auto& chain : chains) {
    std::vector<std::size_t> cuts;
    cuts.push_back(0);
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
      if (occurrences.at(key(chain[i])) >= 2) cuts.push_back(i);
    }
    cuts.push_back(chain.size() - 1);

    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      std::vector<Point2> geom(chain.begin() + static_cast<std::ptrdiff_t>(cuts[c]),
                               chain.begin() + static_cast<std::ptrdiff_t>(cuts[c + 1]) + 1);
      geom.front() = resolve(geom.front());
      geom.back() = resolve(geom.back());
      std::vector<Point2> dedup;
      for (const auto& p : geom) {
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
      }
      double len = 0.0;
      for (std::size_t i = 0; i + 1 < dedup.size(); ++i) {
        len += std::hypot(dedup[i + 1].x - dedup[i].x, dedup[i + 1].y - dedup[i].y);
      }
      if (dedup.size() < 2 || !(len > 0.0)) {
        if (warnings) warnings->push_back("edge collapsed by endpoint merge, skipped");
        continue;
      }
      detail::RawEdge edge;
      edge.a = intern(dedup.front());
      edge.b = intern(dedup.back());
      edge.geometry = std::move(dedup);
      raw_edges.push_back(std::move(edge));
    }
  }

  return detail::assemble(raw_coords, std::move(raw_edges));
}

Point2 point_at_arc_length(const Polyline& line, double arc) {
  const auto& v = line.vertices();
  if (arc <= 0.0) return v.front();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double seg = std::hypot(v[i + 1].x - v[i].x, v[i + 1].y - v[i].y);
    if (arc <= acc + seg) {
      const double t = seg > 0.0 ? (arc - acc) / seg : 0.0;
      return {v[i].x + t * (v[i + 1].x - v[i].x), v[i].y + t * (v[i + 1].y - v[i].y)};
    }
    acc += seg;
  }
  return v.back();
}

std::vector<Polyline> slice_polyline(const Polyline& line, const std::vector<double>& arcs) {
  const auto& v = line.vertices();
  std::vector<Polyline> pieces;
  std::vector<Point2> current{v.front()};
  auto push_point = [&](const Point2& p) {
    if (!(current.back() == p)) current.push_back(p);
  };

  double acc = 0.0;
  std::size_t ai = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double seg = std::hypot(v[i + 1].x - v[i].x, v[i + 1].y - v[i].y);
    while (ai < arcs.size() && arcs[ai] <= acc + seg + kArcEps) {
      const double t = seg > 0.0 ? std::clamp((arcs[ai] - acc) / seg, 0.0, 1.0) : 0.0;
      const Point2 cut{v[i].x + t * (v[i + 1].x - v[i].x),
                       v[i].y + t * (v[i + 1].y - v[i].y)};
      push_point(cut);
      if (current.size() >= 2) {
        pieces.emplace_back(std::move(current));
        current = {cut};
      }
      ++ai;
    }
    push_point(v[i + 1]);
    acc += seg;
  }
  if (current.size() >= 2 || pieces.empty()) {
    pieces.emplace_back(std::move(current));
  }
  return pieces;
}

AugmentedGraph inject_midpoints(const RoadGraph& graph, double spacing) {
  if (!(spacing > 0.0)) throw ConfigError("midpoint spacing must be positive");

  AugmentedGraph out;
  out.graph.nodes = graph.nodes;
  out.graph.kinds = graph.kinds;

  for (const auto& edge : graph.edges) {
    const double len = edge.length;
    const int k = std::max(1, static_cast<int>(std::ceil((len - kArcEps) / spacing)));
    if (k == 1) {
      out.graph.edges.push_back(edge);
      continue;
    }
    std::vector<double> arcs;
    arcs.reserve(static_cast<std::size_t>(k) - 1);
    for (int i = 1; i < k; ++i) arcs.push_back(len * static_cast<double>(i) / k);
    auto pieces = slice_polyline(edge.geometry, arcs);

    int prev = edge.a;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      int next;
      if (p + 1 == pieces.size()) {
        next = edge.b;
      } else {
        next = out.graph.node_count();
        out.graph.nodes.push_back(pieces[p].back());
        out.graph.kinds.push_back(NodeKind::Midpoint);
      }
      out.graph.edges.push_back(
          {prev, next, pieces[p], polyline_length(pieces[p])});
      prev = next;
    }
  }

  detail::build_adjacency(out.graph);
  out.controls.ids.resize(out.graph.nodes.size());
  for (int i = 0; i < out.graph.node_count(); ++i) out.controls.ids[static_cast<std::size_t>(i)] = i;
  return out;
}

std::vector<double> dijkstra_distances(const RoadGraph& graph, int source) {
  if (source < 0 || source >= graph.node_count()) {
    throw LookupError("unknown node id " + std::to_string(source));
  }
  std::vector<double> dist(graph.nodes.size(), kInf);
  dist[static_cast<std::size_t>(source)] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, n] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(n)]) continue;
    for (int e : graph.adjacency[static_cast<std::size_t>(n)]) {
      const auto& edge = graph.edges[static_cast<std::size_t>(e)];
      const int m = edge.a == n ? edge.b : edge.a;
      const double nd = d + edge.length;
      if (nd < dist[static_cast<std::size_t>(m)]) {
        dist[static_cast<std::size_t>(m)] = nd;
        heap.push({nd, m});
      }
    }
  }
  return dist;
}

std::optional<double> shortest_path_length(const RoadGraph& graph, int a, int b) {
  if (a < 0 || a >= graph.node_count() || b < 0 || b >= graph.node_count()) {
    throw LookupError("unknown node id");
  }
  if (a == b) return 0.0;
  const auto dist = dijkstra_distances(graph, a);
  const double d = dist[static_cast<std::size_t>(b)];
  if (d == kInf) return std::nullopt;
  return d;
}

std::vector<PathEntry> all_paths_from_sources(const RoadGraph& graph,
                                              const ControlNodeSet& sources) {
  std::vector<int> ids = sources.ids;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::vector<PathEntry> table;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto dist = dijkstra_distances(graph, ids[i]);
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const double d = dist[static_cast<std::size_t>(ids[j])];
      if (d != kInf) table.push_back({ids[i], ids[j], d});
    }
  }
  return table;
}

std::string graph_to_geojson(const RoadGraph& graph, const GeoPoint& origin) {
  using nlohmann::json;
  auto kind_name = [](NodeKind k) {
    switch (k) {
      case NodeKind::Endpoint: return "endpoint";
      case NodeKind::Intersection: return "intersection";
      case NodeKind::Midpoint: return "midpoint";
      case NodeKind::Snapped: return "snapped";
    }
    return "intersection";
  };
  json features = json::array();
  for (int n = 0; n < graph.node_count(); ++n) {
    const GeoPoint g = unproject(graph.nodes[static_cast<std::size_t>(n)], origin);
    features.push_back(
        {{"type", "Feature"},
         {"properties", {{"node_id", n}, {"kind", kind_name(graph.kinds[static_cast<std::size_t>(n)])}}},
         {"geometry", {{"type", "Point"}, {"coordinates", {g.lon, g.lat}}}}});
  }
  for (const auto& edge : graph.edges) {
    json coords = json::array();
    for (const auto& v : edge.geometry.vertices()) {
      const GeoPoint g = unproject(v, origin);
      coords.push_back({g.lon, g.lat});
    }
    features.push_back(
        {{"type", "Feature"},
         {"properties", {{"node_a", edge.a}, {"node_b", edge.b}, {"length_m", edge.length}}},
         {"geometry", {{"type", "LineString"}, {"coordinates", coords}}}});
  }
  return json{{"type", "FeatureCollection"}, {"features", features}}.dump();
}

}  // namespace geoscore
