#ifndef GEOSCORE_ROAD_GRAPH_HPP
#define GEOSCORE_ROAD_GRAPH_HPP

/// Spatial road graph built from centerline records, midpoint control
/// node injection, and shortest-path queries.
///
/// Connectivity follows shared-point semantics: segments connect only
/// where they share a vertex coordinate (endpoints additionally merge
/// within a tolerance to absorb proposal jitter). Crossing segments
/// without a shared vertex stay disconnected, which is how overpasses
/// are represented.
///
/// Graphs are undirected, immutable after construction, and ordered
/// canonically (nodes sorted by coordinate, edges by endpoint ids), so
/// the build is independent of input segment order.

#include <optional>
#include <string>
#include <vector>

#include "geoscore/records.hpp"

namespace geoscore {

enum class NodeKind {
  Endpoint,      ///< degree-1 node
  Intersection,  ///< degree >= 2 node from the source geometry
  Midpoint,      ///< injected control node along an edge
  Snapped,       ///< node injected by control-node snapping
};

struct RoadGraph {
  struct Edge {
    int a = 0;
    int b = 0;
    Polyline geometry;
    double length = 0.0;
  };

  std::vector<Point2> nodes;
  std::vector<NodeKind> kinds;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adjacency;  ///< node id -> incident edge indices

  [[nodiscard]] bool empty() const { return edges.empty(); }
  [[nodiscard]] int node_count() const { return static_cast<int>(nodes.size()); }
};

/// Ids of the control nodes (endpoints, intersections, injected
/// midpoints) of a graph, ascending.
struct ControlNodeSet {
  std::vector<int> ids;

  [[nodiscard]] std::size_t size() const { return ids.size(); }
  [[nodiscard]] bool empty() const { return ids.empty(); }
};

/// Build the graph. Segment endpoints within `merge_tolerance` meters
/// collapse into one node (the cluster centroid); interior vertices
/// shared between segments become intersection nodes and split the
/// edges there. Zero-length segments are skipped with a warning.
RoadGraph build_graph(const std::vector<RoadSegmentRecord>& segments,
                      double merge_tolerance = 0.5,
                      std::vector<std::string>* warnings = nullptr);

struct AugmentedGraph {
  RoadGraph graph;
  ControlNodeSet controls;
};

/// Split every edge of length L into k = ceil(L / spacing) equal pieces
/// (k - 1 interior midpoint nodes), so control nodes sit at most
/// `spacing` meters apart. Path lengths between pre-existing nodes are
/// unchanged. Throws ConfigError when spacing <= 0.
AugmentedGraph inject_midpoints(const RoadGraph& graph, double spacing = 50.0);

/// Dijkstra distances from `source` to every node; unreachable nodes get
/// +infinity. Throws LookupError on an unknown id.
std::vector<double> dijkstra_distances(const RoadGraph& graph, int source);

/// Shortest path length between two nodes, std::nullopt when
/// disconnected.
std::optional<double> shortest_path_length(const RoadGraph& graph, int a, int b);

struct PathEntry {
  int a = 0;
  int b = 0;
  double length = 0.0;
};

/// All connected unordered control pairs (a < b) with their shortest
/// path lengths; one Dijkstra per source node. Sorted by (a, b).
std::vector<PathEntry> all_paths_from_sources(const RoadGraph& graph,
                                              const ControlNodeSet& sources);

/// Debug export: nodes as Point features (with their kind), edges as
/// LineString features (with length_m), geographic coordinates.
std::string graph_to_geojson(const RoadGraph& graph, const GeoPoint& origin);

/// Interpolate the point at arc-length position `arc` along a polyline.
Point2 point_at_arc_length(const Polyline& line, double arc);

/// Slice a polyline at ascending interior arc positions; the pieces
/// partition the original and their lengths sum to its length.
std::vector<Polyline> slice_polyline(const Polyline& line, const std::vector<double>& arcs);

}  // namespace geoscore

#endif  // GEOSCORE_ROAD_GRAPH_HPP
