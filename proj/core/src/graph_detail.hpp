#ifndef GEOSCORE_GRAPH_DETAIL_HPP
#define GEOSCORE_GRAPH_DETAIL_HPP

// Internal graph assembly shared by the segment builder and the
// skeleton tracer. Not installed.

#include <vector>

#include "geoscore/road_graph.hpp"

namespace geoscore::detail {

struct RawEdge {
  int a = 0;  // indices into the raw coordinate list
  int b = 0;
  std::vector<Point2> geometry;  // oriented a -> b, first/last equal coords
};

// Deduplicate coordinates, drop unreferenced nodes, sort nodes by
// coordinate, orient and sort edges, compute degree-based node kinds and
// adjacency. The result is independent of the raw input order.
RoadGraph assemble(const std::vector<Point2>& coords, std::vector<RawEdge> edges);

void build_adjacency(RoadGraph& graph);

}  // namespace geoscore::detail

#endif  // GEOSCORE_GRAPH_DETAIL_HPP
