#ifndef GEOSCORE_APLS_HPP
#define GEOSCORE_APLS_HPP

/// APLS (Average Path Length Similarity) between a ground-truth and a
/// proposal road graph.
///
/// Control nodes of the source graph (endpoints, intersections and
/// midpoints injected every `spacing` meters) are snapped onto the
/// nearest edge of the target graph within `buffer` meters, splitting
/// that edge. For every control pair connected in the source, the
/// proportional shortest-path difference min(1, |L - L'| / L) is
/// accumulated; pairs with an unsnapped endpoint or no target path
/// contribute the maximum 1. A direction score is one minus the mean
/// contribution. The total is the harmonic mean of the truth->proposal
/// and proposal->truth directions.

#include <string>
#include <vector>

#include "geoscore/road_graph.hpp"
#include "geoscore/tiles.hpp"

namespace geoscore {

/// Marker for a control node that found no target edge within the buffer.
inline constexpr int kUnsnapped = -1;

struct SnapResult {
  RoadGraph augmented_target;  ///< target with one node injected per snap site
  std::vector<int> mapping;    ///< control index -> node id in augmented_target, or kUnsnapped
  double buffer = 0.0;
};

/// Snap every control node of `source` onto the nearest point across all
/// edges of `target`. Nearest-point ties within 1e-9 m keep the lowest
/// edge index; snap sites within 1e-9 m of each other or of an existing
/// node share that node. An empty target yields all-unsnapped, which is
/// a valid result.
SnapResult snap_control_nodes(const RoadGraph& source, const ControlNodeSet& controls,
                              const RoadGraph& target, double buffer = 4.0);

struct DirectionScore {
  double score = 0.0;
  long path_count = 0;  ///< N: connected control pairs in the source
  long missing = 0;     ///< pairs forced to the maximum contribution
};

/// Evaluate one direction of the metric given a snap of `controls` onto
/// the target. With path_count == 0 the score field is meaningless; the
/// caller applies the empty-graph conventions.
DirectionScore apls_one_direction(const RoadGraph& source, const ControlNodeSet& controls,
                                  const SnapResult& snap);

struct AplsParams {
  double buffer = 4.0;    ///< snap distance, meters
  double spacing = 50.0;  ///< midpoint injection spacing, meters
  /// Inject midpoints into the proposal before the proposal->truth
  /// direction (symmetric control selection). When false only raw
  /// proposal endpoints/intersections are used.
  bool proposal_midpoints = true;
  double merge_tolerance = 0.5;  ///< endpoint merge when building graphs from records
};

struct AplsScore {
  double part1 = 0.0;  ///< truth controls vs proposal
  double part2 = 0.0;  ///< proposal controls vs truth
  double total = 0.0;  ///< harmonic mean, 0 when either part is 0
  long n1 = 0;
  long n2 = 0;
  long missing1 = 0;
  long missing2 = 0;
};

/// Full symmetric metric. Conventions for degenerate inputs: both graphs
/// empty scores 1; an empty truth with a nonempty proposal (spurious
/// roads) or a nonempty truth with an empty proposal scores 0.
AplsScore apls(const RoadGraph& truth, const RoadGraph& proposal,
               const AplsParams& params = {});

struct TileAplsRow {
  std::string tile_id;
  std::string city;
  AplsScore score;
};

struct ChallengeReport {
  std::vector<TileAplsRow> tiles;                        ///< sorted by tile_id
  std::vector<std::pair<std::string, double>> cities;    ///< city -> mean tile score
  double overall = 0.0;                                  ///< mean of city means
};

/// Aggregate per-tile rows: city score = arithmetic mean of its tile
/// totals, overall = arithmetic mean of city scores.
ChallengeReport aggregate_challenge(std::vector<TileAplsRow> tiles);

/// Score every tile (graphs built from the records), aggregate per city
/// by arithmetic mean and across cities by arithmetic mean. Tiles are
/// scored independently in a pool of `parallelism` workers; the report
/// order is canonical regardless of the worker count.
ChallengeReport score_road_challenge(const std::vector<RoadTile>& tiles,
                                     const AplsParams& params = {},
                                     int parallelism = 1);

}  // namespace geoscore

#endif  // GEOSCORE_APLS_HPP
