#ifndef GEOSCORE_GEOJSON_HPP
#define GEOSCORE_GEOJSON_HPP

/// GeoJSON ingest and export for building footprints and road
/// centerlines. Inputs are WGS84 FeatureCollections; coordinates are
/// projected into a tile-local frame of meters around `origin`.
///
/// When no origin is supplied the centroid of the document's bounding
/// box is used, so a proposal file can be parsed in the frame of its
/// ground-truth counterpart by passing the truth origin through.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoscore/records.hpp"

namespace geoscore {

struct BuildingParse {
  std::vector<BuildingRecord> records;
  GeoPoint origin;  ///< projection origin actually used
  std::vector<std::string> warnings;
};

struct RoadParse {
  std::vector<RoadSegmentRecord> records;
  GeoPoint origin;
  std::vector<std::string> warnings;
};

/// Parse a FeatureCollection of Polygon/MultiPolygon features.
/// Throws ParseError on malformed JSON (message carries the byte offset)
/// and ValidationError on schema or geometry violations, naming the
/// feature index.
BuildingParse parse_buildings(std::string_view document,
                              std::optional<GeoPoint> origin = std::nullopt);

/// Parse a FeatureCollection of LineString/MultiLineString features with
/// the road attribute schema (road_type, paved, bridge_type,
/// lane_number). Missing or out-of-range attributes fall back to
/// defaults with a warning; they never reject a feature.
RoadParse parse_roads(std::string_view document,
                      std::optional<GeoPoint> origin = std::nullopt);

std::string buildings_to_geojson(const std::vector<BuildingRecord>& records,
                                 const GeoPoint& origin);

std::string roads_to_geojson(const std::vector<RoadSegmentRecord>& records,
                             const GeoPoint& origin);

}  // namespace geoscore

#endif  // GEOSCORE_GEOJSON_HPP
