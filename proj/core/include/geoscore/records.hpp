#ifndef GEOSCORE_RECORDS_HPP
#define GEOSCORE_RECORDS_HPP

#include <string>

#include "geoscore/geometry.hpp"

namespace geoscore {

/// Road classes, integer codes follow the label schema.
enum class RoadType : int {
  Motorway = 1,
  Primary = 2,
  Secondary = 3,
  Tertiary = 4,
  Residential = 5,
  Unclassified = 6,
  CartTrack = 7,
};

enum class Surface : int { Paved = 1, Unpaved = 2, Unknown = 3 };

enum class BridgeType : int { Bridge = 1, NotBridge = 2, Unknown = 3 };

/// One labeled road centerline in the tile-local projected frame.
struct RoadSegmentRecord {
  Polyline geometry;
  int road_id = 0;
  RoadType road_type = RoadType::Unclassified;
  Surface paved = Surface::Unknown;
  BridgeType bridge_type = BridgeType::Unknown;
  int lane_number = 1;
};

/// One building footprint in the tile-local projected frame.
/// MultiPolygon features are split into parts that share a building_id.
struct BuildingRecord {
  int building_id = 0;
  Polygon footprint;
};

const char* to_string(RoadType t);
const char* to_string(Surface s);
const char* to_string(BridgeType b);

}  // namespace geoscore

#endif  // GEOSCORE_RECORDS_HPP
