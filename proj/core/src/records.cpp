#include "geoscore/records.hpp"

namespace geoscore {

const char* to_string(RoadType t) {
  switch (t) {
    case RoadType::Motorway: return "motorway";
    case RoadType::Primary: return "primary";
    case RoadType::Secondary: return "secondary";
    case RoadType::Tertiary: return "tertiary";
    case RoadType::Residential: return "residential";
    case RoadType::Unclassified: return "unclassified";
    case RoadType::CartTrack: return "cart_track";
  }
  return "unclassified";
}

const char* to_string(Surface s) {
  switch (s) {
    case Surface::Paved: return "paved";
    case Surface::Unpaved: return "unpaved";
    case Surface::Unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(BridgeType b) {
  switch (b) {
    case BridgeType::Bridge: return "bridge";
    case BridgeType::NotBridge: return "not_bridge";
    case BridgeType::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace geoscore
