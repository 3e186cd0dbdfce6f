#include "geoscore/geojson.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <json.hpp>

namespace geoscore {

namespace {

using nlohmann::json;

json parse_json(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

const json& feature_array(const json& root) {
  if (!root.is_object() || root.value("type", std::string()) != "FeatureCollection") {
    throw ValidationError("document is not a GeoJSON FeatureCollection");
  }
  auto it = root.find("features");
  if (it == root.end() || !it->is_array()) {
    throw ValidationError("FeatureCollection has no features array");
  }
  return *it;
}

std::string feat(std::size_t index) { return "feature " + std::to_string(index); }

GeoPoint read_position(const json& pos, std::size_t index) {
  if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
    throw ValidationError(feat(index) + ": malformed coordinate");
  }
  const double lon = pos[0].get<double>();
  const double lat = pos[1].get<double>();
  if (!std::isfinite(lon) || !std::isfinite(lat) || lon < -180.0 || lon > 180.0 ||
      lat < -90.0 || lat > 90.0) {
    throw ValidationError(feat(index) + ": lon/lat out of range");
  }
  return {lon, lat};
}

std::vector<GeoPoint> read_point_list(const json& coords, std::size_t index) {
  if (!coords.is_array()) throw ValidationError(feat(index) + ": geometry coordinates not an array");
  std::vector<GeoPoint> out;
  out.reserve(coords.size());
  for (const auto& pos : coords) {
    GeoPoint p = read_position(pos, index);
    if (out.empty() || !(out.back() == p)) out.push_back(p);  // drop duplicate runs
  }
  return out;
}

const json& feature_geometry(const json& feature, std::size_t index) {
  if (!feature.is_object()) throw ValidationError(feat(index) + ": not an object");
  auto it = feature.find("geometry");
  if (it == feature.end() || !it->is_object()) {
    throw ValidationError(feat(index) + ": missing geometry object");
  }
  return *it;
}

GeoPoint bbox_centroid(const std::vector<GeoPoint>& pts) {
  if (pts.empty()) return {0.0, 0.0};
  double lon_lo = pts[0].lon, lon_hi = pts[0].lon;
  double lat_lo = pts[0].lat, lat_hi = pts[0].lat;
  for (const auto& p : pts) {
    lon_lo = std::min(lon_lo, p.lon);
    lon_hi = std::max(lon_hi, p.lon);
    lat_lo = std::min(lat_lo, p.lat);
    lat_hi = std::max(lat_hi, p.lat);
  }
  return {0.5 * (lon_lo + lon_hi), 0.5 * (lat_lo + lat_hi)};
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Integer attribute with enum-style string aliases. Out-of-range and
// unparsable values fall back to the default with a warning; attributes
// never reject a feature.
int read_enum_attr(const json* props, const char* key, int lo, int hi, int fallback,
                   const std::map<std::string, int>& aliases, std::size_t index,
                   std::vector<std::string>* warnings) {
  if (props == nullptr || !props->contains(key)) {
    if (warnings) {
      warnings->push_back(feat(index) + ": missing '" + key + "', using default");
    }
    return fallback;
  }
  const json& v = (*props)[key];
  if (v.is_number_integer() || v.is_number_unsigned() || v.is_number_float()) {
    const int value = static_cast<int>(v.get<double>());
    if (value >= lo && value <= hi) return value;
  } else if (v.is_string()) {
    const std::string s = lower(v.get<std::string>());
    auto it = aliases.find(s);
    if (it != aliases.end()) return it->second;
    char* end = nullptr;
    const long n = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() && *end == '\0' && n >= lo && n <= hi) return static_cast<int>(n);
  }
  if (warnings) {
    warnings->push_back(feat(index) + ": unrecognized '" + key + "' value, using default");
  }
  return fallback;
}

int read_id_attr(const json* props, std::initializer_list<const char*> keys,
                 int fallback) {
  if (props == nullptr) return fallback;
  for (const char* key : keys) {
    auto it = props->find(key);
    if (it == props->end()) continue;
    if (it->is_number_integer() || it->is_number_unsigned()) return it->get<int>();
    if (it->is_number_float()) return static_cast<int>(it->get<double>());
    if (it->is_string()) {
      char* end = nullptr;
      const long n = std::strtol(it->get<std::string>().c_str(), &end, 10);
      if (end && *end == '\0') return static_cast<int>(n);
    }
  }
  return fallback;
}

const json* feature_properties(const json& feature) {
  auto it = feature.find("properties");
  if (it == feature.end() || !it->is_object()) return nullptr;
  return &*it;
}

const std::map<std::string, int>& road_type_aliases() {
  static const std::map<std::string, int> m = {
      {"motorway", 1},   {"primary", 2},      {"secondary", 3},
      {"tertiary", 4},   {"residential", 5},  {"unclassified", 6},
      {"cart track", 7}, {"cart_track", 7},   {"carttrack", 7},
  };
  return m;
}

const std::map<std::string, int>& surface_aliases() {
  static const std::map<std::string, int> m = {
      {"paved", 1}, {"unpaved", 2}, {"unknown", 3}};
  return m;
}

const std::map<std::string, int>& bridge_aliases() {
  static const std::map<std::string, int> m = {{"bridge", 1},
                                               {"not a bridge", 2},
                                               {"not_bridge", 2},
                                               {"notbridge", 2},
                                               {"no", 2},
                                               {"unknown", 3}};
  return m;
}

json position_json(const GeoPoint& p) { return json::array({p.lon, p.lat}); }

json ring_json(const std::vector<Point2>& ring, const GeoPoint& origin) {
  json out = json::array();
  for (const auto& v : ring) out.push_back(position_json(unproject(v, origin)));
  out.push_back(out.front());  // close the ring
  return out;
}

}  // namespace

BuildingParse parse_buildings(std::string_view document, std::optional<GeoPoint> origin) {
  const json root = parse_json(document);
  const json& features = feature_array(root);

  struct RawBuilding {
    int id;
    std::vector<std::vector<GeoPoint>> rings;  // exterior first
    std::size_t feature_index;
  };
  std::vector<RawBuilding> raw;
  std::vector<GeoPoint> all_points;

  std::size_t index = 0;
  for (const auto& feature : features) {
    const json& geometry = feature_geometry(feature, index);
    const std::string type = geometry.value("type", std::string());
    const json* props = feature_properties(feature);
    const int id = read_id_attr(props, {"building_id", "BuildingId", "buildingId", "Id", "id"},
                                static_cast<int>(index));
    auto read_polygon = [&](const json& coords) {
      if (!coords.is_array() || coords.empty()) {
        throw ValidationError(feat(index) + ": polygon has no rings");
      }
      RawBuilding b;
      b.id = id;
      b.feature_index = index;
      for (const auto& ring : coords) {
        b.rings.push_back(read_point_list(ring, index));
        for (const auto& p : b.rings.back()) all_points.push_back(p);
      }
      raw.push_back(std::move(b));
    };

    auto it = geometry.find("coordinates");
    if (type == "Polygon") {
      if (it == geometry.end()) throw ValidationError(feat(index) + ": missing coordinates");
      read_polygon(*it);
    } else if (type == "MultiPolygon") {
      if (it == geometry.end() || !it->is_array()) {
        throw ValidationError(feat(index) + ": missing coordinates");
      }
      for (const auto& part : *it) read_polygon(part);
    } else {
      throw ValidationError(feat(index) + ": expected Polygon or MultiPolygon, got '" +
                            type + "'");
    }
    ++index;
  }

  BuildingParse result;
  result.origin = origin.value_or(bbox_centroid(all_points));
  for (auto& b : raw) {
    try {
      std::vector<Point2> exterior = project_to_local(b.rings.front(), result.origin);
      std::vector<std::vector<Point2>> holes;
      for (std::size_t h = 1; h < b.rings.size(); ++h) {
        holes.push_back(project_to_local(b.rings[h], result.origin));
      }
      result.records.push_back(
          BuildingRecord{b.id, Polygon(std::move(exterior), std::move(holes))});
    } catch (const GeometryError& e) {
      throw ValidationError(feat(b.feature_index) + ": " + e.what());
    }
  }
  return result;
}

RoadParse parse_roads(std::string_view document, std::optional<GeoPoint> origin) {
  const json root = parse_json(document);
  const json& features = feature_array(root);

  struct RawRoad {
    std::vector<GeoPoint> line;
    int road_id;
    int road_type, paved, bridge_type, lane_number;
    std::size_t feature_index;
  };
  std::vector<RawRoad> raw;
  std::vector<GeoPoint> all_points;
  RoadParse result;

  std::size_t index = 0;
  for (const auto& feature : features) {
    const json& geometry = feature_geometry(feature, index);
    const std::string type = geometry.value("type", std::string());
    const json* props = feature_properties(feature);

    RawRoad base;
    base.feature_index = index;
    base.road_id = read_id_attr(props, {"road_id", "roadId", "Id", "id"},
                                static_cast<int>(index));
    base.road_type = read_enum_attr(props, "road_type", 1, 7,
                                    static_cast<int>(RoadType::Unclassified),
                                    road_type_aliases(), index, &result.warnings);
    base.paved = read_enum_attr(props, "paved", 1, 3, static_cast<int>(Surface::Unknown),
                                surface_aliases(), index, &result.warnings);
    base.bridge_type = read_enum_attr(props, "bridge_type", 1, 3,
                                      static_cast<int>(BridgeType::Unknown),
                                      bridge_aliases(), index, &result.warnings);
    base.lane_number = read_enum_attr(props, "lane_number", 1,
                                      std::numeric_limits<int>::max(), 1, {}, index,
                                      &result.warnings);

    auto add_line = [&](const json& coords) {
      RawRoad r = base;
      r.line = read_point_list(coords, index);
      if (r.line.size() < 2) {
        throw ValidationError(feat(index) + ": linestring with < 2 distinct points");
      }
      for (const auto& p : r.line) all_points.push_back(p);
      raw.push_back(std::move(r));
    };

    auto it = geometry.find("coordinates");
    if (type == "LineString") {
      if (it == geometry.end()) throw ValidationError(feat(index) + ": missing coordinates");
      add_line(*it);
    } else if (type == "MultiLineString") {
      if (it == geometry.end() || !it->is_array()) {
        throw ValidationError(feat(index) + ": missing coordinates");
      }
      for (const auto& part : *it) add_line(part);
    } else {
      throw ValidationError(feat(index) + ": expected LineString or MultiLineString, got '" +
                            type + "'");
    }
    ++index;
  }

  result.origin = origin.value_or(bbox_centroid(all_points));
  for (auto& r : raw) {
    try {
      result.records.push_back(RoadSegmentRecord{
          Polyline(project_to_local(r.line, result.origin)), r.road_id,
          static_cast<RoadType>(r.road_type), static_cast<Surface>(r.paved),
          static_cast<BridgeType>(r.bridge_type), r.lane_number});
    } catch (const GeometryError& e) {
      throw ValidationError(feat(r.feature_index) + ": " + e.what());
    }
  }
  return result;
}

std::string buildings_to_geojson(const std::vector<BuildingRecord>& records,
                                 const GeoPoint& origin) {
  json features = json::array();
  for (const auto& r : records) {
    json rings = json::array();
    rings.push_back(ring_json(r.footprint.exterior(), origin));
    for (const auto& h : r.footprint.holes()) rings.push_back(ring_json(h, origin));
    features.push_back({{"type", "Feature"},
                        {"properties", {{"building_id", r.building_id}}},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", rings}}}});
  }
  return json{{"type", "FeatureCollection"}, {"features", features}}.dump();
}

std::string roads_to_geojson(const std::vector<RoadSegmentRecord>& records,
                             const GeoPoint& origin) {
  json features = json::array();
  for (const auto& r : records) {
    json coords = json::array();
    for (const auto& v : r.geometry.vertices()) {
      coords.push_back(position_json(unproject(v, origin)));
    }
    features.push_back(
        {{"type", "Feature"},
         {"properties",
          {{"road_id", r.road_id},
           {"road_type", static_cast<int>(r.road_type)},
           {"paved", static_cast<int>(r.paved)},
           {"bridge_type", static_cast<int>(r.bridge_type)},
           {"lane_number", r.lane_number}}},
         {"geometry", {{"type", "LineString"}, {"coordinates", coords}}}});
  }
  return json{{"type", "FeatureCollection"}, {"features", features}}.dump();
}

}  // namespace geoscore
