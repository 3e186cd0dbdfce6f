#ifndef GEOSCORE_TILES_HPP
#define GEOSCORE_TILES_HPP

/// Tile pairing between a ground-truth directory and a proposal
/// directory. Files are matched on a tile-id token extracted from the
/// filename with a configurable regex; the whole regex match is the tile
/// id and capture group 1, when present, is the city key used for
/// aggregation.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geoscore/geojson.hpp"

namespace geoscore {

/// Default tile-id pattern: `AOI_<n>_<city>_img<k>`; group 1 is the city.
inline constexpr const char* kDefaultTileRegex =
    R"((AOI_\d+_[A-Za-z0-9]+)_img\d+)";

struct TilePairing {
  std::string tile_id;
  std::string city;
  std::filesystem::path truth_path;
  std::optional<std::filesystem::path> proposal_path;  ///< empty when unmatched
};

struct PairingResult {
  std::vector<TilePairing> tiles;  ///< sorted by tile_id
  std::vector<std::string> warnings;
};

/// Pair every truth tile with zero or one proposal file. A missing
/// proposal keeps the tile (scored as all-misses); a proposal without a
/// truth counterpart is excluded with a warning. Duplicate tile ids
/// inside one directory throw TileConflictError. A non-empty
/// `extension` restricts the scan to files with that extension (used
/// for mask directories where sidecars live next to the rasters).
PairingResult pair_tiles(const std::filesystem::path& truth_dir,
                         const std::filesystem::path& proposal_dir,
                         const std::string& tile_regex = kDefaultTileRegex,
                         const std::string& extension = "");

/// One scored building tile; truth and proposal share the truth origin.
struct BuildingTile {
  std::string tile_id;
  std::string city;
  std::vector<BuildingRecord> truth;
  std::vector<BuildingRecord> proposal;
  GeoPoint origin;
  std::vector<std::string> warnings;
};

/// One scored road tile; truth and proposal share the truth origin.
struct RoadTile {
  std::string tile_id;
  std::string city;
  std::vector<RoadSegmentRecord> truth;
  std::vector<RoadSegmentRecord> proposal;
  GeoPoint origin;
  std::vector<std::string> warnings;
};

BuildingTile load_building_tile(const TilePairing& pairing);
RoadTile load_road_tile(const TilePairing& pairing);

/// Read a whole file into memory; throws ConfigError when unreadable.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace geoscore

#endif  // GEOSCORE_TILES_HPP
