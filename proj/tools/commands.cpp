#include "commands.hpp"

#include <algorithm>
#include <iostream>
#include <map>

#include "geoscore/apls.hpp"
#include "geoscore/buildings_metric.hpp"
#include "geoscore/parallel.hpp"
#include "geoscore/png_io.hpp"
#include "geoscore/raster.hpp"
#include "geoscore/reports.hpp"

namespace geoscore::cli {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  std::string s = std::to_string(v);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

fs::path json_path_for(const RunConfig& config) {
  if (!config.json_path.empty()) return config.json_path;
  fs::path p = config.output_path;
  p.replace_extension(".json");
  return p;
}

void emit_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
}

std::map<std::string, std::string> base_config(const RunConfig& config) {
  return {{"command", config.command},
          {"truth", config.truth_path.string()},
          {"proposal", config.proposal_path.string()},
          {"tile_regex", config.tile_regex},
          {"parallelism", std::to_string(config.parallelism)}};
}

int score_buildings(const RunConfig& config) {
  check_positive(config.iou_threshold, "iou threshold");
  auto pairing = pair_tiles(config.truth_path, config.proposal_path, config.tile_regex);

  std::vector<BuildingsReport::SceneRow> rows(pairing.tiles.size());
  std::vector<std::vector<std::string>> tile_warnings(pairing.tiles.size());
  parallel_for(pairing.tiles.size(), config.parallelism, [&](std::size_t i) {
    BuildingTile tile = load_building_tile(pairing.tiles[i]);
    SceneScore score = match_buildings(tile.truth, tile.proposal, config.iou_threshold);
    score.tile_id = tile.tile_id;
    rows[i] = {tile.city, std::move(score)};
    tile_warnings[i] = std::move(tile.warnings);
  });

  emit_warnings(pairing.warnings);
  for (const auto& w : tile_warnings) emit_warnings(w);

  const BuildingsReport report = aggregate_buildings(std::move(rows));

  auto cfg = base_config(config);
  cfg["iou_threshold"] = num(config.iou_threshold);
  write_file(config.output_path, buildings_report_csv(report));
  write_file(json_path_for(config), buildings_report_json(report, cfg));
  std::cout << "scenes: " << report.scenes.size() << ", cities: " << report.cities.size()
            << ", overall F1: " << format_ratio(report.overall) << "\n";
  return 0;
}

int score_roads(const RunConfig& config) {
  check_positive(config.apls_buffer, "buffer");
  check_positive(config.midpoint_spacing, "spacing");
  auto pairing = pair_tiles(config.truth_path, config.proposal_path, config.tile_regex);

  std::vector<RoadTile> tiles(pairing.tiles.size());
  parallel_for(pairing.tiles.size(), config.parallelism,
               [&](std::size_t i) { tiles[i] = load_road_tile(pairing.tiles[i]); });

  emit_warnings(pairing.warnings);
  for (const auto& tile : tiles) emit_warnings(tile.warnings);

  AplsParams params;
  params.buffer = config.apls_buffer;
  params.spacing = config.midpoint_spacing;
  params.merge_tolerance = config.merge_tolerance;
  params.proposal_midpoints = config.proposal_midpoints;
  const ChallengeReport report = score_road_challenge(tiles, params, config.parallelism);

  auto cfg = base_config(config);
  cfg["buffer"] = num(config.apls_buffer);
  cfg["spacing"] = num(config.midpoint_spacing);
  cfg["merge_tolerance"] = num(config.merge_tolerance);
  cfg["proposal_midpoints"] = config.proposal_midpoints ? "true" : "false";
  write_file(config.output_path, roads_report_csv(report));
  write_file(json_path_for(config), roads_report_json(report, cfg));
  std::cout << "tiles: " << report.tiles.size() << ", cities: " << report.cities.size()
            << ", overall APLS: " << format_ratio(report.overall) << "\n";
  return 0;
}

int make_masks(const RunConfig& config) {
  check_positive(config.pixel_size, "pixel size");
  check_positive(config.halfwidth, "halfwidth");
  auto pairing = pair_tiles(config.truth_path, "", config.tile_regex);
  fs::create_directories(config.output_path);

  std::vector<std::vector<std::string>> tile_warnings(pairing.tiles.size());
  std::vector<char> written(pairing.tiles.size(), 0);
  parallel_for(pairing.tiles.size(), config.parallelism, [&](std::size_t i) {
    RoadTile tile = load_road_tile(pairing.tiles[i]);
    tile_warnings[i] = std::move(tile.warnings);

    BBox extent{{0, 0}, {0, 0}};
    bool first = true;
    for (const auto& r : tile.truth) {
      const BBox b = BBox::of(r.geometry.vertices());
      if (first) {
        extent = b;
        first = false;
      } else {
        extent.expand(b);
      }
    }
    if (first) {
      tile_warnings[i].push_back("tile '" + tile.tile_id + "' has no roads, no mask written");
      return;
    }
    const double pad = config.halfwidth + 2.0 * config.pixel_size;
    extent.lo.x -= pad;
    extent.lo.y -= pad;
    extent.hi.x += pad;
    extent.hi.y += pad;

    RasterMask mask =
        render_road_mask(tile.truth, extent, config.pixel_size, config.halfwidth);
    mask.transform.geo_origin = tile.origin;
    write_mask_png(mask, config.output_path / (tile.tile_id + ".png"));
    written[i] = 1;
  });

  emit_warnings(pairing.warnings);
  for (const auto& w : tile_warnings) emit_warnings(w);
  std::cout << "masks written: " << std::count(written.begin(), written.end(), 1) << "\n";
  return 0;
}

int mask2graph(const RunConfig& config) {
  auto pairing = pair_tiles(config.masks_path, "", config.tile_regex, ".png");
  fs::create_directories(config.output_path);

  parallel_for(pairing.tiles.size(), config.parallelism, [&](std::size_t i) {
    const auto& tile = pairing.tiles[i];
    RasterMask mask = read_mask_png(tile.truth_path);
    if (!mask.transform.geo_origin) {
      throw ConfigError("sidecar of " + tile.truth_path.string() +
                        " lacks origin_lon/origin_lat, cannot georeference the graph");
    }
    const RasterMask refined = refine_mask(mask, config.mask_threshold,
                                           config.open_radius, config.close_radius);
    const RasterMask skeleton = skeletonize(refined);
    const RoadGraph graph = skeleton_to_graph(skeleton, config.prune_px);

    std::vector<RoadSegmentRecord> records;
    records.reserve(graph.edges.size());
    int next_id = 0;
    for (const auto& edge : graph.edges) {
      records.push_back(RoadSegmentRecord{edge.geometry, next_id++, RoadType::Unclassified,
                                          Surface::Unknown, BridgeType::Unknown, 1});
    }
    write_file(config.output_path / (tile.tile_id + ".geojson"),
               roads_to_geojson(records, *mask.transform.geo_origin));
  });

  emit_warnings(pairing.warnings);
  std::cout << "graphs written: " << pairing.tiles.size() << "\n";
  return 0;
}

int pixel_metrics_cmd(const RunConfig& config) {
  if (config.relax_radius < 0) throw ConfigError("relax radius must be >= 0");
  auto pairing = pair_tiles(config.truth_path, config.proposal_path, config.tile_regex, ".png");

  std::vector<PixelMetricsRow> rows(pairing.tiles.size());
  parallel_for(pairing.tiles.size(), config.parallelism, [&](std::size_t i) {
    const auto& tile = pairing.tiles[i];
    const RasterMask truth = read_mask_png(tile.truth_path);
    RasterMask proposal;
    if (tile.proposal_path) {
      proposal = read_mask_png(*tile.proposal_path);
    } else {
      proposal = truth;
      std::fill(proposal.data.begin(), proposal.data.end(), std::uint8_t{0});
    }
    rows[i] = {tile.tile_id, pixel_metrics(truth, proposal, config.relax_radius)};
  });

  emit_warnings(pairing.warnings);
  auto cfg = base_config(config);
  cfg["relax_radius"] = std::to_string(config.relax_radius);
  write_file(config.output_path, pixel_metrics_csv(rows));
  write_file(json_path_for(config), pixel_metrics_json(rows, cfg));
  std::cout << "tiles: " << rows.size() << "\n";
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.parallelism < 1) throw ConfigError("parallelism must be >= 1");
    if (config.command == "score-buildings") return score_buildings(config);
    if (config.command == "score-roads") return score_roads(config);
    if (config.command == "make-masks") return make_masks(config);
    if (config.command == "mask2graph") return mask2graph(config);
    if (config.command == "pixel-metrics") return pixel_metrics_cmd(config);
    throw ConfigError("unknown command '" + config.command + "'");
  } catch (const TileConflictError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace geoscore::cli
