#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  geoscore::cli::RunConfig config;

  CLI::App app{"Scores building-footprint and road-network extraction proposals "
               "against ground-truth GeoJSON labels (IoU/F1 for buildings, APLS "
               "for road graphs) and converts between centerlines, raster masks "
               "and road graphs."};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tile-regex", config.tile_regex,
                    "Regex extracting the tile id from filenames (group 1 = city)");
    cmd->add_option("-j,--parallelism", config.parallelism, "Worker thread count")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* buildings = app.add_subcommand(
      "score-buildings", "Greedy IoU matching of building footprints, F1 per city");
  buildings->add_option("--truth", config.truth_path, "Ground-truth GeoJSON directory")
      ->required();
  buildings->add_option("--proposal", config.proposal_path, "Proposal GeoJSON directory")
      ->required();
  buildings->add_option("--out", config.output_path, "Report CSV path")->required();
  buildings->add_option("--json", config.json_path, "JSON summary path (default: out with .json)");
  buildings->add_option("--iou-threshold", config.iou_threshold,
                        "Minimum IoU for a true positive (default 0.5)");
  add_common(buildings);

  CLI::App* roads = app.add_subcommand("score-roads", "APLS between road graphs");
  roads->add_option("--truth", config.truth_path, "Ground-truth GeoJSON directory")->required();
  roads->add_option("--proposal", config.proposal_path, "Proposal GeoJSON directory")->required();
  roads->add_option("--out", config.output_path, "Report CSV path")->required();
  roads->add_option("--json", config.json_path, "JSON summary path (default: out with .json)");
  roads->add_option("--buffer", config.apls_buffer, "Snap buffer in meters (default 4)");
  roads->add_option("--spacing", config.midpoint_spacing,
                    "Control-node spacing in meters (default 50)");
  roads->add_option("--merge-tolerance", config.merge_tolerance,
                    "Endpoint merge tolerance in meters (default 0.5)");
  roads->add_flag("!--no-proposal-midpoints", config.proposal_midpoints,
                  "Use only raw proposal nodes for the reverse direction");
  add_common(roads);

  CLI::App* masks = app.add_subcommand("make-masks",
                                       "Rasterize road centerlines into binary masks");
  masks->add_option("--truth", config.truth_path, "Road GeoJSON directory")->required();
  masks->add_option("--out", config.output_path, "Output directory for PNG + sidecar")
      ->required();
  masks->add_option("--pixel-size", config.pixel_size, "Meters per pixel (default 0.5)");
  masks->add_option("--halfwidth", config.halfwidth,
                    "Centerline halfwidth in meters (default 2)");
  add_common(masks);

  CLI::App* m2g = app.add_subcommand(
      "mask2graph", "Refine, skeletonize and trace masks into road GeoJSON");
  m2g->add_option("--masks", config.masks_path, "Mask directory (PNG + sidecar)")->required();
  m2g->add_option("--out", config.output_path, "Output directory for GeoJSON graphs")
      ->required();
  m2g->add_option("--threshold", config.mask_threshold,
                  "Binarization threshold on 0..1 (default 0.5)");
  m2g->add_option("--open-radius", config.open_radius, "Opening radius in px (default 0)");
  m2g->add_option("--close-radius", config.close_radius, "Closing radius in px (default 0)");
  m2g->add_option("--prune-px", config.prune_px, "Spur prune threshold in px (default 4)");
  add_common(m2g);

  CLI::App* pm = app.add_subcommand("pixel-metrics",
                                    "Pixel IoU / F1 / relaxed F1 between mask directories");
  pm->add_option("--truth", config.truth_path, "Truth mask directory")->required();
  pm->add_option("--proposal", config.proposal_path, "Proposal mask directory")->required();
  pm->add_option("--out", config.output_path, "Report CSV path")->required();
  pm->add_option("--json", config.json_path, "JSON summary path (default: out with .json)");
  pm->add_option("--relax-radius", config.relax_radius,
                 "Relaxed match radius in pixels (default 3)");
  add_common(pm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are configuration errors
  }

  config.command = app.get_subcommands().front()->get_name();
  return geoscore::cli::run(config);
}
