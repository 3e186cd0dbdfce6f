#ifndef GEOSCORE_TOOLS_COMMANDS_HPP
#define GEOSCORE_TOOLS_COMMANDS_HPP

#include <filesystem>
#include <string>

#include "geoscore/tiles.hpp"

namespace geoscore::cli {

/// Resolved run configuration. Every paper-silent knob is an explicit
/// flag with its default here; reports embed the resolved values.
struct RunConfig {
  std::string command;  ///< score-buildings | score-roads | make-masks | mask2graph | pixel-metrics
  std::filesystem::path truth_path;
  std::filesystem::path proposal_path;
  std::filesystem::path masks_path;
  std::filesystem::path output_path;
  std::filesystem::path json_path;  ///< empty: derived from output_path

  double iou_threshold = 0.5;
  double apls_buffer = 4.0;
  double midpoint_spacing = 50.0;
  double merge_tolerance = 0.5;
  bool proposal_midpoints = true;
  int relax_radius = 3;
  double pixel_size = 0.5;
  double halfwidth = 2.0;
  double mask_threshold = 0.5;
  int open_radius = 0;
  int close_radius = 0;
  double prune_px = 4.0;
  std::string tile_regex = kDefaultTileRegex;
  int parallelism = 1;
};

/// Execute the configured command. Exit status: 0 success, 2 bad paths
/// or configuration, 3 malformed or invalid input, 4 conflicting tile
/// ids, 1 anything else. Diagnostics go to stderr.
int run(const RunConfig& config);

}  // namespace geoscore::cli

#endif  // GEOSCORE_TOOLS_COMMANDS_HPP
