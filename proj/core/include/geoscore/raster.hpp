#ifndef GEOSCORE_RASTER_HPP
#define GEOSCORE_RASTER_HPP

/// Raster utilities for the mask baseline: centerline rasterization,
/// mask refinement, morphological thinning, skeleton-to-graph tracing
/// and pixel-level scoring.
///
/// Grids are row-major, 8-bit, top row first; any nonzero value is
/// foreground. The geotransform anchors pixel (0,0)'s top-left corner at
/// `origin` in the projected frame, with y decreasing downward.

#include <cstdint>
#include <optional>
#include <vector>

#include "geoscore/records.hpp"
#include "geoscore/road_graph.hpp"

namespace geoscore {

struct GeoTransform {
  Point2 origin{0.0, 0.0};  ///< top-left corner, projected meters
  double pixel_size = 0.5;  ///< meters per pixel
  /// Geographic origin of the projected frame, kept so graphs recovered
  /// from masks can be exported back to lon/lat.
  std::optional<GeoPoint> geo_origin;
};

struct RasterMask {
  int width = 0;
  int height = 0;
  GeoTransform transform;
  std::vector<std::uint8_t> data;  ///< width*height, nonzero = foreground

  [[nodiscard]] std::uint8_t at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  void set(int row, int col, std::uint8_t v) {
    data[static_cast<std::size_t>(row) * width + col] = v;
  }
  [[nodiscard]] bool foreground(int row, int col) const {
    return row >= 0 && row < height && col >= 0 && col < width && at(row, col) != 0;
  }
  [[nodiscard]] Point2 pixel_center(int row, int col) const {
    return {transform.origin.x + (col + 0.5) * transform.pixel_size,
            transform.origin.y - (row + 0.5) * transform.pixel_size};
  }
  [[nodiscard]] long foreground_count() const;
};

/// Burn centerlines into a binary mask: a pixel is set iff its center
/// lies within `halfwidth` meters of any road centerline.
RasterMask render_road_mask(const std::vector<RoadSegmentRecord>& roads,
                            const BBox& extent, double pixel_size,
                            double halfwidth = 2.0);

/// Binarize at `threshold` (on the 0..1 scale of value/255), then
/// morphological opening and closing with disk radii in pixels.
RasterMask refine_mask(const RasterMask& mask, double threshold = 0.5,
                       int open_radius = 0, int close_radius = 0);

/// One-pixel-wide 8-connected skeleton via two-subiteration thinning.
/// The result is a subset of the input, preserves the number of
/// 8-connected components, and is a fixed point of the operation.
RasterMask skeletonize(const RasterMask& mask);

/// Trace a 1-px skeleton into a road graph: nodes at endpoints and
/// junction pixel clusters (collapsed to their centroid), edges along
/// traced pixel chains, coordinates in meters via the geotransform.
/// Dangling edges shorter than `prune_px` pixels are removed and the
/// remaining degree-2 joints merged. Isolated cycles keep one node.
RoadGraph skeleton_to_graph(const RasterMask& skeleton, double prune_px = 4.0);

struct PixelMetrics {
  double iou = 0.0;
  double f1 = 0.0;
  double relaxed_f1 = 0.0;
};

/// Pixel IoU, pixel F1 and relaxed F1 (matches within `relax_radius`
/// pixels, Euclidean). Masks must have identical dimensions.
PixelMetrics pixel_metrics(const RasterMask& truth, const RasterMask& proposal,
                           int relax_radius = 3);

}  // namespace geoscore

#endif  // GEOSCORE_RASTER_HPP
