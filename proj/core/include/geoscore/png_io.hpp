#ifndef GEOSCORE_PNG_IO_HPP
#define GEOSCORE_PNG_IO_HPP

/// Mask persistence: 8-bit single-channel PNG plus a JSON sidecar
/// carrying the geotransform ({origin_x, origin_y, pixel_size} and,
/// when known, the geographic origin of the projected frame). The
/// sidecar sits next to the PNG with the extension replaced by .json.

#include <filesystem>

#include "geoscore/raster.hpp"

namespace geoscore {

/// Write mask.png plus mask.json. Foreground pixels are stored as 255.
void write_mask_png(const RasterMask& mask, const std::filesystem::path& png_path);

/// Read a PNG (gray, gray+alpha, rgb or rgba are accepted and reduced to
/// 8-bit gray) and its sidecar. Raw intensity is preserved so that
/// probability masks can be thresholded downstream.
RasterMask read_mask_png(const std::filesystem::path& png_path);

std::filesystem::path sidecar_path(const std::filesystem::path& png_path);

}  // namespace geoscore

#endif  // GEOSCORE_PNG_IO_HPP
