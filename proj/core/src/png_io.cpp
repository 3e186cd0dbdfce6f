#include "geoscore/png_io.hpp"

#include <cstdio>
#include <memory>
#include <vector>

#include <json.hpp>
#include <png.h>

#include "geoscore/tiles.hpp"

namespace geoscore {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& png_path) {
  std::filesystem::path p = png_path;
  p.replace_extension(".json");
  return p;
}

void write_mask_png(const RasterMask& mask, const std::filesystem::path& png_path) {
  if (mask.width <= 0 || mask.height <= 0) throw ConfigError("empty mask");

  FilePtr fp(std::fopen(png_path.string().c_str(), "wb"));
  if (!fp) throw ConfigError("cannot write file: " + png_path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("libpng: create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("libpng: create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("libpng: write failed for " + png_path.string());
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(mask.width),
               static_cast<png_uint_32>(mask.height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<png_byte> row(static_cast<std::size_t>(mask.width));
  for (int r = 0; r < mask.height; ++r) {
    for (int c = 0; c < mask.width; ++c) {
      row[static_cast<std::size_t>(c)] = mask.at(r, c) != 0 ? 255 : 0;
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);

  nlohmann::json sidecar{{"origin_x", mask.transform.origin.x},
                         {"origin_y", mask.transform.origin.y},
                         {"pixel_size", mask.transform.pixel_size}};
  if (mask.transform.geo_origin) {
    sidecar["origin_lon"] = mask.transform.geo_origin->lon;
    sidecar["origin_lat"] = mask.transform.geo_origin->lat;
  }
  write_file(sidecar_path(png_path), sidecar.dump(2) + "\n");
}

RasterMask read_mask_png(const std::filesystem::path& png_path) {
  FilePtr fp(std::fopen(png_path.string().c_str(), "rb"));
  if (!fp) throw ConfigError("cannot read file: " + png_path.string());

  png_byte header[8];
  if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0) {
    throw ParseError("not a PNG file: " + png_path.string());
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("libpng: create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("libpng: create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError("malformed PNG: " + png_path.string());
  }

  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  // Reduce whatever arrives to 8-bit gray.
  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      color == PNG_COLOR_TYPE_PALETTE) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  RasterMask mask;
  mask.width = static_cast<int>(png_get_image_width(png, info));
  mask.height = static_cast<int>(png_get_image_height(png, info));
  mask.data.assign(static_cast<std::size_t>(mask.width) * mask.height, 0);

  std::vector<png_byte> row(png_get_rowbytes(png, info));
  for (int r = 0; r < mask.height; ++r) {
    png_read_row(png, row.data(), nullptr);
    for (int c = 0; c < mask.width; ++c) {
      mask.set(r, c, row[static_cast<std::size_t>(c)]);
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);

  const auto sc = sidecar_path(png_path);
  if (std::filesystem::exists(sc)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(sc));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("malformed sidecar " + sc.string() + ": " + e.what());
    }
    mask.transform.origin = {j.value("origin_x", 0.0), j.value("origin_y", 0.0)};
    mask.transform.pixel_size = j.value("pixel_size", 1.0);
    if (j.contains("origin_lon") && j.contains("origin_lat")) {
      mask.transform.geo_origin =
          GeoPoint{j["origin_lon"].get<double>(), j["origin_lat"].get<double>()};
    }
  }
  return mask;
}

}  // namespace geoscore
