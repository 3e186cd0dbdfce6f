#include "geoscore/tiles.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace geoscore {

namespace {

namespace fs = std::filesystem;

struct TileToken {
  std::string tile_id;
  std::string city;
};

std::optional<TileToken> extract_token(const std::string& filename, const std::regex& re) {
  std::smatch m;
  if (!std::regex_search(filename, m, re)) return std::nullopt;
  TileToken t;
  t.tile_id = m.str(0);
  t.city = m.size() > 1 && m[1].matched ? m.str(1) : t.tile_id;
  return t;
}

std::map<std::string, std::pair<fs::path, std::string>> scan_dir(
    const fs::path& dir, const std::regex& re, const std::string& extension,
    std::vector<std::string>* warnings) {
  if (!fs::is_directory(dir)) {
    throw ConfigError("not a directory: " + dir.string());
  }
  std::map<std::string, std::pair<fs::path, std::string>> out;  // tile_id -> (path, city)
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    if (!extension.empty() && e.path().extension() != extension) continue;
    entries.push_back(e.path());
  }
  std::sort(entries.begin(), entries.end());
  for (const auto& path : entries) {
    auto token = extract_token(path.filename().string(), re);
    if (!token) {
      if (warnings) {
        warnings->push_back("ignored file without tile id: " + path.string());
      }
      continue;
    }
    auto [it, inserted] = out.emplace(token->tile_id, std::make_pair(path, token->city));
    if (!inserted) {
      throw TileConflictError("duplicate tile id '" + token->tile_id + "' in " +
                              dir.string() + ": " + it->second.first.string() +
                              " and " + path.string());
    }
  }
  return out;
}

}  // namespace

PairingResult pair_tiles(const std::filesystem::path& truth_dir,
                         const std::filesystem::path& proposal_dir,
                         const std::string& tile_regex, const std::string& extension) {
  std::regex re;
  try {
    re = std::regex(tile_regex);
  } catch (const std::regex_error& e) {
    throw ConfigError("invalid tile regex '" + tile_regex + "': " + e.what());
  }

  PairingResult result;
  auto truth = scan_dir(truth_dir, re, extension, &result.warnings);
  std::map<std::string, std::pair<fs::path, std::string>> proposal;
  if (!proposal_dir.empty()) {
    proposal = scan_dir(proposal_dir, re, extension, &result.warnings);
  }

  for (const auto& [tile_id, entry] : truth) {
    TilePairing p;
    p.tile_id = tile_id;
    p.city = entry.second;
    p.truth_path = entry.first;
    auto it = proposal.find(tile_id);
    if (it != proposal.end()) {
      p.proposal_path = it->second.first;
    } else if (!proposal_dir.empty()) {
      result.warnings.push_back("no proposal for tile '" + tile_id + "', scoring as empty");
    }
    result.tiles.push_back(std::move(p));
  }
  for (const auto& [tile_id, entry] : proposal) {
    if (!truth.count(tile_id)) {
      result.warnings.push_back("orphan proposal without truth tile, excluded: " +
                                entry.first.string());
    }
  }
  // std::map iteration already yields tile_id order
  return result;
}

BuildingTile load_building_tile(const TilePairing& pairing) {
  BuildingTile tile;
  tile.tile_id = pairing.tile_id;
  tile.city = pairing.city;
  const std::string truth_doc = read_file(pairing.truth_path);
  const std::string proposal_doc =
      pairing.proposal_path ? read_file(*pairing.proposal_path) : std::string();
  try {
    auto truth = parse_buildings(truth_doc);
    tile.origin = truth.origin;
    tile.truth = std::move(truth.records);
    tile.warnings = std::move(truth.warnings);
    if (pairing.proposal_path) {
      auto proposal = parse_buildings(proposal_doc, tile.origin);
      tile.proposal = std::move(proposal.records);
      tile.warnings.insert(tile.warnings.end(), proposal.warnings.begin(),
                           proposal.warnings.end());
    }
  } catch (const ParseError& e) {
    throw ParseError("tile '" + pairing.tile_id + "': " + e.what());
  } catch (const Error& e) {
    throw ValidationError("tile '" + pairing.tile_id + "': " + e.what());
  }
  return tile;
}

RoadTile load_road_tile(const TilePairing& pairing) {
  RoadTile tile;
  tile.tile_id = pairing.tile_id;
  tile.city = pairing.city;
  const std::string truth_doc = read_file(pairing.truth_path);
  const std::string proposal_doc =
      pairing.proposal_path ? read_file(*pairing.proposal_path) : std::string();
  try {
    auto truth = parse_roads(truth_doc);
    tile.origin = truth.origin;
    tile.truth = std::move(truth.records);
    tile.warnings = std::move(truth.warnings);
    if (pairing.proposal_path) {
      auto proposal = parse_roads(proposal_doc, tile.origin);
      tile.proposal = std::move(proposal.records);
      tile.warnings.insert(tile.warnings.end(), proposal.warnings.begin(),
                           proposal.warnings.end());
    }
  } catch (const ParseError& e) {
    throw ParseError("tile '" + pairing.tile_id + "': " + e.what());
  } catch (const Error& e) {
    throw ValidationError("tile '" + pairing.tile_id + "': " + e.what());
  }
  return tile;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file: " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace geoscore
