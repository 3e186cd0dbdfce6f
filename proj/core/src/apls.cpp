#include "geoscore/apls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "geoscore/parallel.hpp"
#include "graph_detail.hpp"

namespace geoscore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieEps = 1e-9;

struct SnapSite {
  double arc = 0.0;           // position along the target edge
  std::vector<int> controls;  // control indices landing here
};

double harmonic_mean(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

}  // namespace

SnapResult snap_control_nodes(const RoadGraph& source, const ControlNodeSet& controls,
                              const RoadGraph& target, double buffer) {
  if (!(buffer > 0.0)) throw ConfigError("snap buffer must be positive");

  SnapResult result;
  result.buffer = buffer;
  result.mapping.assign(controls.size(), kUnsnapped);

  if (target.empty()) {
    result.augmented_target = target;
    return result;
  }

  // Arc-length prefix per edge geometry for nearest-point positions.
  struct Best {
    double distance = kInf;
    int edge = -1;
    double arc = 0.0;
  };

  std::map<int, std::vector<SnapSite>> sites_by_edge;
  for (std::size_t c = 0; c < controls.size(); ++c) {
    const int node_id = controls.ids[c];
    if (node_id < 0 || node_id >= source.node_count()) {
      throw LookupError("control node id out of range");
    }
    const Point2& p = source.nodes[static_cast<std::size_t>(node_id)];

    Best best;
    for (int e = 0; e < static_cast<int>(target.edges.size()); ++e) {
      const auto& edge = target.edges[static_cast<std::size_t>(e)];
      const auto proj = point_to_polyline(p, edge.geometry);
      if (proj.distance < best.distance - kTieEps) {
        double arc = 0.0;
        const auto& v = edge.geometry.vertices();
        for (std::size_t s = 0; s < proj.segment_index; ++s) {
          arc += std::hypot(v[s + 1].x - v[s].x, v[s + 1].y - v[s].y);
        }
        arc += proj.param * std::hypot(v[proj.segment_index + 1].x - v[proj.segment_index].x,
                                       v[proj.segment_index + 1].y - v[proj.segment_index].y);
        best = {proj.distance, e, arc};
      }
    }
    if (best.edge < 0 || best.distance > buffer) continue;

    auto& sites = sites_by_edge[best.edge];
    auto it = std::find_if(sites.begin(), sites.end(), [&](const SnapSite& s) {
      return std::abs(s.arc - best.arc) <= kTieEps;
    });
    if (it == sites.end()) {
      sites.push_back({best.arc, {static_cast<int>(c)}});
    } else {
      it->controls.push_back(static_cast<int>(c));
    }
  }

  // Rebuild the target with one injected node per snap site. Sites at an
  // edge end reuse the existing node instead of splitting.
  RoadGraph& aug = result.augmented_target;
  aug.nodes = target.nodes;
  aug.kinds = target.kinds;

  for (int e = 0; e < static_cast<int>(target.edges.size()); ++e) {
    const auto& edge = target.edges[static_cast<std::size_t>(e)];
    auto found = sites_by_edge.find(e);
    if (found == sites_by_edge.end()) {
      aug.edges.push_back(edge);
      continue;
    }
    auto& sites = found->second;
    std::sort(sites.begin(), sites.end(),
              [](const SnapSite& a, const SnapSite& b) { return a.arc < b.arc; });

    std::vector<double> arcs;
    std::vector<const SnapSite*> interior;
    for (const auto& site : sites) {
      if (site.arc <= kTieEps) {
        for (int c : site.controls) result.mapping[static_cast<std::size_t>(c)] = edge.a;
      } else if (site.arc >= edge.length - kTieEps) {
        for (int c : site.controls) result.mapping[static_cast<std::size_t>(c)] = edge.b;
      } else {
        arcs.push_back(site.arc);
        interior.push_back(&site);
      }
    }
    if (arcs.empty()) {
      aug.edges.push_back(edge);
      continue;
    }

    auto pieces = slice_polyline(edge.geometry, arcs);
    int prev = edge.a;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      int next;
      if (p + 1 == pieces.size()) {
        next = edge.b;
      } else {
        next = aug.node_count();
        aug.nodes.push_back(pieces[p].back());
        aug.kinds.push_back(NodeKind::Snapped);
        for (int c : interior[p]->controls) {
          result.mapping[static_cast<std::size_t>(c)] = next;
        }
      }
      aug.edges.push_back({prev, next, pieces[p], polyline_length(pieces[p])});
      prev = next;
    }
  }
  detail::build_adjacency(aug);
  return result;
}

DirectionScore apls_one_direction(const RoadGraph& source, const ControlNodeSet& controls,
                                  const SnapResult& snap) {
  if (snap.mapping.size() != controls.size()) {
    throw ConfigError("snap result does not match control set");
  }

  DirectionScore out;
  const std::size_t n = controls.size();
  if (n < 2) return out;

  // One Dijkstra per control in the source and per distinct snapped node
  // in the target, each run lazily and cached.
  std::vector<std::vector<double>> source_dist(n);
  std::unordered_map<int, std::vector<double>> target_dist;
  const RoadGraph& target = snap.augmented_target;

  auto target_distances = [&](int node) -> const std::vector<double>& {
    auto it = target_dist.find(node);
    if (it == target_dist.end()) {
      it = target_dist.emplace(node, dijkstra_distances(target, node)).first;
    }
    return it->second;
  };

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (source_dist[i].empty()) {
      source_dist[i] = dijkstra_distances(source, controls.ids[i]);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double len = source_dist[i][static_cast<std::size_t>(controls.ids[j])];
      if (len == kInf) continue;  // pair not connected in the source: not counted
      if (!(len > 0.0)) continue; // coincident control nodes carry no path information
      ++out.path_count;

      const int a = snap.mapping[i];
      const int b = snap.mapping[j];
      if (a == kUnsnapped || b == kUnsnapped) {
        sum += 1.0;
        ++out.missing;
        continue;
      }
      const double target_len = target_distances(a)[static_cast<std::size_t>(b)];
      if (target_len == kInf) {
        sum += 1.0;
        ++out.missing;
        continue;
      }
      sum += std::min(1.0, std::abs(len - target_len) / len);
    }
  }

  if (out.path_count > 0) {
    out.score = std::clamp(1.0 - sum / static_cast<double>(out.path_count), 0.0, 1.0);
  }
  return out;
}

AplsScore apls(const RoadGraph& truth, const RoadGraph& proposal, const AplsParams& params) {
  AplsScore score;
  const bool truth_empty = truth.empty();
  const bool proposal_empty = proposal.empty();
  if (truth_empty && proposal_empty) {
    score.part1 = score.part2 = score.total = 1.0;
    return score;
  }
  if (truth_empty || proposal_empty) {
    // Missing or entirely spurious road network.
    return score;
  }

  const AugmentedGraph truth_aug = inject_midpoints(truth, params.spacing);
  AugmentedGraph proposal_aug;
  if (params.proposal_midpoints) {
    proposal_aug = inject_midpoints(proposal, params.spacing);
  } else {
    proposal_aug.graph = proposal;
    proposal_aug.controls.ids.resize(proposal.nodes.size());
    for (int i = 0; i < proposal.node_count(); ++i) {
      proposal_aug.controls.ids[static_cast<std::size_t>(i)] = i;
    }
  }

  const SnapResult snap1 =
      snap_control_nodes(truth_aug.graph, truth_aug.controls, proposal, params.buffer);
  const DirectionScore d1 = apls_one_direction(truth_aug.graph, truth_aug.controls, snap1);

  const SnapResult snap2 =
      snap_control_nodes(proposal_aug.graph, proposal_aug.controls, truth, params.buffer);
  const DirectionScore d2 = apls_one_direction(proposal_aug.graph, proposal_aug.controls, snap2);

  score.part1 = d1.score;
  score.part2 = d2.score;
  score.n1 = d1.path_count;
  score.n2 = d2.path_count;
  score.missing1 = d1.missing;
  score.missing2 = d2.missing;
  score.total = harmonic_mean(score.part1, score.part2);
  return score;
}

ChallengeReport aggregate_challenge(std::vector<TileAplsRow> tiles) {
  ChallengeReport report;
  report.tiles = std::move(tiles);
  std::sort(report.tiles.begin(), report.tiles.end(),
            [](const TileAplsRow& a, const TileAplsRow& b) { return a.tile_id < b.tile_id; });

  std::map<std::string, std::pair<double, long>> by_city;
  for (const auto& row : report.tiles) {
    auto& acc = by_city[row.city];
    acc.first += row.score.total;
    acc.second += 1;
  }
  double sum = 0.0;
  for (const auto& [city, acc] : by_city) {
    const double mean = acc.first / static_cast<double>(acc.second);
    report.cities.emplace_back(city, mean);
    sum += mean;
  }
  report.overall = by_city.empty() ? 0.0 : sum / static_cast<double>(by_city.size());
  return report;
}

ChallengeReport score_road_challenge(const std::vector<RoadTile>& tiles,
                                     const AplsParams& params, int parallelism) {
  std::vector<TileAplsRow> rows(tiles.size());
  parallel_for(tiles.size(), parallelism, [&](std::size_t i) {
    const RoadTile& tile = tiles[i];
    const RoadGraph truth = build_graph(tile.truth, params.merge_tolerance);
    const RoadGraph proposal = build_graph(tile.proposal, params.merge_tolerance);
    rows[i] = {tile.tile_id, tile.city, apls(truth, proposal, params)};
  });
  return aggregate_challenge(std::move(rows));
}

}  // namespace geoscore
