#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "geoscore/apls.hpp"
#include "support.hpp"

using namespace geoscore;
using testsupport::grid_segments;
using testsupport::random_connected_segments;
using testsupport::road;

namespace {

AplsParams no_midpoints() {
  AplsParams p;
  p.spacing = 1e9;  // effectively disables midpoint injection
  return p;
}

ControlNodeSet all_nodes(const RoadGraph& g) {
  ControlNodeSet c;
  for (int i = 0; i < g.node_count(); ++i) c.ids.push_back(i);
  return c;
}

}  // namespace

TEST_CASE("identical graphs score 1") {
  const auto truth = build_graph(grid_segments(4, 4, 80.0));
  const AplsScore s = apls(truth, truth);
  CHECK(s.part1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.part2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.missing1 == 0);
  CHECK(s.missing2 == 0);
}

TEST_CASE("single-pair detour: 948 m truth vs 1027 m proposal") {
  // one straight truth edge; the proposal joins the same endpoints
  // through a detour of total length 1027
  const double h = std::sqrt(513.5 * 513.5 - 474.0 * 474.0);
  const auto truth = build_graph({road({{0, 0}, {948, 0}}, 0)});
  const auto proposal = build_graph({road({{0, 0}, {474, h}, {948, 0}}, 0)});
  REQUIRE(proposal.edges.size() == 1);
  CHECK(proposal.edges[0].length == doctest::Approx(1027.0).epsilon(1e-9));

  const AplsScore s = apls(truth, proposal, no_midpoints());
  CHECK(s.n1 == 1);
  const double contribution = 1.0 - s.part1;
  CHECK(contribution == doctest::Approx(std::abs(948.0 - 1027.0) / 948.0).epsilon(1e-9));
  CHECK(contribution == doctest::Approx(0.0833).epsilon(2e-3));
}

TEST_CASE("missing connections are maximally penalized") {
  const auto truth = build_graph({road({{0, 0}, {100, 0}}, 0)});
  // proposal covers only the first quarter of the road
  const auto proposal = build_graph({road({{0, 0}, {25, 0}}, 0)});
  const AplsScore s = apls(truth, proposal, no_midpoints());
  // the far endpoint cannot snap (75 m away), so the only pair is missing
  CHECK(s.part1 == doctest::Approx(0.0));
  CHECK(s.missing1 == 1);
  CHECK(s.total == doctest::Approx(0.0));
}

TEST_CASE("empty-graph conventions") {
  const RoadGraph empty;
  const auto some = build_graph({road({{0, 0}, {50, 0}}, 0)});
  SUBCASE("both empty scores 1") {
    const AplsScore s = apls(empty, empty);
    CHECK(s.total == doctest::Approx(1.0));
  }
  SUBCASE("empty proposal scores 0") {
    const AplsScore s = apls(some, empty);
    CHECK(s.total == doctest::Approx(0.0));
  }
  SUBCASE("spurious proposal against empty truth scores 0") {
    const AplsScore s = apls(empty, some);
    CHECK(s.total == doctest::Approx(0.0));
  }
}

TEST_CASE("snapping") {
  const auto target = build_graph({road({{0, 0}, {100, 0}}, 0)});

  SUBCASE("a control 5 m away stays unsnapped at buffer 4") {
    const auto source = build_graph({road({{20, 5}, {80, 5}}, 0)});
    const auto controls = all_nodes(source);
    const SnapResult snap = snap_control_nodes(source, controls, target, 4.0);
    CHECK(snap.mapping[0] == kUnsnapped);
    CHECK(snap.mapping[1] == kUnsnapped);
  }

  SUBCASE("a control 2 m away splits the edge and conserves length") {
    const auto source = build_graph({road({{30, 2}, {30, 50}}, 0)});
    const auto controls = all_nodes(source);
    const SnapResult snap = snap_control_nodes(source, controls, target, 4.0);
    // the node at (30, 2) snaps onto (30, 0)
    int snapped = -1;
    for (std::size_t i = 0; i < controls.size(); ++i) {
      if (snap.mapping[i] != kUnsnapped) snapped = snap.mapping[i];
    }
    REQUIRE(snapped >= 0);
    CHECK(snap.augmented_target.nodes[static_cast<std::size_t>(snapped)].x ==
          doctest::Approx(30.0).epsilon(1e-9));
    CHECK(snap.augmented_target.edges.size() == 2);
    double total = 0.0;
    for (const auto& e : snap.augmented_target.edges) total += e.length;
    CHECK(total == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(snap.augmented_target.kinds[static_cast<std::size_t>(snapped)] == NodeKind::Snapped);
  }

  SUBCASE("empty target leaves every control unsnapped") {
    const auto source = build_graph({road({{0, 0}, {10, 0}}, 0)});
    const SnapResult snap = snap_control_nodes(source, all_nodes(source), RoadGraph{}, 4.0);
    for (int m : snap.mapping) CHECK(m == kUnsnapped);
  }

  SUBCASE("controls at identical positions share one injected node") {
    const auto source = build_graph(
        {road({{40, 2}, {40, 30}}, 0), road({{40, -2}, {40, -30}}, 1)});
    const auto controls = all_nodes(source);
    const SnapResult snap = snap_control_nodes(source, controls, target, 4.0);
    // both near controls hit (40, 0); only one node may be injected there
    std::vector<int> hits;
    for (std::size_t i = 0; i < controls.size(); ++i) {
      if (snap.mapping[i] != kUnsnapped) hits.push_back(snap.mapping[i]);
    }
    REQUIRE(hits.size() == 2);
    CHECK(hits[0] == hits[1]);
  }
}

TEST_CASE("identity holds on random connected graphs") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const auto graph = build_graph(random_connected_segments(rng, 10, 350.0, 4));
    const AplsScore s = apls(graph, graph);
    CHECK(s.total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("edge deletion degrades part1 monotonically") {
  const auto segments = grid_segments(5, 5, 90.0);
  const auto truth = build_graph(segments);

  std::mt19937_64 rng(79);
  std::vector<RoadGraph::Edge> pool = truth.edges;
  std::shuffle(pool.begin(), pool.end(), rng);

  double prev = 1.0 + 1e-12;
  while (!pool.empty()) {
    // rebuild a proposal from the surviving edges
    std::vector<RoadSegmentRecord> records;
    int id = 0;
    for (const auto& e : pool) {
      records.push_back(road(e.geometry.vertices(), id++));
    }
    const auto proposal = build_graph(records);
    const AplsScore s = apls(truth, proposal);
    CHECK(s.part1 <= prev + 1e-12);
    prev = s.part1;
    pool.pop_back();
  }
}

TEST_CASE("role symmetry: part1 of (A,B) equals part2 of (B,A)") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = build_graph(random_connected_segments(rng, 9, 300.0, 3));
    const auto b = build_graph(random_connected_segments(rng, 9, 300.0, 3));
    const AplsScore ab = apls(a, b);
    const AplsScore ba = apls(b, a);
    CHECK(ab.part1 == doctest::Approx(ba.part2).epsilon(1e-12));
    CHECK(ab.part2 == doctest::Approx(ba.part1).epsilon(1e-12));
    CHECK(ab.total == doctest::Approx(ba.total).epsilon(1e-12));
  }
}

TEST_CASE("rigid translation leaves the score unchanged") {
  std::mt19937_64 rng(89);
  const auto seg_a = random_connected_segments(rng, 10, 300.0, 4);
  auto seg_b = random_connected_segments(rng, 10, 300.0, 4);

  auto translate = [](const std::vector<RoadSegmentRecord>& segs, double dx, double dy) {
    std::vector<RoadSegmentRecord> out;
    int id = 0;
    for (const auto& s : segs) {
      std::vector<Point2> pts;
      for (const auto& v : s.geometry.vertices()) pts.push_back({v.x + dx, v.y + dy});
      out.push_back(road(std::move(pts), id++));
    }
    return out;
  };

  const AplsScore base = apls(build_graph(seg_a), build_graph(seg_b));
  const AplsScore moved = apls(build_graph(translate(seg_a, 1250.5, -730.25)),
                               build_graph(translate(seg_b, 1250.5, -730.25)));
  CHECK(moved.part1 == doctest::Approx(base.part1).epsilon(1e-9));
  CHECK(moved.part2 == doctest::Approx(base.part2).epsilon(1e-9));
  CHECK(moved.total == doctest::Approx(base.total).epsilon(1e-9));
}

TEST_CASE("production metric equals the exhaustive-enumeration oracle exactly") {
  std::mt19937_64 rng(97);
  std::uniform_int_distribution<int> nodes(4, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto segments = random_connected_segments(rng, nodes(rng), 250.0, 2);
    const auto truth = build_graph(segments);

    // proposal: same node layout with a random subset of edges removed
    std::vector<RoadSegmentRecord> kept;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    int id = 0;
    for (const auto& e : truth.edges) {
      if (coin(rng) < 0.75) kept.push_back(road(e.geometry.vertices(), id++));
    }
    const auto proposal = build_graph(kept);
    if (proposal.empty()) continue;

    const auto controls = all_nodes(truth);
    const SnapResult snap = snap_control_nodes(truth, controls, proposal, 4.0);
    const DirectionScore production = apls_one_direction(truth, controls, snap);
    const double oracle = testsupport::apls_direction_oracle(truth, controls, snap);
    CHECK(production.score == oracle);  // bit-exact agreement
  }
}

TEST_CASE("challenge aggregation averages tiles per city, then cities") {
  std::vector<RoadTile> tiles;
  RoadTile a;
  a.tile_id = "AOI_1_A_img1";
  a.city = "A";
  a.truth.push_back(road({{0, 0}, {100, 0}}, 0));
  a.proposal.push_back(road({{0, 0}, {100, 0}}, 0));  // perfect -> 1.0
  tiles.push_back(a);

  RoadTile b;
  b.tile_id = "AOI_2_B_img1";
  b.city = "B";
  b.truth.push_back(road({{0, 0}, {100, 0}}, 0));     // empty proposal -> 0.0
  tiles.push_back(b);

  const ChallengeReport report = score_road_challenge(tiles, AplsParams{}, 2);
  REQUIRE(report.cities.size() == 2);
  CHECK(report.cities[0].second == doctest::Approx(1.0));
  CHECK(report.cities[1].second == doctest::Approx(0.0));
  CHECK(report.overall == doctest::Approx(0.5));
  REQUIRE(report.tiles.size() == 2);
  CHECK(report.tiles[0].tile_id == "AOI_1_A_img1");
}
