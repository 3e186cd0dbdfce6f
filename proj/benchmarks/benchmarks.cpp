#include <benchmark/benchmark.h>

#include <random>

#include "geoscore/apls.hpp"
#include "geoscore/buildings_metric.hpp"
#include "geoscore/raster.hpp"
#include "geoscore/road_graph.hpp"

using namespace geoscore;

namespace {

Polygon convex(std::mt19937_64& rng, Point2 center, double radius, int n) {
  std::vector<double> angles(static_cast<std::size_t>(n));
  std::uniform_real_distribution<double> ad(0.0, 2.0 * M_PI);
  for (auto& a : angles) a = ad(rng);
  std::sort(angles.begin(), angles.end());
  std::vector<Point2> pts;
  for (double a : angles) {
    pts.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return Polygon(pts);
}

std::vector<RoadSegmentRecord> grid(int n, double spacing) {
  std::vector<RoadSegmentRecord> segments;
  int id = 0;
  for (int x = 0; x < n; ++x) {
    std::vector<Point2> pts;
    for (int y = 0; y < n; ++y) pts.push_back({x * spacing, y * spacing});
    segments.push_back({Polyline(std::move(pts)), id++, RoadType::Residential,
                        Surface::Paved, BridgeType::NotBridge, 2});
  }
  for (int y = 0; y < n; ++y) {
    std::vector<Point2> pts;
    for (int x = 0; x < n; ++x) pts.push_back({x * spacing, y * spacing});
    segments.push_back({Polyline(std::move(pts)), id++, RoadType::Residential,
                        Surface::Paved, BridgeType::NotBridge, 2});
  }
  return segments;
}

void BM_PolygonIntersectionArea(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Polygon a = convex(rng, {0, 0}, 1.0, static_cast<int>(state.range(0)));
  const Polygon b = convex(rng, {0.3, 0.2}, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(polygon_intersection_area(a, b));
  }
}
BENCHMARK(BM_PolygonIntersectionArea)->Arg(8)->Arg(32)->Arg(128);

void BM_MatchBuildings(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> cd(0.0, 200.0);
  std::uniform_real_distribution<double> sd(4.0, 12.0);
  std::vector<BuildingRecord> truth, proposal;
  for (int i = 0; i < state.range(0); ++i) {
    const double x = cd(rng), y = cd(rng), w = sd(rng), h = sd(rng);
    truth.push_back({i, Polygon({{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}})});
    const double jx = x + 0.5, jy = y + 0.5;
    proposal.push_back({i, Polygon({{jx, jy}, {jx + w, jy}, {jx + w, jy + h}, {jx, jy + h}})});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_buildings(truth, proposal));
  }
}
BENCHMARK(BM_MatchBuildings)->Arg(100)->Arg(400);

void BM_AllPairsControlNodes(benchmark::State& state) {
  const auto graph = build_graph(grid(7, 66.0));
  const auto aug = inject_midpoints(graph, 50.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(all_paths_from_sources(aug.graph, aug.controls));
  }
  state.counters["controls"] = static_cast<double>(aug.controls.size());
}
BENCHMARK(BM_AllPairsControlNodes);

void BM_AplsTile(benchmark::State& state) {
  const auto truth = build_graph(grid(5, 100.0));
  auto segments = grid(5, 100.0);
  segments.pop_back();
  segments.erase(segments.begin());
  const auto proposal = build_graph(segments);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apls(truth, proposal));
  }
}
BENCHMARK(BM_AplsTile);

void BM_Skeletonize(benchmark::State& state) {
  const auto roads = grid(5, 100.0);
  const RasterMask mask =
      render_road_mask(roads, BBox{{-8, -8}, {408, 408}}, 0.5, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skeletonize(mask));
  }
}
BENCHMARK(BM_Skeletonize);

void BM_RenderRoadMask(benchmark::State& state) {
  const auto roads = grid(5, 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        render_road_mask(roads, BBox{{-8, -8}, {408, 408}}, 0.5, 2.0));
  }
}
BENCHMARK(BM_RenderRoadMask);

}  // namespace

BENCHMARK_MAIN();
