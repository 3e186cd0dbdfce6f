#include <doctest.h>

#include <algorithm>
#include <random>

#include "geoscore/buildings_metric.hpp"
#include "support.hpp"

using namespace geoscore;
using testsupport::building;
using testsupport::rect;

namespace {

// IoU of a unit square against itself shifted right by dx is
// (1-dx)/(1+dx); invert to place proposals at exact IoU values.
double shift_for_iou(double target) { return (1.0 - target) / (1.0 + target); }

std::vector<BuildingRecord> random_scene(std::mt19937_64& rng, int count, double extent) {
  std::uniform_real_distribution<double> cd(0.0, extent);
  std::uniform_real_distribution<double> sd(0.5, 2.0);
  std::vector<BuildingRecord> out;
  for (int i = 0; i < count; ++i) {
    const double x = cd(rng), y = cd(rng), w = sd(rng), h = sd(rng);
    out.push_back(building(i, rect(x, y, x + w, y + h)));
  }
  return out;
}

}  // namespace

TEST_CASE("identical truth and proposal match perfectly") {
  const std::vector<BuildingRecord> scene{building(0, rect(0, 0, 1, 1))};
  const SceneScore s = match_buildings(scene, scene);
  CHECK(s.true_positives == 1);
  CHECK(s.false_positives == 0);
  CHECK(s.false_negatives == 0);
}

TEST_CASE("a pair below the threshold is both FP and FN") {
  const std::vector<BuildingRecord> truth{building(0, rect(0, 0, 1, 1))};
  // IoU 1/3 < 0.5
  const std::vector<BuildingRecord> proposal{building(0, rect(0.5, 0, 1.5, 1))};
  const SceneScore s = match_buildings(truth, proposal);
  CHECK(s.true_positives == 0);
  CHECK(s.false_positives == 1);
  CHECK(s.false_negatives == 1);
}

TEST_CASE("the sorted sweep picks the higher-IoU competitor") {
  const std::vector<BuildingRecord> truth{building(0, rect(0, 0, 1, 1))};
  const double dx8 = shift_for_iou(0.8);
  const double dx6 = shift_for_iou(0.6);
  const std::vector<BuildingRecord> proposal{
      building(0, rect(dx6, 0, 1 + dx6, 1)),  // IoU 0.6 listed first
      building(1, rect(dx8, 0, 1 + dx8, 1)),  // IoU 0.8
  };
  const SceneScore s = match_buildings(truth, proposal);
  CHECK(s.true_positives == 1);
  CHECK(s.false_positives == 1);
  CHECK(s.false_negatives == 0);
  REQUIRE(s.matches.size() == 1);
  CHECK(s.matches[0].proposal_index == 1);
  CHECK(s.matches[0].iou == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("threshold comparison is inclusive at the boundary") {
  const std::vector<BuildingRecord> truth{building(0, rect(0, 0, 1, 1))};
  const std::vector<BuildingRecord> proposal{
      building(0, rect(shift_for_iou(0.5), 0, 1 + shift_for_iou(0.5), 1))};
  const SceneScore s = match_buildings(truth, proposal, 0.5);
  CHECK(s.true_positives == 1);
}

TEST_CASE("matching is invariant under input permutation") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto truth = random_scene(rng, 12, 10.0);
    auto proposal = random_scene(rng, 12, 10.0);
    const SceneScore a = match_buildings(truth, proposal);

    std::shuffle(truth.begin(), truth.end(), rng);
    std::shuffle(proposal.begin(), proposal.end(), rng);
    const SceneScore b = match_buildings(truth, proposal);

    CHECK(a.true_positives == b.true_positives);
    CHECK(a.false_positives == b.false_positives);
    CHECK(a.false_negatives == b.false_negatives);

    std::vector<double> ia, ib;
    for (const auto& m : a.matches) ia.push_back(m.iou);
    for (const auto& m : b.matches) ib.push_back(m.iou);
    std::sort(ia.begin(), ia.end());
    std::sort(ib.begin(), ib.end());
    CHECK(ia == ib);
  }
}

TEST_CASE("scene count identities hold on fuzzed scenes") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> nd(0, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto truth = random_scene(rng, nd(rng), 8.0);
    const auto proposal = random_scene(rng, nd(rng), 8.0);
    const SceneScore s = match_buildings(truth, proposal);
    CHECK(s.true_positives + s.false_negatives == static_cast<long>(truth.size()));
    CHECK(s.true_positives + s.false_positives == static_cast<long>(proposal.size()));
    CHECK(s.true_positives <= static_cast<long>(std::min(truth.size(), proposal.size())));
  }
}

TEST_CASE("raising the threshold never increases the TP count") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto truth = random_scene(rng, 10, 6.0);
    const auto proposal = random_scene(rng, 10, 6.0);
    long prev = std::numeric_limits<long>::max();
    for (double threshold = 0.3; threshold <= 0.91; threshold += 0.1) {
      const SceneScore s = match_buildings(truth, proposal, threshold);
      CHECK(s.true_positives <= prev);
      prev = s.true_positives;
    }
  }
}

TEST_CASE("greedy TP count tracks the optimal assignment on small scenes") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> nd(1, 8);
  int gaps = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto truth = random_scene(rng, nd(rng), 4.0);
    const auto proposal = random_scene(rng, nd(rng), 4.0);
    const SceneScore s = match_buildings(truth, proposal);

    std::vector<std::pair<int, int>> candidates;
    for (int t = 0; t < static_cast<int>(truth.size()); ++t) {
      for (int p = 0; p < static_cast<int>(proposal.size()); ++p) {
        if (iou(truth[static_cast<std::size_t>(t)].footprint,
                proposal[static_cast<std::size_t>(p)].footprint) >= 0.5) {
          candidates.emplace_back(t, p);
        }
      }
    }
    const int optimal = testsupport::max_matching_size(
        static_cast<int>(truth.size()), static_cast<int>(proposal.size()), candidates);
    CHECK(s.true_positives >= optimal - 1);
    if (s.true_positives < optimal) {
      ++gaps;
      MESSAGE("greedy matched ", s.true_positives, " vs optimal ", optimal);
    }
  }
  CHECK(gaps <= 5);  // exact equality expected on non-adversarial scenes
}

TEST_CASE("city aggregation") {
  SUBCASE("perfect counts give P=R=F1=1") {
    SceneScore s;
    s.true_positives = 10;
    const CityScore c = score_city("A", {s});
    CHECK(c.precision == doctest::Approx(1.0));
    CHECK(c.recall == doctest::Approx(1.0));
    CHECK(c.f1 == doctest::Approx(1.0));
  }
  SUBCASE("equal precision and recall give F1 = that value") {
    SceneScore s;
    s.true_positives = 3;
    s.false_positives = 1;
    s.false_negatives = 1;
    const CityScore c = score_city("A", {s});
    CHECK(c.precision == doctest::Approx(0.75));
    CHECK(c.recall == doctest::Approx(0.75));
    CHECK(c.f1 == doctest::Approx(0.75));
  }
  SUBCASE("mixed counts follow the harmonic mean") {
    SceneScore s;
    s.true_positives = 6;
    s.false_positives = 2;
    s.false_negatives = 6;
    const CityScore c = score_city("A", {s});
    CHECK(c.precision == doctest::Approx(0.75));
    CHECK(c.recall == doctest::Approx(0.5));
    CHECK(c.f1 == doctest::Approx(0.6));
  }
  SUBCASE("empty city scores zero, not NaN") {
    SceneScore s;
    const CityScore c = score_city("A", {s});
    CHECK(c.precision == 0.0);
    CHECK(c.recall == 0.0);
    CHECK(c.f1 == 0.0);
  }
}

TEST_CASE("overall score is the unweighted mean of city F1 values") {
  auto city = [](double f1) {
    CityScore c;
    c.f1 = f1;
    return c;
  };
  CHECK(overall_buildings_score({city(0.89), city(0.75), city(0.60), city(0.54)}) ==
        doctest::Approx(0.695).epsilon(1e-12));
  CHECK(overall_buildings_score({city(0.83), city(0.68), city(0.58), city(0.48)}) ==
        doctest::Approx(0.6425).epsilon(1e-12));
  CHECK(overall_buildings_score({city(0.42)}) == doctest::Approx(0.42));
}
