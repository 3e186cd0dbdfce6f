#include "geoscore/buildings_metric.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace geoscore {

namespace {

// Uniform grid over proposal bounding boxes. Cell size tracks the median
// footprint extent so a query touches O(1) cells on typical scenes.
class BBoxGrid {
 public:
  explicit BBoxGrid(const std::vector<BuildingRecord>& records) {
    if (records.empty()) return;
    std::vector<double> extents;
    extents.reserve(records.size() * 2);
    bounds_ = records.front().footprint.bbox();
    for (const auto& r : records) {
      const BBox& b = r.footprint.bbox();
      bounds_.expand(b);
      extents.push_back(b.width());
      extents.push_back(b.height());
    }
    std::nth_element(extents.begin(), extents.begin() + extents.size() / 2, extents.end());
    cell_ = std::max(1e-3, extents[extents.size() / 2]);
    nx_ = static_cast<int>(bounds_.width() / cell_) + 1;
    ny_ = static_cast<int>(bounds_.height() / cell_) + 1;
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (int i = 0; i < static_cast<int>(records.size()); ++i) {
      visit_cells(records[static_cast<std::size_t>(i)].footprint.bbox(),
                  [&](std::size_t c) { cells_[c].push_back(i); });
    }
  }

  template <typename Fn>
  void query(const BBox& box, Fn&& fn) const {
    if (cells_.empty()) return;
    seen_.clear();
    visit_cells(box, [&](std::size_t c) {
      for (int i : cells_[c]) {
        if (seen_.insert(i).second) fn(i);
      }
    });
  }

 private:
  template <typename Fn>
  void visit_cells(const BBox& box, Fn&& fn) const {
    const int x0 = clampi(static_cast<int>((box.lo.x - bounds_.lo.x) / cell_), nx_);
    const int x1 = clampi(static_cast<int>((box.hi.x - bounds_.lo.x) / cell_), nx_);
    const int y0 = clampi(static_cast<int>((box.lo.y - bounds_.lo.y) / cell_), ny_);
    const int y1 = clampi(static_cast<int>((box.hi.y - bounds_.lo.y) / cell_), ny_);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        fn(static_cast<std::size_t>(y) * nx_ + x);
      }
    }
  }

  static int clampi(int v, int n) { return std::clamp(v, 0, n - 1); }

  BBox bounds_{};
  double cell_ = 1.0;
  int nx_ = 0, ny_ = 0;
  std::vector<std::vector<int>> cells_;
  mutable std::unordered_set<int> seen_;
};

struct Candidate {
  double iou;
  int truth_index;
  int proposal_index;
};

}  // namespace

SceneScore match_buildings(const std::vector<BuildingRecord>& truth,
                           const std::vector<BuildingRecord>& proposal,
                           double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError("IoU threshold must be in (0, 1]");
  }

  SceneScore score;
  const BBoxGrid grid(proposal);

  std::vector<Candidate> candidates;
  for (int t = 0; t < static_cast<int>(truth.size()); ++t) {
    const Polygon& tf = truth[static_cast<std::size_t>(t)].footprint;
    grid.query(tf.bbox(), [&](int p) {
      const double v = iou(tf, proposal[static_cast<std::size_t>(p)].footprint);
      if (v >= threshold) candidates.push_back({v, t, p});
    });
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.truth_index != b.truth_index) return a.truth_index < b.truth_index;
    return a.proposal_index < b.proposal_index;
  });

  std::vector<char> truth_used(truth.size(), 0);
  std::vector<char> proposal_used(proposal.size(), 0);
  for (const auto& c : candidates) {
    if (truth_used[static_cast<std::size_t>(c.truth_index)] ||
        proposal_used[static_cast<std::size_t>(c.proposal_index)]) {
      continue;
    }
    truth_used[static_cast<std::size_t>(c.truth_index)] = 1;
    proposal_used[static_cast<std::size_t>(c.proposal_index)] = 1;
    score.matches.push_back({c.truth_index, c.proposal_index, c.iou});
  }

  score.true_positives = static_cast<long>(score.matches.size());
  score.false_negatives = static_cast<long>(truth.size()) - score.true_positives;
  score.false_positives = static_cast<long>(proposal.size()) - score.true_positives;
  return score;
}

CityScore score_city(const std::string& city, const std::vector<SceneScore>& scenes) {
  CityScore cs;
  cs.city = city;
  for (const auto& s : scenes) {
    cs.true_positives += s.true_positives;
    cs.false_positives += s.false_positives;
    cs.false_negatives += s.false_negatives;
  }
  const double tp = static_cast<double>(cs.true_positives);
  const double p_den = tp + static_cast<double>(cs.false_positives);
  const double r_den = tp + static_cast<double>(cs.false_negatives);
  cs.precision = p_den > 0.0 ? tp / p_den : 0.0;
  cs.recall = r_den > 0.0 ? tp / r_den : 0.0;
  cs.f1 = (cs.precision + cs.recall) > 0.0
              ? 2.0 * cs.precision * cs.recall / (cs.precision + cs.recall)
              : 0.0;
  return cs;
}

double overall_buildings_score(const std::vector<CityScore>& cities) {
  if (cities.empty()) throw ConfigError("no cities to aggregate");
  double sum = 0.0;
  for (const auto& c : cities) sum += c.f1;
  return sum / static_cast<double>(cities.size());
}

}  // namespace geoscore
