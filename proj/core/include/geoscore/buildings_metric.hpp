#ifndef GEOSCORE_BUILDINGS_METRIC_HPP
#define GEOSCORE_BUILDINGS_METRIC_HPP

/// Building footprint scoring: greedy one-to-one IoU matching at a
/// threshold (0.5 by default), per-scene TP/FP/FN counts, per-city
/// precision/recall/F1 from summed counts, and the unweighted mean of
/// city F1 values as the overall score.

#include <string>
#include <vector>

#include "geoscore/records.hpp"

namespace geoscore {

/// One accepted truth/proposal pair. Ids are indices into the scene's
/// input lists (building_id values may repeat across MultiPolygon parts,
/// indices are unique).
struct MatchEntry {
  int truth_index = 0;
  int proposal_index = 0;
  double iou = 0.0;
};

struct SceneScore {
  std::string tile_id;
  long true_positives = 0;
  long false_positives = 0;
  long false_negatives = 0;
  std::vector<MatchEntry> matches;
};

struct CityScore {
  std::string city;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long true_positives = 0;
  long false_positives = 0;
  long false_negatives = 0;
};

/// Greedy matching: all candidate pairs with IoU >= threshold are
/// processed in decreasing IoU order; every truth and every proposal
/// participates in at most one match. IoU ties break on
/// (truth_index, proposal_index). Candidate generation goes through a
/// bounding-box grid, so scenes with many footprints stay near-linear.
SceneScore match_buildings(const std::vector<BuildingRecord>& truth,
                           const std::vector<BuildingRecord>& proposal,
                           double threshold = 0.5);

/// Sum counts over scenes, then precision/recall/F1. Zero denominators
/// yield 0.
CityScore score_city(const std::string& city, const std::vector<SceneScore>& scenes);

/// Unweighted arithmetic mean of city F1 scores.
double overall_buildings_score(const std::vector<CityScore>& cities);

}  // namespace geoscore

#endif  // GEOSCORE_BUILDINGS_METRIC_HPP
