#ifndef GEOSCORE_REPORTS_HPP
#define GEOSCORE_REPORTS_HPP

/// Machine-readable report writers. CSV bodies are canonically ordered
/// (scenes by tile id, cities by name) so reruns and different worker
/// counts produce byte-identical output. JSON summaries embed the
/// resolved configuration and an internal consistency check that
/// recomputes the totals from the per-tile rows.

#include <map>
#include <string>
#include <vector>

#include "geoscore/apls.hpp"
#include "geoscore/buildings_metric.hpp"
#include "geoscore/raster.hpp"

namespace geoscore {

struct BuildingsReport {
  struct SceneRow {
    std::string city;
    SceneScore score;
  };
  std::vector<SceneRow> scenes;   ///< sorted by tile_id
  std::vector<CityScore> cities;  ///< sorted by city
  double overall = 0.0;
};

/// Aggregate scene scores into city scores and the overall mean.
BuildingsReport aggregate_buildings(std::vector<BuildingsReport::SceneRow> scenes);

std::string buildings_report_csv(const BuildingsReport& report);
std::string buildings_report_json(const BuildingsReport& report,
                                  const std::map<std::string, std::string>& config);

std::string roads_report_csv(const ChallengeReport& report);
std::string roads_report_json(const ChallengeReport& report,
                              const std::map<std::string, std::string>& config);

struct PixelMetricsRow {
  std::string tile_id;
  PixelMetrics metrics;
};

std::string pixel_metrics_csv(const std::vector<PixelMetricsRow>& rows);
std::string pixel_metrics_json(const std::vector<PixelMetricsRow>& rows,
                               const std::map<std::string, std::string>& config);

/// Fixed-precision decimal formatting used by every report writer.
std::string format_ratio(double v);

}  // namespace geoscore

#endif  // GEOSCORE_REPORTS_HPP
