#include "geoscore/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace geoscore {

namespace {

using nlohmann::json;

json config_json(const std::map<std::string, std::string>& config) {
  json j = json::object();
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

}  // namespace

std::string format_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

BuildingsReport aggregate_buildings(std::vector<BuildingsReport::SceneRow> scenes) {
  BuildingsReport report;
  std::sort(scenes.begin(), scenes.end(),
            [](const auto& a, const auto& b) { return a.score.tile_id < b.score.tile_id; });

  std::map<std::string, std::vector<SceneScore>> by_city;
  for (const auto& row : scenes) by_city[row.city].push_back(row.score);
  for (const auto& [city, city_scenes] : by_city) {
    report.cities.push_back(score_city(city, city_scenes));
  }
  report.scenes = std::move(scenes);
  report.overall = report.cities.empty() ? 0.0 : overall_buildings_score(report.cities);
  return report;
}

std::string buildings_report_csv(const BuildingsReport& report) {
  std::ostringstream out;
  out << "kind,id,tp,fp,fn,precision,recall,f1\n";
  for (const auto& row : report.scenes) {
    out << "scene," << row.score.tile_id << ',' << row.score.true_positives << ','
        << row.score.false_positives << ',' << row.score.false_negatives << ",,,\n";
  }
  for (const auto& c : report.cities) {
    out << "city," << c.city << ',' << c.true_positives << ',' << c.false_positives << ','
        << c.false_negatives << ',' << format_ratio(c.precision) << ','
        << format_ratio(c.recall) << ',' << format_ratio(c.f1) << '\n';
  }
  out << "total,,,,,,," << format_ratio(report.overall) << '\n';
  return out.str();
}

std::string buildings_report_json(const BuildingsReport& report,
                                  const std::map<std::string, std::string>& config) {
  json scenes = json::array();
  for (const auto& row : report.scenes) {
    scenes.push_back({{"tile_id", row.score.tile_id},
                      {"city", row.city},
                      {"tp", row.score.true_positives},
                      {"fp", row.score.false_positives},
                      {"fn", row.score.false_negatives}});
  }
  json cities = json::array();
  for (const auto& c : report.cities) {
    cities.push_back({{"city", c.city},
                      {"tp", c.true_positives},
                      {"fp", c.false_positives},
                      {"fn", c.false_negatives},
                      {"precision", c.precision},
                      {"recall", c.recall},
                      {"f1", c.f1}});
  }

  // Recompute the overall score from the per-city rows as written.
  double mean = 0.0;
  for (const auto& c : report.cities) mean += c.f1;
  mean = report.cities.empty() ? 0.0 : mean / static_cast<double>(report.cities.size());
  const bool consistent = std::abs(mean - report.overall) <= 1e-12;

  json j{{"config", config_json(config)},
         {"scenes", scenes},
         {"cities", cities},
         {"overall_f1", report.overall},
         {"consistency_check", consistent}};
  return j.dump(2) + "\n";
}

std::string roads_report_csv(const ChallengeReport& report) {
  std::ostringstream out;
  out << "tile_id,part1,part2,total,N1,N2,missing1,missing2\n";
  for (const auto& row : report.tiles) {
    out << row.tile_id << ',' << format_ratio(row.score.part1) << ','
        << format_ratio(row.score.part2) << ',' << format_ratio(row.score.total) << ','
        << row.score.n1 << ',' << row.score.n2 << ',' << row.score.missing1 << ','
        << row.score.missing2 << '\n';
  }
  return out.str();
}

std::string roads_report_json(const ChallengeReport& report,
                              const std::map<std::string, std::string>& config) {
  json tiles = json::array();
  for (const auto& row : report.tiles) {
    tiles.push_back({{"tile_id", row.tile_id},
                     {"city", row.city},
                     {"part1", row.score.part1},
                     {"part2", row.score.part2},
                     {"total", row.score.total},
                     {"n1", row.score.n1},
                     {"n2", row.score.n2},
                     {"missing1", row.score.missing1},
                     {"missing2", row.score.missing2}});
  }
  json cities = json::object();
  for (const auto& [city, mean] : report.cities) cities[city] = mean;

  // Recompute city and overall means from the rows as written.
  std::map<std::string, std::pair<double, long>> acc;
  for (const auto& row : report.tiles) {
    acc[row.city].first += row.score.total;
    acc[row.city].second += 1;
  }
  bool consistent = acc.size() == report.cities.size();
  double overall = 0.0;
  for (const auto& [city, sums] : acc) {
    const double mean = sums.first / static_cast<double>(sums.second);
    overall += mean;
    auto it = std::find_if(report.cities.begin(), report.cities.end(),
                           [&](const auto& c) { return c.first == city; });
    consistent = consistent && it != report.cities.end() &&
                 std::abs(it->second - mean) <= 1e-12;
  }
  overall = acc.empty() ? 0.0 : overall / static_cast<double>(acc.size());
  consistent = consistent && std::abs(overall - report.overall) <= 1e-12;

  json j{{"config", config_json(config)},
         {"tiles", tiles},
         {"cities", cities},
         {"overall_apls", report.overall},
         {"consistency_check", consistent}};
  return j.dump(2) + "\n";
}

std::string pixel_metrics_csv(const std::vector<PixelMetricsRow>& rows) {
  std::ostringstream out;
  out << "tile_id,pixel_iou,pixel_f1,relaxed_f1\n";
  for (const auto& row : rows) {
    out << row.tile_id << ',' << format_ratio(row.metrics.iou) << ','
        << format_ratio(row.metrics.f1) << ',' << format_ratio(row.metrics.relaxed_f1)
        << '\n';
  }
  return out.str();
}

std::string pixel_metrics_json(const std::vector<PixelMetricsRow>& rows,
                               const std::map<std::string, std::string>& config) {
  json tiles = json::array();
  double iou = 0.0, f1 = 0.0, rf1 = 0.0;
  for (const auto& row : rows) {
    tiles.push_back({{"tile_id", row.tile_id},
                     {"pixel_iou", row.metrics.iou},
                     {"pixel_f1", row.metrics.f1},
                     {"relaxed_f1", row.metrics.relaxed_f1}});
    iou += row.metrics.iou;
    f1 += row.metrics.f1;
    rf1 += row.metrics.relaxed_f1;
  }
  const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
  json j{{"config", config_json(config)},
         {"tiles", tiles},
         {"mean_pixel_iou", iou / n},
         {"mean_pixel_f1", f1 / n},
         {"mean_relaxed_f1", rf1 / n}};
  return j.dump(2) + "\n";
}

}  // namespace geoscore
