#include "geoscore/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "graph_detail.hpp"

namespace geoscore {

namespace {

constexpr std::uint8_t kFg = 255;

// 8-neighborhood in Zhang-Suen order: N, NE, E, SE, S, SW, W, NW.
constexpr std::array<std::pair<int, int>, 8> kNeighbors{
    {{-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}}};

std::vector<std::pair<int, int>> disk_offsets(int radius) {
  std::vector<std::pair<int, int>> offs;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      if (dr * dr + dc * dc <= radius * radius) offs.emplace_back(dr, dc);
    }
  }
  return offs;
}

RasterMask like(const RasterMask& m) {
  RasterMask out;
  out.width = m.width;
  out.height = m.height;
  out.transform = m.transform;
  out.data.assign(m.data.size(), 0);
  return out;
}

RasterMask dilate(const RasterMask& m, const std::vector<std::pair<int, int>>& offs) {
  RasterMask out = like(m);
  for (int r = 0; r < m.height; ++r) {
    for (int c = 0; c < m.width; ++c) {
      if (m.at(r, c) == 0) continue;
      for (const auto& [dr, dc] : offs) {
        const int rr = r + dr, cc = c + dc;
        if (rr >= 0 && rr < m.height && cc >= 0 && cc < m.width) out.set(rr, cc, kFg);
      }
    }
  }
  return out;
}

RasterMask erode(const RasterMask& m, const std::vector<std::pair<int, int>>& offs) {
  RasterMask out = like(m);
  for (int r = 0; r < m.height; ++r) {
    for (int c = 0; c < m.width; ++c) {
      bool keep = true;
      for (const auto& [dr, dc] : offs) {
        if (!m.foreground(r + dr, c + dc)) {
          keep = false;
          break;
        }
      }
      if (keep) out.set(r, c, kFg);
    }
  }
  return out;
}

int neighbor_count(const RasterMask& m, int r, int c) {
  int n = 0;
  for (const auto& [dr, dc] : kNeighbors) {
    if (m.foreground(r + dr, c + dc)) ++n;
  }
  return n;
}

}  // namespace

long RasterMask::foreground_count() const {
  long n = 0;
  for (std::uint8_t v : data) {
    if (v != 0) ++n;
  }
  return n;
}

RasterMask render_road_mask(const std::vector<RoadSegmentRecord>& roads,
                            const BBox& extent, double pixel_size, double halfwidth) {
  if (!(pixel_size > 0.0)) throw ConfigError("pixel size must be positive");
  if (!(halfwidth >= 0.0)) throw ConfigError("halfwidth must be non-negative");
  if (!(extent.width() > 0.0) || !(extent.height() > 0.0)) {
    throw ConfigError("degenerate raster extent");
  }

  RasterMask mask;
  mask.width = std::max(1, static_cast<int>(std::ceil(extent.width() / pixel_size)));
  mask.height = std::max(1, static_cast<int>(std::ceil(extent.height() / pixel_size)));
  mask.transform.origin = {extent.lo.x, extent.hi.y};
  mask.transform.pixel_size = pixel_size;
  mask.data.assign(static_cast<std::size_t>(mask.width) * mask.height, 0);

  const double hw2 = halfwidth * halfwidth;
  for (const auto& road : roads) {
    const auto& v = road.geometry.vertices();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const Point2& a = v[i];
      const Point2& b = v[i + 1];
      const double pad = halfwidth + pixel_size;
      const double x0 = std::min(a.x, b.x) - pad;
      const double x1 = std::max(a.x, b.x) + pad;
      const double y0 = std::min(a.y, b.y) - pad;
      const double y1 = std::max(a.y, b.y) + pad;
      const int c0 = std::max(0, static_cast<int>((x0 - extent.lo.x) / pixel_size));
      const int c1 = std::min(mask.width - 1, static_cast<int>((x1 - extent.lo.x) / pixel_size));
      const int r0 = std::max(0, static_cast<int>((extent.hi.y - y1) / pixel_size));
      const int r1 = std::min(mask.height - 1, static_cast<int>((extent.hi.y - y0) / pixel_size));

      const double dx = b.x - a.x;
      const double dy = b.y - a.y;
      const double len2 = dx * dx + dy * dy;
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
          const Point2 p = mask.pixel_center(r, c);
          double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
          t = std::clamp(t, 0.0, 1.0);
          const double ex = p.x - (a.x + t * dx);
          const double ey = p.y - (a.y + t * dy);
          if (ex * ex + ey * ey <= hw2) mask.set(r, c, kFg);
        }
      }
    }
  }
  return mask;
}

RasterMask refine_mask(const RasterMask& mask, double threshold, int open_radius,
                       int close_radius) {
  if (open_radius < 0 || close_radius < 0) throw ConfigError("negative morphology radius");

  RasterMask out = like(mask);
  for (std::size_t i = 0; i < mask.data.size(); ++i) {
    if (mask.data[i] / 255.0 >= threshold) out.data[i] = kFg;
  }
  if (open_radius > 0) {
    const auto offs = disk_offsets(open_radius);
    out = dilate(erode(out, offs), offs);
  }
  if (close_radius > 0) {
    const auto offs = disk_offsets(close_radius);
    out = erode(dilate(out, offs), offs);
  }
  return out;
}

RasterMask skeletonize(const RasterMask& mask) {
  RasterMask skel = like(mask);
  for (std::size_t i = 0; i < mask.data.size(); ++i) {
    skel.data[i] = mask.data[i] != 0 ? kFg : 0;
  }

  // Two-subiteration thinning, iterated to a fixed point.
  std::vector<std::pair<int, int>> doomed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int phase = 0; phase < 2; ++phase) {
      doomed.clear();
      for (int r = 0; r < skel.height; ++r) {
        for (int c = 0; c < skel.width; ++c) {
          if (skel.at(r, c) == 0) continue;
          std::array<int, 8> p{};
          for (std::size_t k = 0; k < kNeighbors.size(); ++k) {
            p[k] = skel.foreground(r + kNeighbors[k].first, c + kNeighbors[k].second) ? 1 : 0;
          }
          const int b = p[0] + p[1] + p[2] + p[3] + p[4] + p[5] + p[6] + p[7];
          if (b < 2 || b > 6) continue;
          int transitions = 0;
          for (std::size_t k = 0; k < 8; ++k) {
            if (p[k] == 0 && p[(k + 1) % 8] == 1) ++transitions;
          }
          if (transitions != 1) continue;
          // p[0]=N, p[2]=E, p[4]=S, p[6]=W
          if (phase == 0) {
            if (p[0] * p[2] * p[4] != 0) continue;
            if (p[2] * p[4] * p[6] != 0) continue;
          } else {
            if (p[0] * p[2] * p[6] != 0) continue;
            if (p[0] * p[4] * p[6] != 0) continue;
          }
          doomed.emplace_back(r, c);
        }
      }
      for (const auto& [r, c] : doomed) skel.set(r, c, 0);
      if (!doomed.empty()) changed = true;
    }
  }
  return skel;
}

namespace {

struct PixelKey {
  int r, c;
  bool operator<(const PixelKey& o) const { return r != o.r ? r < o.r : c < o.c; }
  bool operator==(const PixelKey& o) const { return r == o.r && c == o.c; }
};

struct WorkEdge {
  int a, b;
  std::vector<Point2> geom;
  double length;
  bool alive = true;
};

double chain_length(const std::vector<Point2>& pts) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    len += std::hypot(pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y);
  }
  return len;
}

std::vector<Point2> dedup(std::vector<Point2> pts) {
  std::vector<Point2> out;
  for (const auto& p : pts) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  return out;
}

}  // namespace

RoadGraph skeleton_to_graph(const RasterMask& skeleton, double prune_px) {
  const RasterMask& m = skeleton;

  auto degree = [&](int r, int c) { return neighbor_count(m, r, c); };
  auto is_node_pixel = [&](int r, int c) {
    const int d = degree(r, c);
    return d == 1 || d >= 3;
  };

  // Junction clusters: 8-connected components of pixels with >= 3
  // neighbors, collapsed to one node at their centroid. Endpoint pixels
  // are singleton nodes.
  std::map<PixelKey, int> node_of_pixel;
  std::vector<Point2> node_coords;
  std::vector<std::vector<PixelKey>> cluster_members;

  for (int r = 0; r < m.height; ++r) {
    for (int c = 0; c < m.width; ++c) {
      if (!m.foreground(r, c) || !is_node_pixel(r, c)) continue;
      if (node_of_pixel.count({r, c})) continue;
      const int id = static_cast<int>(node_coords.size());
      std::vector<PixelKey> members;
      if (degree(r, c) >= 3) {
        // flood fill over junction pixels
        std::vector<PixelKey> stack{{r, c}};
        node_of_pixel[{r, c}] = id;
        while (!stack.empty()) {
          const PixelKey cur = stack.back();
          stack.pop_back();
          members.push_back(cur);
          for (const auto& [dr, dc] : kNeighbors) {
            const PixelKey nk{cur.r + dr, cur.c + dc};
            if (m.foreground(nk.r, nk.c) && degree(nk.r, nk.c) >= 3 &&
                !node_of_pixel.count(nk)) {
              node_of_pixel[nk] = id;
              stack.push_back(nk);
            }
          }
        }
      } else {
        node_of_pixel[{r, c}] = id;
        members.push_back({r, c});
      }
      double sx = 0.0, sy = 0.0;
      for (const auto& k : members) {
        const Point2 p = m.pixel_center(k.r, k.c);
        sx += p.x;
        sy += p.y;
      }
      node_coords.push_back({sx / static_cast<double>(members.size()),
                             sy / static_cast<double>(members.size())});
      cluster_members.push_back(std::move(members));
    }
  }

  std::vector<WorkEdge> edges;
  std::set<std::pair<PixelKey, PixelKey>> direct_pairs;
  std::set<PixelKey> chain_visited;

  auto add_edge = [&](int a, int b, std::vector<Point2> geom) {
    geom = dedup(std::move(geom));
    if (geom.size() < 2) return;
    const double len = chain_length(geom);
    if (!(len > 0.0)) return;
    edges.push_back({a, b, std::move(geom), len, true});
  };

  for (const auto& [start_key, start_node] : node_of_pixel) {
    for (const auto& [dr, dc] : kNeighbors) {
      const PixelKey q{start_key.r + dr, start_key.c + dc};
      if (!m.foreground(q.r, q.c)) continue;

      auto qn = node_of_pixel.find(q);
      if (qn != node_of_pixel.end()) {
        if (qn->second == start_node) continue;  // same cluster
        const PixelKey lo = std::min(start_key, q);
        const PixelKey hi = std::max(start_key, q);
        if (!direct_pairs.insert({lo, hi}).second) continue;
        add_edge(start_node, qn->second,
                 {node_coords[static_cast<std::size_t>(start_node)],
                  m.pixel_center(start_key.r, start_key.c), m.pixel_center(q.r, q.c),
                  node_coords[static_cast<std::size_t>(qn->second)]});
        continue;
      }

      if (chain_visited.count(q)) continue;
      // Walk the degree-2 chain until the next node pixel.
      std::vector<Point2> geom{node_coords[static_cast<std::size_t>(start_node)],
                               m.pixel_center(start_key.r, start_key.c)};
      PixelKey prev = start_key;
      PixelKey cur = q;
      int end_node = -1;
      while (true) {
        chain_visited.insert(cur);
        geom.push_back(m.pixel_center(cur.r, cur.c));
        PixelKey next{-1, -1};
        bool found = false;
        for (const auto& [er, ec] : kNeighbors) {
          const PixelKey cand{cur.r + er, cur.c + ec};
          if (!m.foreground(cand.r, cand.c) || cand == prev) continue;
          next = cand;
          found = true;
          break;
        }
        if (!found) break;  // lone dangling pixel pair, treat as dead end
        auto nn = node_of_pixel.find(next);
        if (nn != node_of_pixel.end()) {
          end_node = nn->second;
          geom.push_back(m.pixel_center(next.r, next.c));
          geom.push_back(node_coords[static_cast<std::size_t>(end_node)]);
          break;
        }
        prev = cur;
        cur = next;
      }
      if (end_node >= 0) add_edge(start_node, end_node, std::move(geom));
    }
  }

  // Pure cycles have no node pixels; anchor each at its smallest pixel.
  for (int r = 0; r < m.height; ++r) {
    for (int c = 0; c < m.width; ++c) {
      const PixelKey k{r, c};
      if (!m.foreground(r, c) || degree(r, c) != 2 || chain_visited.count(k) ||
          node_of_pixel.count(k)) {
        continue;
      }
      const int id = static_cast<int>(node_coords.size());
      node_coords.push_back(m.pixel_center(r, c));
      chain_visited.insert(k);
      std::vector<Point2> geom{m.pixel_center(r, c)};
      PixelKey prev = k;
      PixelKey cur{-1, -1};
      for (const auto& [dr, dc] : kNeighbors) {
        const PixelKey cand{r + dr, c + dc};
        if (m.foreground(cand.r, cand.c)) {
          cur = cand;
          break;
        }
      }
      while (!(cur == k)) {
        chain_visited.insert(cur);
        geom.push_back(m.pixel_center(cur.r, cur.c));
        PixelKey next{-1, -1};
        for (const auto& [dr, dc] : kNeighbors) {
          const PixelKey cand{cur.r + dr, cur.c + dc};
          if (m.foreground(cand.r, cand.c) && !(cand == prev)) {
            next = cand;
            break;
          }
        }
        if (next.r < 0) break;  // malformed cycle, stop the walk
        prev = cur;
        cur = next;
      }
      geom.push_back(m.pixel_center(r, c));
      add_edge(id, id, std::move(geom));
    }
  }

  // Spur pruning: drop short dangling edges, then absorb the degree-2
  // joints this leaves behind.
  const double prune_len = prune_px * m.transform.pixel_size;
  auto incident = [&](int node) {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      const auto& we = edges[static_cast<std::size_t>(e)];
      if (we.alive && (we.a == node || we.b == node)) out.push_back(e);
    }
    return out;
  };

  bool pruned = true;
  while (pruned) {
    pruned = false;
    std::vector<int> deg(node_coords.size(), 0);
    for (const auto& e : edges) {
      if (!e.alive) continue;
      ++deg[static_cast<std::size_t>(e.a)];
      if (e.b != e.a) ++deg[static_cast<std::size_t>(e.b)];
    }
    for (auto& e : edges) {
      if (!e.alive || e.a == e.b || e.length >= prune_len) continue;
      if (deg[static_cast<std::size_t>(e.a)] == 1 || deg[static_cast<std::size_t>(e.b)] == 1) {
        e.alive = false;
        pruned = true;
      }
    }
  }

  bool merged = true;
  while (merged) {
    merged = false;
    for (int n = 0; n < static_cast<int>(node_coords.size()); ++n) {
      const auto inc = incident(n);
      if (inc.size() != 2) continue;
      WorkEdge& e1 = edges[static_cast<std::size_t>(inc[0])];
      WorkEdge& e2 = edges[static_cast<std::size_t>(inc[1])];
      if (e1.a == e1.b || e2.a == e2.b) continue;
      // orient e1 x -> n and e2 n -> y
      std::vector<Point2> g1 = e1.geom;
      int x = e1.a == n ? e1.b : e1.a;
      if (e1.b != n) std::reverse(g1.begin(), g1.end());
      std::vector<Point2> g2 = e2.geom;
      int y = e2.a == n ? e2.b : e2.a;
      if (e2.a != n) std::reverse(g2.begin(), g2.end());
      g1.insert(g1.end(), g2.begin(), g2.end());
      e2.alive = false;
      e1.a = x;
      e1.b = y;
      e1.geom = dedup(std::move(g1));
      e1.length = chain_length(e1.geom);
      merged = true;
    }
  }

  std::vector<detail::RawEdge> raw;
  for (auto& e : edges) {
    if (!e.alive) continue;
    raw.push_back({e.a, e.b, std::move(e.geom)});
  }
  return detail::assemble(node_coords, std::move(raw));
}

PixelMetrics pixel_metrics(const RasterMask& truth, const RasterMask& proposal,
                           int relax_radius) {
  if (truth.width != proposal.width || truth.height != proposal.height) {
    throw ValidationError("mask dimensions differ");
  }
  if (relax_radius < 0) throw ConfigError("negative relax radius");

  long t_count = 0, p_count = 0, inter = 0;
  for (std::size_t i = 0; i < truth.data.size(); ++i) {
    const bool t = truth.data[i] != 0;
    const bool p = proposal.data[i] != 0;
    t_count += t;
    p_count += p;
    inter += (t && p);
  }

  PixelMetrics out;
  if (t_count == 0 && p_count == 0) {
    out.iou = out.f1 = out.relaxed_f1 = 1.0;  // two empty masks are identical
    return out;
  }

  const long uni = t_count + p_count - inter;
  out.iou = uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
  const double precision = p_count > 0 ? static_cast<double>(inter) / p_count : 0.0;
  const double recall = t_count > 0 ? static_cast<double>(inter) / t_count : 0.0;
  out.f1 = (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;

  const auto offs = disk_offsets(relax_radius);
  const RasterMask truth_dilated = dilate(truth, offs);
  const RasterMask proposal_dilated = dilate(proposal, offs);
  long relaxed_tp_p = 0;  // proposal pixels near truth
  long relaxed_tp_t = 0;  // truth pixels near proposal
  for (std::size_t i = 0; i < truth.data.size(); ++i) {
    if (proposal.data[i] != 0 && truth_dilated.data[i] != 0) ++relaxed_tp_p;
    if (truth.data[i] != 0 && proposal_dilated.data[i] != 0) ++relaxed_tp_t;
  }
  const double rprec = p_count > 0 ? static_cast<double>(relaxed_tp_p) / p_count : 0.0;
  const double rrec = t_count > 0 ? static_cast<double>(relaxed_tp_t) / t_count : 0.0;
  out.relaxed_f1 = (rprec + rrec) > 0.0 ? 2.0 * rprec * rrec / (rprec + rrec) : 0.0;
  return out;
}

}  // namespace geoscore
