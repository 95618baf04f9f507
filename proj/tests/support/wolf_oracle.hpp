// Copyright 2026 The mapsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <vector>

#include "common/geometry.hpp"
#include "metrics/wolf.hpp"
#include "support/fixtures.hpp"

namespace mapsynth::testing {

/// Pixel-count areas on a grid of `cells` x `cells` unit cells, each sampled
/// `sub` x `sub` times with the crossing-number rule.
struct PixelOracle {
  int cells = 64;
  int sub = 4;

  std::vector<unsigned char> raster(const Ring& r) const {
    const int n = cells * sub;
    std::vector<unsigned char> out(static_cast<std::size_t>(n) * n, 0);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        const double px = (x + 0.5) / sub, py = (y + 0.5) / sub;
        bool in = false;
        for (std::size_t i = 0, j = r.size() - 1; i < r.size(); j = i++)
          if ((r[i].y > py) != (r[j].y > py) &&
              px < (r[j].x - r[i].x) * (py - r[i].y) / (r[j].y - r[i].y) + r[i].x)
            in = !in;
        out[static_cast<std::size_t>(y) * n + x] = in;
      }
    return out;
  }

  // Returns sigma/tau in the MatchMatrices layout.
  MatchMatrices matrices(const std::vector<Ring>& g, const std::vector<Ring>& d) const {
    std::vector<std::vector<unsigned char>> rg, rd;
    for (const Ring& r : g) rg.push_back(raster(r));
    for (const Ring& r : d) rd.push_back(raster(r));
    auto count = [](const std::vector<unsigned char>& a) {
      long c = 0;
      for (auto v : a) c += v;
      return c;
    };
    MatchMatrices m;
    m.rows = g.size();
    m.cols = d.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) {
        long both = 0;
        for (std::size_t k = 0; k < rg[i].size(); ++k) both += rg[i][k] && rd[j][k];
        m.overlap.push_back(double(both) / (sub * sub));
        m.sigma.push_back(double(both) / double(count(rg[i])));
        m.tau.push_back(double(both) / double(count(rd[j])));
      }
    return m;
  }
};

/// Match values straight from the definitions, enumerating candidate subsets.
struct OracleResult {
  std::vector<MatchKind> gt, det;
  std::optional<double> recall, precision;
};

inline OracleResult wolf_oracle(const MatchMatrices& m, const EvalConfig& cfg) {
  const int ng = static_cast<int>(m.rows), nd = static_cast<int>(m.cols);
  auto cond = [&](int i, int j) { return m.o(i, j) > 0 && m.s(i, j) >= cfg.t_r && m.t(i, j) >= cfg.t_p; };
  auto one_to_one = [&](int i, int j) {
    if (!cond(i, j)) return false;
    for (int jj = 0; jj < nd; ++jj)
      if (jj != j && cond(i, jj)) return false;
    for (int ii = 0; ii < ng; ++ii)
      if (ii != i && cond(ii, j)) return false;
    return true;
  };
  // Some subset S of size >= 2, every member passing the per-element test,
  // whose summed coverage reaches the threshold.
  auto split_set = [&](int i, unsigned mask) {
    if (__builtin_popcount(mask) < 2) return false;
    double sum = 0;
    for (int j = 0; j < nd; ++j)
      if (mask & (1u << j)) {
        if (!(m.o(i, j) > 0 && m.t(i, j) >= cfg.t_p)) return false;
        sum += m.s(i, j);
      }
    return sum >= cfg.t_r;
  };
  auto merge_set = [&](int j, unsigned mask) {
    if (__builtin_popcount(mask) < 2) return false;
    double sum = 0;
    for (int i = 0; i < ng; ++i)
      if (mask & (1u << i)) {
        if (!(m.o(i, j) > 0 && m.s(i, j) >= cfg.t_r)) return false;
        sum += m.t(i, j);
      }
    return sum >= cfg.t_p;
  };
  auto is_split = [&](int i) {
    for (unsigned mask = 0; mask < (1u << nd); ++mask)
      if (split_set(i, mask)) return true;
    return false;
  };
  auto is_merge = [&](int j) {
    for (unsigned mask = 0; mask < (1u << ng); ++mask)
      if (merge_set(j, mask)) return true;
    return false;
  };
  // j belongs to the maximal split set of i (the union of all valid subsets).
  auto in_split = [&](int i, int j) {
    for (unsigned mask = 0; mask < (1u << nd); ++mask)
      if ((mask & (1u << j)) && split_set(i, mask)) return true;
    return false;
  };
  auto in_merge = [&](int i, int j) {
    for (unsigned mask = 0; mask < (1u << ng); ++mask)
      if ((mask & (1u << i)) && merge_set(j, mask)) return true;
    return false;
  };

  OracleResult out;
  out.gt.assign(ng, MatchKind::None);
  out.det.assign(nd, MatchKind::None);
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < nd; ++j)
      if (one_to_one(i, j)) out.gt[i] = out.det[j] = MatchKind::OneToOne;
  for (int i = 0; i < ng; ++i) {
    if (out.gt[i] != MatchKind::None) continue;
    if (is_split(i)) {
      out.gt[i] = MatchKind::Split;
      continue;
    }
    for (int j = 0; j < nd; ++j)
      if (in_merge(i, j)) out.gt[i] = MatchKind::MergeMember;
  }
  for (int j = 0; j < nd; ++j) {
    if (out.det[j] != MatchKind::None) continue;
    if (is_merge(j)) {
      out.det[j] = MatchKind::Merge;
      continue;
    }
    for (int i = 0; i < ng; ++i)
      if (in_split(i, j)) out.det[j] = MatchKind::SplitMember;
  }
  auto value = [&](MatchKind kind) {
    if (kind == MatchKind::None) return 0.0;
    if (kind == MatchKind::Split || kind == MatchKind::Merge) return cfg.k;
    return 1.0;
  };
  double sg = 0, sd = 0;
  for (MatchKind kind : out.gt) sg += value(kind);
  for (MatchKind kind : out.det) sd += value(kind);
  if (ng) out.recall = sg / ng;
  if (nd) out.precision = sd / nd;
  return out;
}

inline Ring rect(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }

/// Small random scene on a 64x64 raster: rectangles and quadrilaterals as
/// ground truth; detections copy, jitter, split, merge or miss them.
struct Scene {
  std::vector<Ring> gt, det;
};

inline Ring random_quad(Gen& g) {
  const double cx = g.uniform_int(12, 52), cy = g.uniform_int(12, 52);
  const double w = g.uniform_int(8, 22), h = g.uniform_int(6, 16);
  Ring r{{cx - w / 2 + g.uniform_int(-2, 2), cy - h / 2 + g.uniform_int(-2, 2)},
         {cx + w / 2 + g.uniform_int(-2, 2), cy - h / 2 + g.uniform_int(-2, 2)},
         {cx + w / 2 + g.uniform_int(-2, 2), cy + h / 2 + g.uniform_int(-2, 2)},
         {cx - w / 2 + g.uniform_int(-2, 2), cy + h / 2 + g.uniform_int(-2, 2)}};
  for (Point& p : r) {
    p.x = std::clamp(p.x, 0.0, 64.0);
    p.y = std::clamp(p.y, 0.0, 64.0);
  }
  return r;
}

inline Scene random_scene(Gen& g) {
  Scene s;
  const int ng = g.uniform_int(1, 4);
  for (int i = 0; i < ng; ++i) s.gt.push_back(g.coin(0.5) ? random_quad(g) : [&] {
    const double x = g.uniform_int(0, 48), y = g.uniform_int(0, 52);
    return rect(x, y, x + g.uniform_int(8, 16), y + g.uniform_int(6, 12));
  }());
  for (const Ring& r : s.gt) {
    if (s.det.size() >= 4) break;
    const int action = g.uniform_int(0, 4);
    const Box b = bounding_box(r);
    if (action == 0) {
      s.det.push_back(r);
    } else if (action == 1) {
      const double dx = g.uniform_int(-3, 3), dy = g.uniform_int(-3, 3);
      s.det.push_back(rect(std::max(0.0, b.min_x + dx), std::max(0.0, b.min_y + dy), std::min(64.0, b.max_x + dx),
                           std::min(64.0, b.max_y + dy)));
    } else if (action == 2 && s.det.size() + 2 <= 4) {
      const double mid = std::round((b.min_x + b.max_x) / 2);
      s.det.push_back(rect(b.min_x, b.min_y, mid, b.max_y));
      s.det.push_back(rect(mid, b.min_y, b.max_x, b.max_y));
    } else if (action == 3) {
      s.det.push_back(rect(std::max(0.0, b.min_x - 6), b.min_y, std::min(64.0, b.max_x + 14), b.max_y));
    }
  }
  if (s.det.size() < 4 && g.coin(0.3)) s.det.push_back(random_quad(g));
  return s;
}

}  // namespace mapsynth::testing
