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

#include "metrics/wolf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "common/error.hpp"
#include "common/text.hpp"
#include "metrics/clipping.hpp"

namespace mapsynth {

void validate(const EvalConfig& cfg) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(cfg.t_r) || !in_unit(cfg.t_p) || !in_unit(cfg.k))
    throw Error(ErrorCode::Argument, "t_r, t_p and k must lie in [0, 1]");
}

MatchMatrices build_matrices(std::span<const Ring> gt, std::span<const Ring> det) {
  MatchMatrices m;
  m.rows = gt.size();
  m.cols = det.size();
  m.sigma.assign(m.rows * m.cols, 0.0);
  m.tau.assign(m.rows * m.cols, 0.0);
  m.overlap.assign(m.rows * m.cols, 0.0);

  auto prepare = [](std::span<const Ring> polys, const char* what, std::vector<double>& area,
                    std::vector<bool>& exact) {
    for (std::size_t i = 0; i < polys.size(); ++i) {
      const bool ok = clippable(polys[i]);
      const double a = polys[i].size() < 3 ? 0.0 : (ok ? polygon_area(polys[i]) : even_odd_area(polys[i]));
      if (!(a > 0)) throw Error(ErrorCode::Domain, std::string(what) + " polygon " + std::to_string(i) + " has zero area");
      area.push_back(a);
      exact.push_back(ok);
    }
  };
  std::vector<double> area_g, area_d;
  std::vector<bool> exact_g, exact_d;
  prepare(gt, "ground truth", area_g, exact_g);
  prepare(det, "detection", area_d, exact_d);

  std::vector<Box> box_d;
  for (const Ring& d : det) box_d.push_back(bounding_box(d));
  for (std::size_t i = 0; i < m.rows; ++i) {
    const Box bg = bounding_box(gt[i]);
    for (std::size_t j = 0; j < m.cols; ++j) {
      const Box& bd = box_d[j];
      if (bg.max_x <= bd.min_x || bd.max_x <= bg.min_x || bg.max_y <= bd.min_y || bd.max_y <= bg.min_y) continue;
      double inter;
      if (exact_g[i] && exact_d[j]) {
        inter = intersection_area(gt[i], det[j]);
      } else {
        inter = even_odd_intersection_area(gt[i], det[j]);
        m.rasterized = true;
      }
      const std::size_t c = i * m.cols + j;
      m.overlap[c] = inter;
      m.sigma[c] = std::clamp(inter / area_g[i], 0.0, 1.0);
      m.tau[c] = std::clamp(inter / area_d[j], 0.0, 1.0);
    }
  }
  return m;
}

const char* to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::None: return "none";
    case MatchKind::OneToOne: return "one-to-one";
    case MatchKind::Split: return "split";
    case MatchKind::Merge: return "merge";
    case MatchKind::SplitMember: return "split-member";
    case MatchKind::MergeMember: return "merge-member";
  }
  return "?";
}

MatchClassification classify_matches(const MatchMatrices& m, const EvalConfig& cfg) {
  const std::size_t ng = m.rows, nd = m.cols;
  MatchClassification out;
  out.gt.resize(ng);
  out.det.resize(nd);

  auto cond = [&](std::size_t i, std::size_t j) {
    return m.o(i, j) > 0 && m.s(i, j) >= cfg.t_r && m.t(i, j) >= cfg.t_p;
  };
  std::vector<int> row_hits(ng, 0), col_hits(nd, 0);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < nd; ++j)
      if (cond(i, j)) {
        ++row_hits[i];
        ++col_hits[j];
      }
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < nd; ++j)
      if (cond(i, j) && row_hits[i] == 1 && col_hits[j] == 1) {
        out.gt[i] = {MatchKind::OneToOne, {static_cast<int>(j)}};
        out.det[j] = {MatchKind::OneToOne, {static_cast<int>(i)}};
      }

  // Split and merge sets are computed over all items, matched or not, so that
  // raising a threshold can never turn a non-match into a match.
  std::vector<std::vector<int>> split_of(ng), merge_of(nd);
  for (std::size_t i = 0; i < ng; ++i) {
    std::vector<int> s_o;
    double sum = 0;
    for (std::size_t j = 0; j < nd; ++j)
      if (m.o(i, j) > 0 && m.t(i, j) >= cfg.t_p) {
        s_o.push_back(static_cast<int>(j));
        sum += m.s(i, j);
      }
    if (s_o.size() >= 2 && sum >= cfg.t_r) split_of[i] = std::move(s_o);
  }
  for (std::size_t j = 0; j < nd; ++j) {
    std::vector<int> s_m;
    double sum = 0;
    for (std::size_t i = 0; i < ng; ++i)
      if (m.o(i, j) > 0 && m.s(i, j) >= cfg.t_r) {
        s_m.push_back(static_cast<int>(i));
        sum += m.t(i, j);
      }
    if (s_m.size() >= 2 && sum >= cfg.t_p) merge_of[j] = std::move(s_m);
  }

  for (std::size_t i = 0; i < ng; ++i) {
    if (out.gt[i].kind != MatchKind::None) continue;
    if (!split_of[i].empty()) {
      out.gt[i] = {MatchKind::Split, split_of[i]};
      continue;
    }
    std::vector<int> via;
    for (std::size_t j = 0; j < nd; ++j)
      if (std::find(merge_of[j].begin(), merge_of[j].end(), static_cast<int>(i)) != merge_of[j].end())
        via.push_back(static_cast<int>(j));
    if (!via.empty()) out.gt[i] = {MatchKind::MergeMember, via};
  }
  for (std::size_t j = 0; j < nd; ++j) {
    if (out.det[j].kind != MatchKind::None) continue;
    if (!merge_of[j].empty()) {
      out.det[j] = {MatchKind::Merge, merge_of[j]};
      continue;
    }
    std::vector<int> via;  // ascending, so via.front() is the lowest ground-truth index
    for (std::size_t i = 0; i < ng; ++i)
      if (std::find(split_of[i].begin(), split_of[i].end(), static_cast<int>(j)) != split_of[i].end())
        via.push_back(static_cast<int>(i));
    if (!via.empty()) out.det[j] = {MatchKind::SplitMember, via};
  }
  return out;
}

double f1_of(double precision, double recall) {
  return precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

namespace {

double match_value(MatchKind kind, double k) {
  switch (kind) {
    case MatchKind::OneToOne:
    case MatchKind::SplitMember:
    case MatchKind::MergeMember: return 1.0;
    case MatchKind::Split:
    case MatchKind::Merge: return k;
    case MatchKind::None: return 0.0;
  }
  return 0.0;
}

}  // namespace

Score score(const MatchMatrices& m, const EvalConfig& cfg) {
  validate(cfg);
  const MatchClassification c = classify_matches(m, cfg);
  Score s;
  double sum_g = 0, sum_d = 0;
  for (const Assignment& a : c.gt) {
    sum_g += match_value(a.kind, cfg.k);
    if (a.kind == MatchKind::OneToOne) ++s.counts.one_to_one;
    if (a.kind == MatchKind::Split) ++s.counts.splits;
  }
  for (const Assignment& a : c.det) {
    sum_d += match_value(a.kind, cfg.k);
    if (a.kind == MatchKind::Merge) ++s.counts.merges;
  }
  if (m.rows > 0) s.recall = sum_g / static_cast<double>(m.rows);
  if (m.cols > 0) s.precision = sum_d / static_cast<double>(m.cols);
  if (s.recall || s.precision) s.f1 = f1_of(s.precision.value_or(0.0), s.recall.value_or(0.0));
  return s;
}

Score score(std::span<const Ring> gt, std::span<const Ring> det, const EvalConfig& cfg) {
  return score(build_matrices(gt, det), cfg);
}

SweepTable sweep(std::span<const MatchMatrices> images, std::span<const double> t_r, std::span<const double> t_p,
                 double k) {
  if (t_r.empty() || t_p.empty()) throw Error(ErrorCode::Argument, "sweep grids must be non-empty");
  SweepTable table;
  table.t_r.assign(t_r.begin(), t_r.end());
  table.t_p.assign(t_p.begin(), t_p.end());
  table.f1.assign(t_r.size() * t_p.size(), 0.0);
  for (std::size_t r = 0; r < t_r.size(); ++r)
    for (std::size_t c = 0; c < t_p.size(); ++c) {
      const EvalConfig cfg{t_r[r], t_p[c], k};
      double sum = 0;
      std::size_t n = 0;
      for (const MatchMatrices& m : images) {
        const Score s = score(m, cfg);
        if (!s.f1) continue;
        sum += *s.f1;
        ++n;
      }
      table.f1[r * t_p.size() + c] = n ? sum / static_cast<double>(n) : 0.0;
    }
  return table;
}

SweepTable sweep(const MatchMatrices& m, std::span<const double> t_r, std::span<const double> t_p, double k) {
  return sweep(std::span<const MatchMatrices>(&m, 1), t_r, t_p, k);
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Argument, "bad grid '" + spec + "', expected lo:hi:step");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0])
    throw Error(ErrorCode::Argument, "bad grid '" + spec + "', expected lo:hi:step");
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((parts[1] - parts[0]) / parts[2] + 0.5));
  for (int i = 0; i <= n; ++i) out.push_back(std::round((parts[0] + i * parts[2]) * 1e9) / 1e9);
  for (double v : out)
    if (v < 0 || v > 1) throw Error(ErrorCode::Argument, "grid values must lie in [0, 1]");
  return out;
}

namespace {

SummaryRow summarize(const std::string& id, const std::vector<const ImageScore*>& rows) {
  SummaryRow out;
  out.id = id;
  out.images = rows.size();
  auto mean = [&](auto field) -> std::optional<double> {
    double sum = 0;
    std::size_t n = 0;
    for (const ImageScore* r : rows)
      if (auto v = field(r->score)) {
        sum += *v;
        ++n;
      }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  };
  out.precision = mean([](const Score& s) { return s.precision; });
  out.recall = mean([](const Score& s) { return s.recall; });
  out.f1 = mean([](const Score& s) { return s.f1; });
  for (const ImageScore* r : rows) {
    out.counts.one_to_one += r->score.counts.one_to_one;
    out.counts.splits += r->score.counts.splits;
    out.counts.merges += r->score.counts.merges;
  }
  return out;
}

std::string cell(const std::optional<double>& v) { return v ? format_fixed(*v, 6) : "NA"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

EvalReport aggregate(std::vector<ImageScore> per_image, const std::map<std::string, std::string>& grouping) {
  if (per_image.empty()) throw Error(ErrorCode::Argument, "aggregate: no images");
  EvalReport report;
  report.images = std::move(per_image);
  std::map<std::string, std::vector<const ImageScore*>> groups;
  std::vector<const ImageScore*> all;
  for (const ImageScore& s : report.images) {
    auto it = grouping.find(s.image_id);
    groups[it == grouping.end() ? std::string(kUnassignedSeries) : it->second].push_back(&s);
    all.push_back(&s);
  }
  for (const auto& [id, rows] : groups) report.series.push_back(summarize(id, rows));
  report.all = summarize("All", all);
  return report;
}

std::string report_csv(const EvalReport& report) {
  std::string out = "scope,id,images,precision,recall,f1,one_to_one,splits,merges\n";
  auto row = [&](const char* scope, const std::string& id, std::size_t images, const std::optional<double>& p,
                 const std::optional<double>& r, const std::optional<double>& f, const MatchCounts& c) {
    out += std::string(scope) + "," + csv_field(id) + "," + std::to_string(images) + "," + cell(p) + "," + cell(r) +
           "," + cell(f) + "," + std::to_string(c.one_to_one) + "," + std::to_string(c.splits) + "," +
           std::to_string(c.merges) + "\n";
  };
  for (const ImageScore& s : report.images)
    row("image", s.image_id, 1, s.score.precision, s.score.recall, s.score.f1, s.score.counts);
  for (const SummaryRow& s : report.series) row("series", s.id, s.images, s.precision, s.recall, s.f1, s.counts);
  row("all", "All", report.all.images, report.all.precision, report.all.recall, report.all.f1, report.all.counts);
  return out;
}

std::string sweep_csv(const SweepTable& table) {
  std::string out = "t_r\\t_p";
  for (double c : table.t_p) out += "," + format_fixed(c, 2);
  out += "\n";
  for (std::size_t r = 0; r < table.t_r.size(); ++r) {
    out += format_fixed(table.t_r[r], 2);
    for (std::size_t c = 0; c < table.t_p.size(); ++c) out += "," + format_fixed(table.at(r, c), 6);
    out += "\n";
  }
  return out;
}

}  // namespace mapsynth
