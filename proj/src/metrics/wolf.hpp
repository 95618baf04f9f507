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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "common/geometry.hpp"

namespace mapsynth {

struct EvalConfig {
  double t_r = 0.5;  // area recall threshold
  double t_p = 0.5;  // area precision threshold
  double k = 1.0;    // weight of split and merge matches
};

void validate(const EvalConfig& cfg);

/// sigma(i,j) = area(G_i & D_j) / area(G_i); tau(i,j) = area(G_i & D_j) / area(D_j).
struct MatchMatrices {
  std::size_t rows = 0;  // |G|
  std::size_t cols = 0;  // |D|
  std::vector<double> sigma;
  std::vector<double> tau;
  std::vector<double> overlap;  // intersection areas
  bool rasterized = false;      // some pair fell back to sampled even-odd areas

  double s(std::size_t i, std::size_t j) const { return sigma[i * cols + j]; }
  double t(std::size_t i, std::size_t j) const { return tau[i * cols + j]; }
  double o(std::size_t i, std::size_t j) const { return overlap[i * cols + j]; }
};

/// Throws Error(Domain) naming the first polygon with zero area.
MatchMatrices build_matrices(std::span<const Ring> gt, std::span<const Ring> det);

enum class MatchKind { None, OneToOne, Split, Merge, SplitMember, MergeMember };

const char* to_string(MatchKind kind);

struct Assignment {
  MatchKind kind = MatchKind::None;
  std::vector<int> partners;  // ascending indices in the other list
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Ground truth views use None, OneToOne, Split and MergeMember; detection
/// views use None, OneToOne, Merge and SplitMember.
struct MatchClassification {
  std::vector<Assignment> gt;
  std::vector<Assignment> det;
  friend bool operator==(const MatchClassification&, const MatchClassification&) = default;
};

MatchClassification classify_matches(const MatchMatrices& m, const EvalConfig& cfg);

struct MatchCounts {
  int one_to_one = 0;
  int splits = 0;  // ground truths detected as several pieces
  int merges = 0;  // detections covering several ground truths
};

/// Recall is absent when there is no ground truth, precision when there are
/// no detections. F1 is absent only when both are; a missing side counts 0.
struct Score {
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> f1;
  MatchCounts counts;
};

double f1_of(double precision, double recall);

Score score(const MatchMatrices& m, const EvalConfig& cfg);
Score score(std::span<const Ring> gt, std::span<const Ring> det, const EvalConfig& cfg = {});

/// F1 table, rows t_r ascending, columns t_p ascending. Missing F1 reads 0.
struct SweepTable {
  std::vector<double> t_r;
  std::vector<double> t_p;
  std::vector<double> f1;  // row-major
  double at(std::size_t r, std::size_t c) const { return f1[r * t_p.size() + c]; }
};

SweepTable sweep(const MatchMatrices& m, std::span<const double> t_r, std::span<const double> t_p, double k = 1.0);

/// Mean per-image F1 per cell over several images (images without an F1 are skipped).
SweepTable sweep(std::span<const MatchMatrices> images, std::span<const double> t_r, std::span<const double> t_p,
                 double k = 1.0);

/// "lo:hi:step" inclusive of hi within half a step.
std::vector<double> parse_grid(const std::string& spec);

struct ImageScore {
  std::string image_id;
  Score score;
};

struct SummaryRow {
  std::string id;
  std::size_t images = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  MatchCounts counts;
};

struct EvalReport {
  std::vector<ImageScore> images;
  std::vector<SummaryRow> series;  // sorted by id
  SummaryRow all;
};

inline constexpr const char* kUnassignedSeries = "unassigned";

/// Arithmetic means of per-image values per series and over all images.
/// Images missing from `grouping` fall into "unassigned".
EvalReport aggregate(std::vector<ImageScore> per_image, const std::map<std::string, std::string>& grouping = {});

std::string report_csv(const EvalReport& report);
std::string sweep_csv(const SweepTable& table);

}  // namespace mapsynth
