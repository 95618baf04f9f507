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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "annotate/centerline.hpp"
#include "annotate/hull.hpp"
#include "common/geometry.hpp"
#include "raster/image.hpp"

namespace mapsynth {

struct AnnotateOptions {
  double alpha = 0.02;
  double interpolation_distance = 9.0;
  double arc_step = 4.0;
};

struct AnnotationFlags {
  bool multi_component = false;
  bool self_intersecting = false;
  bool overflow = false;
  bool degenerate = false;
  friend bool operator==(const AnnotationFlags&, const AnnotationFlags&) = default;
};

struct AnnotationRecord {
  std::uint32_t label_id = 0;
  std::string transcription;
  Ring polygon;  // clockwise
  Centerline centerline;
  double local_height = 0.0;
  AnnotationFlags flags;
};

/// Label identity carried from placement to annotation.
struct LabelInfo {
  std::uint32_t color_index = 0;
  std::string transcription;
  bool overflow = false;
};

/// Opaque pixels whose RGB equals the colour of `color_index`, row-major order.
std::vector<Pixel> extract_label_pixels(const TileImage& colored, std::uint32_t color_index,
                                        const ColorIndexMap& colors = ColorIndexMap{});

/// Distinct colour indices present in a coloured layer, ascending.
std::vector<std::uint32_t> label_indices(const TileImage& colored, const ColorIndexMap& colors = ColorIndexMap{});

/// Pixels whose integer coordinates lie inside or on the polygon, clipped to
/// the image.
std::vector<Pixel> rasterize_polygon(std::span<const Point> ring, int width, int height);

/// Full ground truth for one label's pixels: concave hull, skeleton, fitted
/// centerline clipped to the hull and local height of the filled hull. When
/// the skeleton or the fit fails, the centerline falls back to the hull's
/// principal axis and the record is flagged degenerate.
AnnotationRecord annotate_pixels(std::span<const Pixel> pixels, int width, int height, const AnnotateOptions& opts = {});

/// Annotates every label present in the layer; absent labels are skipped.
std::vector<AnnotationRecord> annotate_layer(const TileImage& colored, std::span<const LabelInfo> labels,
                                             const AnnotateOptions& opts = {},
                                             const ColorIndexMap& colors = ColorIndexMap{});

}  // namespace mapsynth
