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

#include <span>

#include "common/geometry.hpp"

namespace mapsynth {

/// Whether the ring is a valid simple polygon for exact clipping.
bool clippable(std::span<const Point> ring);

/// Area of the intersection of two simple polygons (either orientation).
double intersection_area(std::span<const Point> a, std::span<const Point> b);

/// Area of the even-odd filled region, estimated on a sample grid with
/// `samples` cells along the longer bounding-box side.
double even_odd_area(std::span<const Point> ring, int samples = 512);

/// Even-odd intersection area on a sample grid over the overlap of both
/// bounding boxes. Used when a polygon is not clippable.
double even_odd_intersection_area(std::span<const Point> a, std::span<const Point> b, int samples = 512);

bool even_odd_contains(std::span<const Point> ring, Point p);

}  // namespace mapsynth
