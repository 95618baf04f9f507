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
#include <vector>

#include "common/geometry.hpp"

namespace mapsynth {

/// Exact squared Euclidean distance transform (Felzenszwalb-Huttenlocher).
/// `foreground` is row-major, width*height; the result holds, per pixel, the
/// squared distance to the nearest background pixel (0 on background). With
/// no background at all every entry is +inf.
std::vector<double> squared_edt(std::span<const unsigned char> foreground, int width, int height);

/// Maximum over F of the distance to the nearest background pixel of the
/// width x height image. Throws Error(Domain) when F is empty or fills its
/// padded bounding box entirely.
double local_height(std::span<const Pixel> foreground, int width, int height);

}  // namespace mapsynth
