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

#include "annotate/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/error.hpp"

namespace mapsynth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D lower envelope of parabolas rooted at (q, f[q]).
void edt_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    while (k >= 0) {
      const int p = v[k];
      const double s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = k == 0 ? -kInf : ((f[q] + double(q) * q) - (f[v[k - 1]] + double(v[k - 1]) * v[k - 1])) /
                                (2.0 * (q - v[k - 1]));
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d, d + n, kInf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double dq = q - v[j];
    d[q] = dq * dq + f[v[j]];
  }
}

}  // namespace

std::vector<double> squared_edt(std::span<const unsigned char> foreground, int width, int height) {
  if (width <= 0 || height <= 0 || foreground.size() != static_cast<std::size_t>(width) * height)
    throw Error(ErrorCode::Argument, "squared_edt: mask size mismatch");
  const int n = std::max(width, height);
  std::vector<double> grid(foreground.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = foreground[i] ? kInf : 0.0;

  std::vector<int> v(n);
  std::vector<double> z(n + 1), f(n), d(n);
  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < height; ++y) f[y] = grid[static_cast<std::size_t>(y) * width + x];
    edt_1d(f.data(), d.data(), height, v, z);
    for (int y = 0; y < height; ++y) grid[static_cast<std::size_t>(y) * width + x] = d[y];
  }
  for (int y = 0; y < height; ++y) {
    double* row = grid.data() + static_cast<std::size_t>(y) * width;
    std::copy(row, row + width, f.begin());
    edt_1d(f.data(), row, width, v, z);
  }
  return grid;
}

double local_height(std::span<const Pixel> foreground, int width, int height) {
  if (foreground.empty()) throw Error(ErrorCode::Domain, "local_height: empty foreground");
  int x0 = width, y0 = height, x1 = -1, y1 = -1;
  for (Pixel p : foreground) {
    if (p.x < 0 || p.y < 0 || p.x >= width || p.y >= height)
      throw Error(ErrorCode::Argument, "local_height: pixel outside the image");
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  // One pixel of padding suffices: clamping the true nearest background pixel
  // onto the padded box never moves it farther away.
  x0 = std::max(0, x0 - 1);
  y0 = std::max(0, y0 - 1);
  x1 = std::min(width - 1, x1 + 1);
  y1 = std::min(height - 1, y1 + 1);
  const int w = x1 - x0 + 1, h = y1 - y0 + 1;
  std::vector<unsigned char> mask(static_cast<std::size_t>(w) * h, 0);
  for (Pixel p : foreground) mask[static_cast<std::size_t>(p.y - y0) * w + (p.x - x0)] = 1;
  const std::vector<double> dt = squared_edt(mask, w, h);
  double best = 0;
  for (std::size_t i = 0; i < dt.size(); ++i)
    if (mask[i]) best = std::max(best, dt[i]);
  if (best == kInf) throw Error(ErrorCode::Domain, "local_height: no background pixel");
  return std::sqrt(best);
}

}  // namespace mapsynth
