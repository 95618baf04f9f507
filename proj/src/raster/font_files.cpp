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

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "common/error.hpp"
#include "common/text.hpp"
#include "raster/glyphs.hpp"

#ifdef MAPSYNTH_HAVE_OPENCV_FREETYPE
#include <opencv2/core.hpp>
#include <opencv2/freetype.hpp>
#endif

namespace mapsynth {

#ifdef MAPSYNTH_HAVE_OPENCV_FREETYPE

namespace {

// Glyphs are rendered one at a time with cv::freetype, which reports ink
// extents rather than advances. The advance of c is recovered as
// width("HcH") - width("HH").
class FontFileProvider final : public GlyphProvider {
 public:
  explicit FontFileProvider(const std::vector<std::filesystem::path>& fonts) {
    std::uint64_t h = fnv1a64("fontfiles");
    for (const auto& path : fonts) {
      auto ft = cv::freetype::createFreeType2();
      try {
        ft->loadFontData(path.string(), 0);
      } catch (const cv::Exception& e) {
        throw Error(ErrorCode::Io, "cannot load font " + path.string());
      }
      faces_.push_back(ft);
      h = fnv1a64(path.filename().string(), h);
    }
    fingerprint_ = "fontfiles-" + hex64(h);
  }

  bool has_glyph(char32_t cp, int) const override { return cp >= 0x20; }

  double advance(char32_t cp, int font_id, double size_px) const override {
    std::lock_guard guard(mu_);
    const int size = pixel_size(size_px);
    const auto key = std::make_tuple(cp, font_id, size);
    if (auto it = advances_.find(key); it != advances_.end()) return it->second;
    auto& ft = face(font_id);
    int base = 0;
    const std::string c = encode_utf8(cp);
    const int with = ft->getTextSize("H" + c + "H", size, -1, &base).width;
    const int without = ft->getTextSize("HH", size, -1, &base).width;
    const double adv = std::max(0, with - without);
    advances_.emplace(key, adv);
    return adv;
  }

  FontMetrics metrics(int font_id, double size_px) const override {
    std::lock_guard guard(mu_);
    const int size = pixel_size(size_px);
    const GlyphBitmap probe = render_locked("Hgjy(", font_id, size);
    return {static_cast<double>(-probe.top), static_cast<double>(probe.top + probe.height)};
  }

  GlyphBitmap rasterize(char32_t cp, int font_id, double size_px) const override {
    std::lock_guard guard(mu_);
    const int size = pixel_size(size_px);
    const auto key = std::make_tuple(cp, font_id, size);
    if (auto it = bitmaps_.find(key); it != bitmaps_.end()) return it->second;
    GlyphBitmap bmp = render_locked(encode_utf8(cp), font_id, size);
    bitmaps_.emplace(key, bmp);
    return bmp;
  }

  std::string fingerprint() const override { return fingerprint_; }

 private:
  static int pixel_size(double size_px) { return std::max(1, static_cast<int>(std::lround(size_px))); }

  const cv::Ptr<cv::freetype::FreeType2>& face(int font_id) const {
    return faces_[static_cast<std::size_t>(((font_id % 16) + 16) % 16) % faces_.size()];
  }

  GlyphBitmap render_locked(const std::string& text, int font_id, int size) const {
    const int pad = size;
    const int w = size * static_cast<int>(text.size() + 2) + 2 * pad;
    const int h = 3 * size + 2 * pad;
    const int ox = pad, oy = pad + 2 * size;
    cv::Mat canvas(h, w, CV_8UC3, cv::Scalar(0, 0, 0));
    face(font_id)->putText(canvas, text, cv::Point(ox, oy), size, cv::Scalar(255, 255, 255), -1, 8, true);
    int x0 = w, y0 = h, x1 = -1, y1 = -1;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (canvas.at<cv::Vec3b>(y, x)[0] > 127) {
          x0 = std::min(x0, x);
          y0 = std::min(y0, y);
          x1 = std::max(x1, x);
          y1 = std::max(y1, y);
        }
    GlyphBitmap bmp;
    if (x1 < 0) return bmp;
    bmp.left = x0 - ox;
    bmp.top = y0 - oy;
    bmp.width = x1 - x0 + 1;
    bmp.height = y1 - y0 + 1;
    bmp.mask.assign(static_cast<std::size_t>(bmp.width) * bmp.height, 0);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        if (canvas.at<cv::Vec3b>(y, x)[0] > 127)
          bmp.mask[static_cast<std::size_t>(y - y0) * bmp.width + (x - x0)] = 1;
    return bmp;
  }

  std::vector<cv::Ptr<cv::freetype::FreeType2>> faces_;
  std::string fingerprint_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<char32_t, int, int>, double> advances_;
  mutable std::map<std::tuple<char32_t, int, int>, GlyphBitmap> bitmaps_;
};

}  // namespace

bool font_files_supported() { return true; }

std::unique_ptr<GlyphProvider> load_font_files(const std::vector<std::filesystem::path>& fonts) {
  if (fonts.empty()) throw Error(ErrorCode::Argument, "empty font set");
  return std::make_unique<FontFileProvider>(fonts);
}

#else

bool font_files_supported() { return false; }

std::unique_ptr<GlyphProvider> load_font_files(const std::vector<std::filesystem::path>&) {
  throw Error(ErrorCode::Argument, "this build has no font file support; use the built-in font");
}

#endif

}  // namespace mapsynth
