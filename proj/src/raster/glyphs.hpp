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
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace mapsynth {

/// Hard-edged glyph raster. Pixel (i, j) covers the glyph-local square whose
/// top-left corner is (left + i, top + j); glyph-local coordinates have the
/// pen origin on the baseline, x to the right and y pointing down.
struct GlyphBitmap {
  int width = 0;
  int height = 0;
  int left = 0;
  int top = 0;
  std::vector<std::uint8_t> mask;

  bool at(int i, int j) const { return mask[static_cast<std::size_t>(j) * width + i] != 0; }
  bool empty() const { return width == 0 || height == 0; }
};

/// Distances above/below the baseline, in pixels.
struct FontMetrics {
  double ascent = 0.0;
  double descent = 0.0;
};

/// Source of glyph rasters and advances. Implementations are deterministic and
/// safe to call concurrently.
class GlyphProvider {
 public:
  virtual ~GlyphProvider() = default;

  virtual bool has_glyph(char32_t cp, int font_id) const = 0;
  virtual double advance(char32_t cp, int font_id, double size_px) const = 0;
  virtual FontMetrics metrics(int font_id, double size_px) const = 0;
  /// Missing glyphs rasterize as a "tofu" box.
  virtual GlyphBitmap rasterize(char32_t cp, int font_id, double size_px) const = 0;
  /// Identifies the font set (recorded in dataset manifests).
  virtual std::string fingerprint() const = 0;
};

/// Deterministic single-stroke font bundled with the library. Covers ASCII
/// letters (lowercase as small capitals), digits and common punctuation.
/// The 16 font ids select stroke weight, slant and width.
class BuiltinStrokeFont final : public GlyphProvider {
 public:
  BuiltinStrokeFont();
  ~BuiltinStrokeFont() override;

  bool has_glyph(char32_t cp, int font_id) const override;
  double advance(char32_t cp, int font_id, double size_px) const override;
  FontMetrics metrics(int font_id, double size_px) const override;
  GlyphBitmap rasterize(char32_t cp, int font_id, double size_px) const override;
  std::string fingerprint() const override { return "builtin-stroke-v1"; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reads a font set configuration: one font file path per line, exactly 16
/// entries (blank lines and '#' comments ignored). Relative paths resolve
/// against the config file's directory.
std::vector<std::filesystem::path> read_font_config(const std::filesystem::path& path);

bool font_files_supported();

/// Rasterizes TrueType/OpenType files from a 16-entry font set. Throws
/// Error(Io) when a file cannot be loaded and Error(Argument) when font file
/// support is not compiled in.
std::unique_ptr<GlyphProvider> load_font_files(const std::vector<std::filesystem::path>& fonts);

}  // namespace mapsynth
