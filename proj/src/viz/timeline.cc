// Copyright 2026 The TCN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// SPDX-License-Identifier: Apache-2.0

#include "tcn/viz/timeline.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <sstream>

#include "tcn/error.h"
#include "tcn/metrics/metrics.h"

namespace tcn::viz {
namespace {

// Tableau-style categorical palette.
constexpr std::array<std::string_view, 12> kPalette = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#8c564b"};

constexpr double kPlotWidth = 960.0;
constexpr int kTitleWidth = 140;
constexpr int kRowHeight = 28;
constexpr int kRowGap = 8;
constexpr int kMargin = 10;

size_t CheckRows(std::span<const TimelineRow> rows) {
  if (rows.empty()) throw ConfigError("timeline needs at least one row");
  const size_t frames = rows[0].labels.size();
  if (frames == 0) throw DataError("timeline row '" + rows[0].title + "' is empty");
  for (const auto& row : rows) {
    if (row.labels.size() != frames) {
      throw DataError("timeline row '" + row.title + "' has " +
                      std::to_string(row.labels.size()) + " frames, '" +
                      rows[0].title + "' has " + std::to_string(frames));
    }
  }
  return frames;
}

std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string ClassName(int id, const std::vector<std::string>& names) {
  if (id >= 0 && static_cast<size_t>(id) < names.size()) return names[id];
  return std::to_string(id);
}

std::set<int> ClassesOf(std::span<const TimelineRow> rows) {
  std::set<int> classes;
  for (const auto& row : rows) classes.insert(row.labels.begin(), row.labels.end());
  return classes;
}

}  // namespace

std::string_view ClassColor(int class_id) {
  const auto n = static_cast<int>(kPalette.size());
  return kPalette[((class_id % n) + n) % n];
}

char ClassGlyph(int class_id) {
  static constexpr std::string_view kGlyphs =
      "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  if (class_id < 0 || static_cast<size_t>(class_id) >= kGlyphs.size()) {
    return '?';
  }
  return kGlyphs[class_id];
}

std::string RenderTimelineSvg(std::span<const TimelineRow> rows,
                              const std::vector<std::string>& class_names) {
  const size_t frames = CheckRows(rows);
  const double scale = kPlotWidth / static_cast<double>(frames);
  const auto classes = ClassesOf(rows);
  const int legend_y =
      kMargin + static_cast<int>(rows.size()) * (kRowHeight + kRowGap);
  const int width = kMargin * 2 + kTitleWidth + static_cast<int>(kPlotWidth);
  const int height = legend_y + 20 + kMargin;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (size_t r = 0; r < rows.size(); ++r) {
    const int y = kMargin + static_cast<int>(r) * (kRowHeight + kRowGap);
    out << "  <g class=\"row\" data-title=\"" << Escape(rows[r].title)
        << "\">\n";
    out << "    <text x=\"" << kMargin << "\" y=\"" << y + kRowHeight / 2 + 4
        << "\">" << Escape(rows[r].title) << "</text>\n";
    for (const auto& seg : metrics::LabelsToSegments(rows[r].labels)) {
      const double x0 = kMargin + kTitleWidth + scale * seg.start;
      const double x1 = kMargin + kTitleWidth + scale * seg.end;
      out << "    <rect x=\"" << Fixed(x0) << "\" y=\"" << y << "\" width=\""
          << Fixed(x1 - x0) << "\" height=\"" << kRowHeight << "\" fill=\""
          << ClassColor(seg.class_id) << "\" data-class=\"" << seg.class_id
          << "\" data-start=\"" << seg.start << "\" data-end=\"" << seg.end
          << "\"/>\n";
    }
    out << "  </g>\n";
  }
  int x = kMargin + kTitleWidth;
  out << "  <g class=\"legend\">\n";
  for (int id : classes) {
    out << "    <rect x=\"" << x << "\" y=\"" << legend_y
        << "\" width=\"12\" height=\"12\" fill=\"" << ClassColor(id)
        << "\"/>\n";
    const std::string name = Escape(ClassName(id, class_names));
    out << "    <text x=\"" << x + 16 << "\" y=\"" << legend_y + 11 << "\">"
        << name << "</text>\n";
    x += 28 + 7 * static_cast<int>(name.size());
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

std::string RenderTimelineText(std::span<const TimelineRow> rows,
                               const std::vector<std::string>& class_names) {
  CheckRows(rows);
  size_t title_width = 0;
  for (const auto& row : rows) {
    title_width = std::max(title_width, row.title.size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    out << row.title << std::string(title_width - row.title.size() + 1, ' ')
        << '|';
    for (int label : row.labels) out << ClassGlyph(label);
    out << "|\n";
  }
  out << "legend:";
  for (int id : ClassesOf(rows)) {
    out << ' ' << ClassGlyph(id) << '=' << ClassName(id, class_names);
  }
  out << '\n';
  return out.str();
}

}  // namespace tcn::viz
