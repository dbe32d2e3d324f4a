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

#ifndef TCN_VIZ_TIMELINE_H_
#define TCN_VIZ_TIMELINE_H_

// Stacked per-frame label timelines (ground truth on top, one row per
// prediction), rendered as a static SVG or as plain text. Output depends only
// on the inputs, byte for byte.

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcn::viz {

struct TimelineRow {
  std::string title;
  std::vector<int> labels;
};

// Fixed palette, indexed by class id modulo its size.
std::string_view ClassColor(int class_id);
// '0'-'9', 'a'-'z', 'A'-'Z' for ids 0..61, '?' otherwise.
char ClassGlyph(int class_id);

// One <rect> per segment (maximal run of equal labels) in every row, plus a
// title per row and a legend. Throws DataError when rows differ in length or
// are empty; ConfigError when there are no rows.
std::string RenderTimelineSvg(std::span<const TimelineRow> rows,
                              const std::vector<std::string>& class_names = {});

// One line per row: the title padded to a common width, then one glyph per
// frame.
std::string RenderTimelineText(
    std::span<const TimelineRow> rows,
    const std::vector<std::string>& class_names = {});

}  // namespace tcn::viz

#endif  // TCN_VIZ_TIMELINE_H_
