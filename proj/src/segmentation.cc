// src/segmentation.cc

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "altscore/segmentation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "altscore/text.h"

namespace altscore {

std::string_view SegmentationModeName(SegmentationMode mode) {
  return mode == SegmentationMode::kSingleSegment ? "single" : "per-segment";
}

namespace {

using ChannelKey = std::pair<std::string, std::string>;

}  // namespace

std::vector<StmSegment> MergeStm(const std::vector<StmSegment> &segments,
                                 std::vector<std::string> *warnings) {
  std::vector<ChannelKey> order;
  std::map<ChannelKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].ignore) continue;
    ChannelKey key{segments[i].recording_id, segments[i].channel};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(i);
  }

  std::vector<StmSegment> merged;
  for (const auto &key : order) {
    auto ids = groups[key];
    std::stable_sort(ids.begin(), ids.end(),
                     [&](std::size_t a, std::size_t b) { return segments[a].start < segments[b].start; });
    StmSegment out = segments[ids.front()];
    out.words.clear();
    double prev_end = segments[ids.front()].start;
    for (std::size_t id : ids) {
      const auto &seg = segments[id];
      if (warnings && seg.start < prev_end) {
        warnings->push_back(key.first + " " + key.second + ": segment [" + FormatSeconds(seg.start) + ", " +
                            FormatSeconds(seg.end) + "] overlaps the previous one; merged in start order");
      }
      prev_end = std::max(prev_end, seg.end);
      out.start = std::min(out.start, seg.start);
      out.end = std::max(out.end, seg.end);
      out.words.insert(out.words.end(), seg.words.begin(), seg.words.end());
    }
    merged.push_back(std::move(out));
  }
  return merged;
}

namespace {

std::optional<double> ItemMidpoint(const CtmItem &item) {
  if (const auto *tok = std::get_if<CtmToken>(&item)) return tok->midpoint();
  const auto *first = std::get<CtmAltBlock>(item).FirstToken();
  if (!first) return std::nullopt;
  return first->midpoint();
}

}  // namespace

SegmentAssignment AssignHypToSegments(const std::vector<CtmItem> &items,
                                      const std::vector<StmSegment> &segments, double slack) {
  SegmentAssignment out;
  out.per_segment.resize(segments.size());

  std::map<ChannelKey, std::vector<std::size_t>> by_channel;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    by_channel[{segments[i].recording_id, segments[i].channel}].push_back(i);
  }
  for (auto &[key, ids] : by_channel) {
    std::stable_sort(ids.begin(), ids.end(),
                     [&](std::size_t a, std::size_t b) { return segments[a].start < segments[b].start; });
  }

  std::map<ChannelKey, std::size_t> last_target;
  for (const auto &item : items) {
    ChannelKey key{RecordingOf(item), ChannelOf(item)};
    auto it = by_channel.find(key);
    if (it == by_channel.end()) {
      out.unassigned.push_back(item);
      continue;
    }
    const auto &ids = it->second;
    auto mid = ItemMidpoint(item);
    if (!mid) {
      auto prev = last_target.find(key);
      std::size_t target = prev != last_target.end() ? prev->second : ids.front();
      out.per_segment[target].push_back(item);
      continue;
    }

    std::size_t best = ids.front();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t id : ids) {
      const auto &seg = segments[id];
      double dist = 0.0;
      if (*mid < seg.start) {
        dist = seg.start - *mid;
      } else if (*mid > seg.end) {
        dist = *mid - seg.end;
      }
      // Strict comparison keeps the earlier segment on ties.
      if (dist < best_dist) {
        best_dist = dist;
        best = id;
      }
      if (dist == 0.0) break;
    }
    if (best_dist > slack) {
      out.warnings.push_back(key.first + " " + key.second + ": hypothesis at " + FormatSeconds(*mid) +
                             "s is " + FormatSeconds(best_dist) + "s outside every segment");
    }
    out.per_segment[best].push_back(item);
    last_target[key] = best;
  }
  return out;
}

}  // namespace altscore
