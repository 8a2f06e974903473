// altscore/segmentation.h

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

#ifndef ALTSCORE_SEGMENTATION_H_
#define ALTSCORE_SEGMENTATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "altscore/formats.h"

namespace altscore {

enum class SegmentationMode { kPerSegment, kSingleSegment };

std::string_view SegmentationModeName(SegmentationMode mode);

/// One segment per (recording, channel) in order of first appearance; words
/// are concatenated in (start, file order) order and the span covers all
/// members. Speaker and tags come from the earliest segment. Ignore segments
/// are dropped. Overlaps are merged anyway and reported in `warnings`.
std::vector<StmSegment> MergeStm(const std::vector<StmSegment> &segments,
                                 std::vector<std::string> *warnings = nullptr);

struct SegmentAssignment {
  /// Hypothesis items per input segment index.
  std::vector<std::vector<CtmItem>> per_segment;
  /// Items whose recording/channel has no segment at all.
  std::vector<CtmItem> unassigned;
  std::vector<std::string> warnings;
};

inline constexpr double kDefaultAssignmentSlack = 10.0;  // seconds

/// Assigns each item to the segment (same recording and channel) containing
/// its midpoint; a midpoint in a gap goes to the nearest segment boundary and
/// ties go to the earlier segment. An ALT block is placed by the first token
/// of its first non-empty alternative; an all-empty block follows the
/// previous item of its channel. Items farther than `slack` seconds from any
/// segment are still assigned to the nearest one, with a warning.
SegmentAssignment AssignHypToSegments(const std::vector<CtmItem> &items,
                                      const std::vector<StmSegment> &segments,
                                      double slack = kDefaultAssignmentSlack);

}  // namespace altscore

#endif  // ALTSCORE_SEGMENTATION_H_
