// altscore/glm_filter.h

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

// GLM normalization of reference and hypothesis streams into AltNetworks.
//
// Rules are applied in a single left-to-right pass: at each position the
// rule with the longest matching left-hand side wins (file order breaks
// ties), matches never overlap and rule output is not rewritten again.
// Expansion rules replace the matched words; alternation rules turn them
// into one slot whose alternatives are the rule's right-hand sides in order.

#ifndef ALTSCORE_GLM_FILTER_H_
#define ALTSCORE_GLM_FILTER_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "altscore/alt_network.h"
#include "altscore/formats.h"

namespace altscore {

enum class BackchannelMode { kScore, kOptional, kExclude };
enum class Side { kReference, kHypothesis };

std::set<std::string> DefaultHesitationWords();
std::set<std::string> DefaultBackchannelWords();

struct FilterPolicy {
  std::set<std::string> hesitation_words = DefaultHesitationWords();
  std::set<std::string> backchannel_words = DefaultBackchannelWords();
  bool exclude_hyp_hesitations = false;
  BackchannelMode backchannel_mode = BackchannelMode::kScore;
};

std::string_view BackchannelModeName(BackchannelMode mode);

/// Whitespace-separated words, ";;" comments allowed; uppercased.
std::set<std::string> ParseWordList(std::string_view text);

/// Longest-match-first lookup over a rule list.
class GlmMatcher {
 public:
  explicit GlmMatcher(const std::vector<GlmRule> &rules);

  /// Rule matching a prefix of `words`, or nullptr. The match length is the
  /// rule's lhs size.
  const GlmRule *Match(std::span<const std::string> words) const;

 private:
  const std::vector<GlmRule> *rules_;
  std::map<std::string, std::vector<std::size_t>> by_first_word_;
};

/// Expansion rules become alternations with the original form first,
/// `LHS => { LHS / RHS }`. Alternations pass through. Idempotent.
std::vector<GlmRule> PromoteExpansions(const std::vector<GlmRule> &rules);

AltNetwork ApplyGlmToReference(const StmSegment &segment, const std::vector<GlmRule> &rules);
std::vector<AltNetwork> ApplyGlmToReference(const std::vector<StmSegment> &segments,
                                            const std::vector<GlmRule> &rules);

/// Rules are matched across runs of plain tokens and separately inside each
/// alternative of an ALT block; nested results are flattened.
AltNetwork ApplyGlmToHypothesis(const std::vector<CtmItem> &stream, const std::vector<GlmRule> &rules);

/// Expands nested alternations into a single level per slot (cartesian
/// product, in rank order) and drops duplicate sequences keeping the lowest
/// rank. Slots that are already flat and duplicate-free are left untouched.
AltNetwork FlattenNestedAlts(const AltNetwork &network);

/// Hesitation and backchannel handling.
///   hypothesis: drop hesitations when exclude_hyp_hesitations, drop
///               backchannels when mode is kExclude; slots left with only
///               empty alternatives disappear.
///   reference:  hesitation slots always get an empty alternative;
///               backchannel slots get one unless mode is kScore.
/// A word in both lists counts as a hesitation.
AltNetwork ApplyPolicy(const AltNetwork &network, const FilterPolicy &policy, Side side);

/// Writes a filtered hypothesis back as CTM items: single-alternative slots
/// as plain tokens, the rest as ALT blocks. Words without timing share the
/// span of the timed words in their slot.
std::vector<CtmItem> NetworkToCtm(const AltNetwork &network, const std::string &recording_id,
                                  const std::string &channel);

/// `segment` with its words replaced by `network`: "(W)" for a lone optional
/// word, "{ A / B C / @ }" groups for other multi-alternative slots.
StmSegment NetworkToStm(const AltNetwork &network, const StmSegment &segment);

}  // namespace altscore

#endif  // ALTSCORE_GLM_FILTER_H_
