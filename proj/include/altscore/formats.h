// altscore/formats.h

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

// Readers and writers for the line-oriented text formats used by the scorer:
//
//   STM   rec chan speaker start end [<tags>] words...
//         "(WORD)" marks an optional deletion; "{ A / B C / @ }" is an inline
//         alternation group as written by `altscore filter` on references.
//   CTM   rec chan start duration WORD [confidence]
//         with "rec chan * * <ALT_BEGIN>" / "<ALT>" / "<ALT_END>" blocks.
//   GLM   LHS => RHS [annotation]   or   LHS => { A / B ... } [annotation]
//         "@" is the empty phrase.
//   Lattice        from to label start_frame end_frame weight
//                  final state weight
//                  start state        (optional; default is the first arc's source)
//                  utterance id rec chan   (archive header, one per lattice)
//   Alternatives   utterance id rec chan {nbest|word|phrase}
//                  position start_frame end_frame
//                  alt score words...
//
// Lines starting with ";;" are comments everywhere. Word surfaces are
// uppercased on ingest, lattice labels excepted. All functions are pure.

#ifndef ALTSCORE_FORMATS_H_
#define ALTSCORE_FORMATS_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "altscore/lattice.h"

namespace altscore {

inline constexpr double kDefaultFrameRate = 0.01;  // seconds per frame
inline constexpr std::string_view kIgnoreSegmentWord = "IGNORE_TIME_SEGMENT_IN_SCORING";
inline constexpr std::string_view kEmptyPhrase = "@";

struct RefWord {
  std::string surface;
  bool optional_deletion = false;
  /// Non-empty for an inline "{ A / B C / @ }" group; `surface` is then empty.
  std::vector<std::vector<std::string>> alternation;

  bool operator==(const RefWord &) const = default;
};

struct StmSegment {
  std::string recording_id;
  std::string channel;
  std::string speaker_id;
  double start = 0.0;
  double end = 0.0;
  std::optional<std::string> label_tags;
  std::vector<RefWord> words;
  bool ignore = false;  // IGNORE_TIME_SEGMENT_IN_SCORING

  bool operator==(const StmSegment &) const = default;
};

struct CtmToken {
  std::string recording_id;
  std::string channel;
  double start = 0.0;
  double duration = 0.0;
  std::string surface;
  std::optional<double> confidence;

  double midpoint() const { return start + duration / 2.0; }
  bool operator==(const CtmToken &) const = default;
};

/// Ranked alternatives in file order; an alternative may be empty.
struct CtmAltBlock {
  std::string recording_id;
  std::string channel;
  std::vector<std::vector<CtmToken>> alternatives;

  /// First token of the first non-empty alternative, if any.
  const CtmToken *FirstToken() const;
  bool operator==(const CtmAltBlock &) const = default;
};

using CtmItem = std::variant<CtmToken, CtmAltBlock>;

const std::string &RecordingOf(const CtmItem &item);
const std::string &ChannelOf(const CtmItem &item);

enum class RuleKind { kExpansion, kAlternation };

struct GlmRule {
  std::vector<std::string> lhs;
  std::vector<std::vector<std::string>> rhs;  // ranked; an entry may be empty ("@")
  RuleKind kind = RuleKind::kExpansion;
  std::string annotation;  // trailing text after the rhs, kept verbatim

  bool operator==(const GlmRule &) const = default;
};

/// One ranked word sequence. `spans` is either empty or holds the
/// [start_frame, end_frame) of each word (only known for lattice-derived
/// sequences; not serialized).
struct ScoredSequence {
  std::vector<std::string> words;
  double score = 0.0;
  std::vector<std::pair<int, int>> spans;

  bool operator==(const ScoredSequence &) const = default;
};

struct AltPosition {
  int start_frame = 0;
  int end_frame = 0;
  std::vector<ScoredSequence> alternatives;

  bool operator==(const AltPosition &) const = default;
};

enum class AltLevel { kUtterance, kWord, kPhrase };

std::string_view LevelName(AltLevel level);
std::optional<AltLevel> ParseLevel(std::string_view name);

/// Time-ordered positions of ranked alternatives for one utterance. Word-level
/// documents hold alternatives of length <= 1; an utterance-level (N-best)
/// document holds a single position spanning the utterance.
struct AlternativesDoc {
  std::string utterance_id;
  std::string recording_id;
  std::string channel;
  AltLevel level = AltLevel::kPhrase;
  std::vector<AltPosition> positions;

  bool operator==(const AlternativesDoc &) const = default;
};

/// Utterance-level alternatives: distinct sequences, best first.
struct NBestList {
  std::string utterance_id;
  std::string recording_id;
  std::string channel;
  int start_frame = 0;
  int end_frame = 0;
  std::vector<ScoredSequence> entries;

  bool operator==(const NBestList &) const = default;
};

AlternativesDoc ToAlternativesDoc(const NBestList &nbest);

struct NamedLattice {
  std::string utterance_id;
  std::string recording_id;
  std::string channel;
  Lattice lattice;

  bool operator==(const NamedLattice &) const = default;
};

std::vector<StmSegment> ParseStm(std::string_view text);
std::string WriteStm(const std::vector<StmSegment> &segments);

std::vector<CtmItem> ParseCtm(std::string_view text);
std::string WriteCtm(const std::vector<CtmItem> &items);

std::vector<GlmRule> ParseGlm(std::string_view text);
std::string WriteGlm(const std::vector<GlmRule> &rules);

/// Parses one lattice; rejects cycles and "utterance" headers.
Lattice ParseLattice(std::string_view text);
std::string WriteLattice(const Lattice &lat);

/// Several lattices, each introduced by an "utterance" header line. Text
/// without any header is read as a single unnamed lattice.
std::vector<NamedLattice> ParseLatticeArchive(std::string_view text);
std::string WriteLatticeArchive(const std::vector<NamedLattice> &lattices);

std::vector<AlternativesDoc> ParseAlternatives(std::string_view text);
std::string WriteAlternatives(const std::vector<AlternativesDoc> &docs);

/// CTM rendering of ranked alternatives. Positions with two or more
/// alternatives become ALT blocks; single-alternative positions become plain
/// tokens. Word times come from `spans` when present, otherwise the position
/// interval is split evenly. Time = frame * frame_rate.
std::string WriteCtmWithAlts(const AlternativesDoc &doc, double frame_rate = kDefaultFrameRate);
std::string WriteCtmWithAlts(const NBestList &nbest, double frame_rate = kDefaultFrameRate);

}  // namespace altscore

#endif  // ALTSCORE_FORMATS_H_
