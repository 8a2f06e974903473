// altscore/pipeline.h

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

// End-to-end scoring: filter -> segment -> align -> aggregate, and the
// lattice -> alternatives -> oracle path.

#ifndef ALTSCORE_PIPELINE_H_
#define ALTSCORE_PIPELINE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "altscore/align.h"
#include "altscore/formats.h"
#include "altscore/glm_filter.h"
#include "altscore/lattice_ops.h"
#include "altscore/oracle.h"
#include "altscore/segmentation.h"

namespace altscore {

struct ScoreOptions {
  std::vector<GlmRule> rules;
  bool legacy_expansions = false;  // apply expansion rules in place
  FilterPolicy policy;
  SegmentationMode segmentation = SegmentationMode::kPerSegment;
  CostModel costs;
  double slack = kDefaultAssignmentSlack;
  unsigned jobs = 1;
};

/// Rules as the scorer uses them: promoted unless legacy mode is on.
std::vector<GlmRule> EffectiveRules(const ScoreOptions &options);

struct SegmentResult {
  std::string recording_id;
  std::string channel;
  double start = 0.0;
  double end = 0.0;
  AlignmentResult alignment;
};

struct ScoreRun {
  std::vector<SegmentResult> segments;  // reference order
  std::vector<std::string> warnings;
};

/// Scores one system. Ignore segments absorb the hypothesis words that fall
/// in them and are not scored.
ScoreRun ScoreSystem(const std::vector<StmSegment> &stm, const std::vector<CtmItem> &ctm,
                     const ScoreOptions &options);

struct ScoreRow {
  std::string label;
  ErrorCounts counts;
  Metrics metrics;
};

inline constexpr const char *kOverallLabel = "overall";

/// One row per "recording channel" in order of first appearance, then the
/// micro-averaged overall row.
std::vector<ScoreRow> SummarizeRun(const ScoreRun &run);

struct Stage {
  std::string name;
  ScoreOptions options;
};

/// The six cumulative configurations, starting from `base` (whose rules,
/// word lists, costs, slack and jobs are kept): legacy expansions, promoted
/// alternations, hypothesis hesitations excluded, optional backchannels,
/// excluded backchannels, single segment per recording.
std::vector<Stage> StageLadder(const ScoreOptions &base);

/// The overall row of each stage, labelled with the stage name.
std::vector<ScoreRow> ScoreStages(const std::vector<StmSegment> &stm, const std::vector<CtmItem> &ctm,
                                  const ScoreOptions &base, std::vector<std::string> *warnings = nullptr);

/// Applies GLM rules and the hypothesis policy to an alternatives network,
/// treating single-alternative slots as plain tokens and the rest as ALT
/// blocks, exactly as a CTM carrying them would be filtered.
AltNetwork FilterHypothesisNetwork(const AltNetwork &network, const std::vector<GlmRule> &rules,
                                   const FilterPolicy &policy);

/// Rewrites each non-ignore segment through `rules`; with `mark_optional`
/// the reference policy is applied as well. Ignore segments pass through.
std::vector<StmSegment> FilterStm(const std::vector<StmSegment> &stm, const std::vector<GlmRule> &rules,
                                  const FilterPolicy &policy, bool mark_optional);

/// Rewrites each consecutive recording/channel run through `rules` and the
/// hypothesis policy. Rewritten words come back as ALT blocks.
std::vector<CtmItem> FilterCtm(const std::vector<CtmItem> &ctm, const std::vector<GlmRule> &rules,
                               const FilterPolicy &policy);

struct OracleOptions {
  std::vector<GlmRule> rules;
  bool legacy_expansions = false;
  FilterPolicy policy;
  CostModel costs;
  double frame_rate = kDefaultFrameRate;
  double slack = kDefaultAssignmentSlack;
  unsigned jobs = 1;
};

/// Pairs every scored reference segment with the documents whose time
/// midpoint it owns (same rules as hypothesis token assignment).
std::vector<OracleUtterance> BuildOracleUtterances(const std::vector<StmSegment> &stm,
                                                   const std::vector<AlternativesDoc> &docs,
                                                   const OracleOptions &options,
                                                   std::vector<std::string> *warnings = nullptr);

std::vector<OracleRow> RunOracle(const std::vector<StmSegment> &stm, const std::vector<AlternativesDoc> &docs,
                                 const std::vector<std::size_t> &n_values, const OracleOptions &options,
                                 std::vector<std::string> *warnings = nullptr);

/// Alternatives at the requested level for each lattice, depth n.
std::vector<AlternativesDoc> DeriveAlternatives(const std::vector<NamedLattice> &lattices, AltLevel level,
                                                std::size_t n,
                                                double threshold = kDefaultPosteriorThreshold,
                                                const LabelSet &non_words = {}, unsigned jobs = 1);

}  // namespace altscore

#endif  // ALTSCORE_PIPELINE_H_
