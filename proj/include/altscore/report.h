// altscore/report.h

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

// Fixed-width tables and JSON for score, stage and oracle results. Numbers
// are rounded once (WER to 2 decimals, precision/recall to 3, half-even) and
// the JSON carries the same rounded values.

#ifndef ALTSCORE_REPORT_H_
#define ALTSCORE_REPORT_H_

#include <cstddef>
#include <string>
#include <vector>

#include "altscore/formats.h"
#include "altscore/lattice_ops.h"
#include "altscore/oracle.h"
#include "altscore/pipeline.h"
#include "json.hpp"

namespace altscore {

std::string FormatWer(double wer);
std::string FormatRatio(double ratio);
/// "inf" for kUnboundedDepth.
std::string FormatDepth(std::size_t n);

/// Stable sort by rounded WER, then label.
void SortByWer(std::vector<ScoreRow> &rows);

/// Columns: label, C, S, D, I, Ref, Hyp, WER, Prec, Recall.
std::string RenderScoreTable(const std::vector<ScoreRow> &rows, const std::string &label_header);
nlohmann::json ScoreJson(const std::vector<ScoreRow> &rows);

struct OracleSystem {
  std::string name;
  AltLevel level = AltLevel::kPhrase;
  std::vector<OracleRow> rows;
};

/// Columns: system, level, N, WER, N_max, N_.9, N_.5, bytes.
std::string RenderOracleTable(const std::vector<OracleSystem> &systems);
nlohmann::json OracleJson(const std::vector<OracleSystem> &systems);

struct AlternativesStats {
  std::size_t utterances = 0;
  std::size_t positions = 0;
  std::size_t alternatives = 0;
  DepthStats depth;
  std::size_t compressed_bytes = 0;
};

AlternativesStats ComputeAlternativesStats(const std::vector<AlternativesDoc> &docs,
                                           double frame_rate = kDefaultFrameRate);
std::string RenderStats(const AlternativesStats &stats);
nlohmann::json StatsJson(const AlternativesStats &stats);

}  // namespace altscore

#endif  // ALTSCORE_REPORT_H_
