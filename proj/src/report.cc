// src/report.cc

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

#include "altscore/report.h"

#include <algorithm>
#include <cstdio>

#include "altscore/text.h"

namespace altscore {

std::string FormatWer(double wer) { return FormatFixed(wer, 2); }

std::string FormatRatio(double ratio) { return FormatFixed(ratio, 3); }

std::string FormatDepth(std::size_t n) { return n == kUnboundedDepth ? "inf" : std::to_string(n); }

void SortByWer(std::vector<ScoreRow> &rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ScoreRow &a, const ScoreRow &b) {
    const double wa = std::stod(FormatWer(a.metrics.wer));
    const double wb = std::stod(FormatWer(b.metrics.wer));
    if (wa != wb) return wa < wb;
    return a.label < b.label;
  });
}

namespace {

// Renders rows of cells; column 0 left-aligned, the rest right-aligned.
std::string RenderTable(const std::vector<std::vector<std::string>> &cells) {
  std::vector<std::size_t> width;
  for (const auto &row : cells) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto &row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - row[c].size(), ' ');
      if (c == 0) {
        line += row[c] + pad;
      } else {
        line += "  " + pad + row[c];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

double Rounded(const std::string &formatted) { return std::stod(formatted); }

}  // namespace

std::string RenderScoreTable(const std::vector<ScoreRow> &rows, const std::string &label_header) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({label_header, "C", "S", "D", "I", "Ref", "Hyp", "WER", "Prec", "Recall"});
  for (const auto &r : rows) {
    const auto &c = r.counts;
    cells.push_back({r.label, std::to_string(c.correct), std::to_string(c.substituted),
                     std::to_string(c.deleted), std::to_string(c.inserted), std::to_string(c.ref_length()),
                     std::to_string(c.hyp_length()), FormatWer(r.metrics.wer), FormatRatio(r.metrics.precision),
                     FormatRatio(r.metrics.recall)});
  }
  return RenderTable(cells);
}

nlohmann::json ScoreJson(const std::vector<ScoreRow> &rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &r : rows) {
    const auto &c = r.counts;
    out.push_back({{"label", r.label},
                   {"correct", c.correct},
                   {"substituted", c.substituted},
                   {"deleted", c.deleted},
                   {"inserted", c.inserted},
                   {"ref_length", c.ref_length()},
                   {"hyp_length", c.hyp_length()},
                   {"wer", Rounded(FormatWer(r.metrics.wer))},
                   {"precision", Rounded(FormatRatio(r.metrics.precision))},
                   {"recall", Rounded(FormatRatio(r.metrics.recall))}});
  }
  return out;
}

std::string RenderOracleTable(const std::vector<OracleSystem> &systems) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"System", "Level", "N", "WER", "N_max", "N_.9", "N_.5", "Bytes"});
  for (const auto &sys : systems) {
    for (const auto &r : sys.rows) {
      cells.push_back({sys.name, std::string(LevelName(sys.level)), FormatDepth(r.n), FormatWer(r.wer),
                       std::to_string(r.depth.n_max), std::to_string(r.depth.n_90),
                       std::to_string(r.depth.n_50), std::to_string(r.compressed_bytes)});
    }
  }
  return RenderTable(cells);
}

nlohmann::json OracleJson(const std::vector<OracleSystem> &systems) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &sys : systems) {
    for (const auto &r : sys.rows) {
      nlohmann::json n = r.n == kUnboundedDepth ? nlohmann::json("inf") : nlohmann::json(r.n);
      out.push_back({{"system", sys.name},
                     {"level", std::string(LevelName(sys.level))},
                     {"n", n},
                     {"wer", Rounded(FormatWer(r.wer))},
                     {"correct", r.counts.correct},
                     {"substituted", r.counts.substituted},
                     {"deleted", r.counts.deleted},
                     {"inserted", r.counts.inserted},
                     {"n_max", r.depth.n_max},
                     {"n_90", r.depth.n_90},
                     {"n_50", r.depth.n_50},
                     {"bytes", r.compressed_bytes}});
    }
  }
  return out;
}

AlternativesStats ComputeAlternativesStats(const std::vector<AlternativesDoc> &docs, double frame_rate) {
  AlternativesStats stats;
  std::string ctm;
  for (const auto &doc : docs) {
    ++stats.utterances;
    stats.positions += doc.positions.size();
    for (const auto &pos : doc.positions) stats.alternatives += pos.alternatives.size();
    ctm += WriteCtmWithAlts(doc, frame_rate);
  }
  if (stats.positions > 0) stats.depth = ComputeDepthStats(docs);
  stats.compressed_bytes = CompressedSize(ctm);
  return stats;
}

std::string RenderStats(const AlternativesStats &stats) {
  return RenderTable({{"Utterances", "Positions", "Alternatives", "N_max", "N_.9", "N_.5", "Bytes"},
                      {std::to_string(stats.utterances), std::to_string(stats.positions),
                       std::to_string(stats.alternatives), std::to_string(stats.depth.n_max),
                       std::to_string(stats.depth.n_90), std::to_string(stats.depth.n_50),
                       std::to_string(stats.compressed_bytes)}});
}

nlohmann::json StatsJson(const AlternativesStats &stats) {
  return {{"utterances", stats.utterances}, {"positions", stats.positions},
          {"alternatives", stats.alternatives}, {"n_max", stats.depth.n_max},
          {"n_90", stats.depth.n_90}, {"n_50", stats.depth.n_50},
          {"bytes", stats.compressed_bytes}};
}

}  // namespace altscore
