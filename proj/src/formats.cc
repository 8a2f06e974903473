// src/formats.cc

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

#include "altscore/formats.h"

#include <algorithm>
#include <limits>

#include "altscore/error.h"
#include "altscore/text.h"

namespace altscore {

namespace {

constexpr std::string_view kAltBegin = "<ALT_BEGIN>";
constexpr std::string_view kAlt = "<ALT>";
constexpr std::string_view kAltEnd = "<ALT_END>";

bool IsComment(std::string_view line) { return StartsWith(Trim(line), ";;"); }

bool IsBlank(std::string_view line) { return Trim(line).empty(); }

double RequireDouble(const std::string &s, std::size_t line, const char *field) {
  auto v = ParseDouble(s);
  if (!v) throw ParseError(line, field, "expected a number, got '" + s + "'");
  return *v;
}

int RequireInt(const std::string &s, std::size_t line, const char *field) {
  auto v = ParseInt(s);
  if (!v || *v < std::numeric_limits<int>::min() || *v > std::numeric_limits<int>::max()) {
    throw ParseError(line, field, "expected an integer, got '" + s + "'");
  }
  return static_cast<int>(*v);
}

int RequireState(const std::string &s, std::size_t line, const char *field) {
  int v = RequireInt(s, line, field);
  if (v < 0) throw ParseError(line, field, "state ids must be non-negative");
  return v;
}

std::vector<std::string> UpperWords(const std::vector<std::string> &words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto &w : words) out.push_back(ToUpper(w));
  return out;
}

// "A B" / "@" / "" -> words, with "@" meaning the empty phrase.
std::vector<std::string> PhraseWords(std::string_view text) {
  auto words = UpperWords(SplitFields(text));
  if (words.size() == 1 && words[0] == kEmptyPhrase) words.clear();
  return words;
}

std::string PhraseText(const std::vector<std::string> &words) {
  return words.empty() ? std::string(kEmptyPhrase) : Join(words);
}

}  // namespace

// ---------------------------------------------------------------------------
// Small helpers on the shared types.

const CtmToken *CtmAltBlock::FirstToken() const {
  for (const auto &alt : alternatives) {
    if (!alt.empty()) return &alt.front();
  }
  return nullptr;
}

const std::string &RecordingOf(const CtmItem &item) {
  return std::visit([](const auto &x) -> const std::string & { return x.recording_id; }, item);
}

const std::string &ChannelOf(const CtmItem &item) {
  return std::visit([](const auto &x) -> const std::string & { return x.channel; }, item);
}

std::string_view LevelName(AltLevel level) {
  switch (level) {
    case AltLevel::kUtterance:
      return "nbest";
    case AltLevel::kWord:
      return "word";
    case AltLevel::kPhrase:
      return "phrase";
  }
  return "phrase";
}

std::optional<AltLevel> ParseLevel(std::string_view name) {
  if (name == "nbest" || name == "utterance") return AltLevel::kUtterance;
  if (name == "word") return AltLevel::kWord;
  if (name == "phrase") return AltLevel::kPhrase;
  return std::nullopt;
}

AlternativesDoc ToAlternativesDoc(const NBestList &nbest) {
  AlternativesDoc doc;
  doc.utterance_id = nbest.utterance_id;
  doc.recording_id = nbest.recording_id;
  doc.channel = nbest.channel;
  doc.level = AltLevel::kUtterance;
  if (!nbest.entries.empty()) {
    doc.positions.push_back({nbest.start_frame, nbest.end_frame, nbest.entries});
  }
  return doc;
}

// ---------------------------------------------------------------------------
// STM

std::vector<StmSegment> ParseStm(std::string_view text) {
  std::vector<StmSegment> segments;
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (IsBlank(lines[i]) || IsComment(lines[i])) continue;
    auto f = SplitFields(lines[i]);
    if (f.size() < 5) {
      static const char *names[] = {"recording", "channel", "speaker", "start", "end"};
      throw ParseError(lineno, names[f.size()], "missing field (STM needs at least 5)");
    }
    StmSegment seg;
    seg.recording_id = f[0];
    seg.channel = f[1];
    seg.speaker_id = f[2];
    seg.start = RequireDouble(f[3], lineno, "start");
    seg.end = RequireDouble(f[4], lineno, "end");
    if (seg.start < 0) throw ParseError(lineno, "start", "negative start time");
    if (seg.end <= seg.start) throw ParseError(lineno, "end", "end must be greater than start");

    std::size_t k = 5;
    if (k < f.size() && f[k].size() >= 2 && f[k].front() == '<' && f[k].back() == '>') {
      seg.label_tags = f[k++];
    }
    for (; k < f.size(); ++k) {
      const std::string &tok = f[k];
      if (tok == "{") {
        RefWord group;
        std::vector<std::string> current;
        bool closed = false;
        for (++k; k < f.size(); ++k) {
          if (f[k] == "}") {
            closed = true;
            break;
          }
          if (f[k] == "/") {
            group.alternation.push_back(current);
            current.clear();
          } else if (f[k] != kEmptyPhrase) {
            current.push_back(ToUpper(f[k]));
          }
        }
        if (!closed) throw ParseError(lineno, "words", "unterminated '{' alternation");
        group.alternation.push_back(current);
        if (group.alternation.size() < 2) {
          throw ParseError(lineno, "words", "inline alternation needs at least two entries");
        }
        seg.words.push_back(std::move(group));
      } else if (tok == "}" || tok == "/") {
        throw ParseError(lineno, "words", "stray '" + tok + "' outside an alternation");
      } else if (tok.size() >= 3 && tok.front() == '(' && tok.back() == ')') {
        seg.words.push_back({ToUpper(tok.substr(1, tok.size() - 2)), true, {}});
      } else {
        seg.words.push_back({ToUpper(tok), false, {}});
      }
    }
    if (seg.words.size() == 1 && seg.words[0].surface == kIgnoreSegmentWord) {
      seg.words.clear();
      seg.ignore = true;
    }
    if (seg.words.empty() && !seg.ignore) {
      throw ParseError(lineno, "words", "segment has no words");
    }
    segments.push_back(std::move(seg));
  }
  return segments;
}

std::string WriteStm(const std::vector<StmSegment> &segments) {
  std::string out;
  for (const auto &seg : segments) {
    out += seg.recording_id + " " + seg.channel + " " + seg.speaker_id + " " +
           FormatSeconds(seg.start) + " " + FormatSeconds(seg.end);
    if (seg.label_tags) out += " " + *seg.label_tags;
    if (seg.ignore) out += " " + std::string(kIgnoreSegmentWord);
    for (const auto &w : seg.words) {
      out += ' ';
      if (!w.alternation.empty()) {
        out += "{";
        for (std::size_t a = 0; a < w.alternation.size(); ++a) {
          out += a ? " / " : " ";
          out += PhraseText(w.alternation[a]);
        }
        out += " }";
      } else if (w.optional_deletion) {
        out += "(" + w.surface + ")";
      } else {
        out += w.surface;
      }
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// CTM

std::vector<CtmItem> ParseCtm(std::string_view text) {
  std::vector<CtmItem> items;
  std::optional<CtmAltBlock> open;
  std::size_t open_line = 0;
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (IsBlank(lines[i]) || IsComment(lines[i])) continue;
    auto f = SplitFields(lines[i]);
    if (f.size() < 5) {
      static const char *names[] = {"recording", "channel", "start", "duration", "word"};
      throw ParseError(lineno, names[f.size()], "missing field (CTM needs at least 5)");
    }
    if (f.size() > 6) throw ParseError(lineno, "confidence", "too many fields");
    const std::string word = ToUpper(f[4]);

    if (word == kAltBegin) {
      if (open) {
        throw ParseError(lineno, "word",
                         "nested <ALT_BEGIN> inside the block opened on line " +
                             std::to_string(open_line) +
                             "; flatten nested alternatives (flatten_nested_alts) before writing CTM");
      }
      open = CtmAltBlock{f[0], f[1], {{}}};
      open_line = lineno;
      continue;
    }
    if (word == kAlt || word == kAltEnd) {
      if (!open) throw ParseError(lineno, "word", word + " without a matching <ALT_BEGIN>");
      if (f[0] != open->recording_id || f[1] != open->channel) {
        throw ParseError(lineno, "recording", "ALT marker does not match its block's recording/channel");
      }
      if (word == kAlt) {
        open->alternatives.emplace_back();
      } else {
        items.emplace_back(std::move(*open));
        open.reset();
      }
      continue;
    }

    CtmToken tok;
    tok.recording_id = f[0];
    tok.channel = f[1];
    tok.start = RequireDouble(f[2], lineno, "start");
    tok.duration = RequireDouble(f[3], lineno, "duration");
    if (tok.duration < 0) throw ParseError(lineno, "duration", "negative duration");
    tok.surface = word;
    if (f.size() == 6) tok.confidence = RequireDouble(f[5], lineno, "confidence");

    if (open) {
      if (tok.recording_id != open->recording_id || tok.channel != open->channel) {
        throw ParseError(lineno, "recording", "token inside an ALT block has a different recording/channel");
      }
      open->alternatives.back().push_back(std::move(tok));
    } else {
      items.emplace_back(std::move(tok));
    }
  }
  if (open) {
    throw ParseError(open_line, "word", "<ALT_BEGIN> is never closed by <ALT_END>");
  }
  return items;
}

namespace {

void AppendToken(std::string &out, const CtmToken &t) {
  out += t.recording_id + " " + t.channel + " " + FormatSeconds(t.start) + " " +
         FormatSeconds(t.duration) + " " + t.surface;
  if (t.confidence) out += " " + FormatShortest(*t.confidence);
  out += '\n';
}

void AppendMarker(std::string &out, const std::string &rec, const std::string &chan,
                  std::string_view marker) {
  out += rec + " " + chan + " * * " + std::string(marker) + "\n";
}

}  // namespace

std::string WriteCtm(const std::vector<CtmItem> &items) {
  std::string out;
  for (const auto &item : items) {
    if (const auto *tok = std::get_if<CtmToken>(&item)) {
      AppendToken(out, *tok);
      continue;
    }
    const auto &block = std::get<CtmAltBlock>(item);
    AppendMarker(out, block.recording_id, block.channel, kAltBegin);
    for (std::size_t a = 0; a < block.alternatives.size(); ++a) {
      if (a) AppendMarker(out, block.recording_id, block.channel, kAlt);
      for (const auto &tok : block.alternatives[a]) AppendToken(out, tok);
    }
    AppendMarker(out, block.recording_id, block.channel, kAltEnd);
  }
  return out;
}

// ---------------------------------------------------------------------------
// GLM

std::vector<GlmRule> ParseGlm(std::string_view text) {
  std::vector<GlmRule> rules;
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = Trim(lines[i]);
    if (line.empty() || IsComment(line)) continue;

    auto arrow = line.find("=>");
    if (arrow == std::string_view::npos) throw ParseError(lineno, "=>", "missing '=>'");
    GlmRule rule;
    rule.lhs = UpperWords(SplitFields(line.substr(0, arrow)));
    if (rule.lhs.empty()) throw ParseError(lineno, "lhs", "empty left-hand side");

    std::string_view rest = Trim(line.substr(arrow + 2));
    if (rest.empty()) throw ParseError(lineno, "rhs", "empty right-hand side");

    if (rest.front() == '{') {
      auto close = rest.find('}');
      if (close == std::string_view::npos) throw ParseError(lineno, "rhs", "unterminated '{'");
      std::string_view inner = rest.substr(1, close - 1);
      std::size_t pos = 0;
      while (true) {
        auto slash = inner.find('/', pos);
        std::string_view part =
            Trim(inner.substr(pos, slash == std::string_view::npos ? inner.npos : slash - pos));
        if (part.empty()) {
          throw ParseError(lineno, "rhs", "empty alternative inside braces (write '@' for the empty phrase)");
        }
        rule.rhs.push_back(PhraseWords(part));
        if (slash == std::string_view::npos) break;
        pos = slash + 1;
      }
      rule.kind = rule.rhs.size() >= 2 ? RuleKind::kAlternation : RuleKind::kExpansion;
      rule.annotation = std::string(Trim(rest.substr(close + 1)));
    } else {
      auto cut = std::min(rest.find('/'), rest.find(";;"));
      std::string_view phrase = Trim(rest.substr(0, cut));
      if (phrase.empty()) throw ParseError(lineno, "rhs", "empty right-hand side");
      rule.rhs.push_back(PhraseWords(phrase));
      rule.kind = RuleKind::kExpansion;
      if (cut != std::string_view::npos) rule.annotation = std::string(Trim(rest.substr(cut)));
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::string WriteGlm(const std::vector<GlmRule> &rules) {
  std::string out;
  for (const auto &rule : rules) {
    out += Join(rule.lhs) + " => ";
    if (rule.kind == RuleKind::kAlternation) {
      out += "{";
      for (std::size_t a = 0; a < rule.rhs.size(); ++a) {
        out += a ? " / " : " ";
        out += PhraseText(rule.rhs[a]);
      }
      out += " }";
    } else {
      out += PhraseText(rule.rhs.empty() ? std::vector<std::string>{} : rule.rhs.front());
    }
    if (!rule.annotation.empty()) out += " " + rule.annotation;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lattices

namespace {

struct LatticeBuilder {
  Lattice lat;
  bool have_start = false;
  std::size_t first_line = 0;

  void Touch(int state) { lat.num_states = std::max(lat.num_states, state + 1); }

  void Line(const std::vector<std::string> &f, std::size_t lineno) {
    if (f[0] == "start") {
      if (f.size() != 2) throw ParseError(lineno, "start", "expected 'start STATE'");
      lat.start = RequireState(f[1], lineno, "state");
      have_start = true;
      Touch(lat.start);
    } else if (f[0] == "final") {
      if (f.size() != 3) throw ParseError(lineno, "final", "expected 'final STATE WEIGHT'");
      int s = RequireState(f[1], lineno, "state");
      lat.finals[s] = RequireDouble(f[2], lineno, "weight");
      Touch(s);
    } else {
      if (f.size() != 6) {
        throw ParseError(lineno, "", "expected 6 fields 'from to label start_frame end_frame weight', got " +
                                         std::to_string(f.size()));
      }
      LatticeArc arc;
      arc.from = RequireState(f[0], lineno, "from");
      arc.to = RequireState(f[1], lineno, "to");
      arc.label = f[2];
      arc.start_frame = RequireInt(f[3], lineno, "start_frame");
      arc.end_frame = RequireInt(f[4], lineno, "end_frame");
      arc.weight = RequireDouble(f[5], lineno, "weight");
      if (arc.start_frame > arc.end_frame) {
        throw ParseError(lineno, "end_frame", "end_frame precedes start_frame");
      }
      if (!have_start && lat.arcs.empty()) lat.start = arc.from;
      Touch(arc.from);
      Touch(arc.to);
      lat.arcs.push_back(std::move(arc));
    }
  }

  Lattice Finish() {
    if (lat.num_states == 0) lat.num_states = 1;
    try {
      TopologicalOrder(lat);
    } catch (const InputError &e) {
      throw ParseError(first_line, "", e.what());
    }
    return std::move(lat);
  }
};

}  // namespace

Lattice ParseLattice(std::string_view text) {
  LatticeBuilder b;
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i]) || IsComment(lines[i])) continue;
    auto f = SplitFields(lines[i]);
    if (f[0] == "utterance") {
      throw ParseError(i + 1, "utterance", "archive header in a single-lattice file; read it as an archive");
    }
    if (b.first_line == 0) b.first_line = i + 1;
    b.Line(f, i + 1);
  }
  return b.Finish();
}

std::string WriteLattice(const Lattice &lat) {
  std::string out;
  if (lat.arcs.empty() || lat.arcs.front().from != lat.start) {
    out += "start " + std::to_string(lat.start) + "\n";
  }
  for (const auto &arc : lat.arcs) {
    out += std::to_string(arc.from) + " " + std::to_string(arc.to) + " " + arc.label + " " +
           std::to_string(arc.start_frame) + " " + std::to_string(arc.end_frame) + " " +
           FormatShortest(arc.weight) + "\n";
  }
  for (const auto &[s, w] : lat.finals) {
    out += "final " + std::to_string(s) + " " + FormatShortest(w) + "\n";
  }
  return out;
}

std::vector<NamedLattice> ParseLatticeArchive(std::string_view text) {
  std::vector<NamedLattice> out;
  std::optional<NamedLattice> header;
  std::optional<LatticeBuilder> builder;
  auto flush = [&] {
    if (!builder) return;
    NamedLattice named = header ? *header : NamedLattice{};
    named.lattice = builder->Finish();
    out.push_back(std::move(named));
    builder.reset();
  };
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i]) || IsComment(lines[i])) continue;
    auto f = SplitFields(lines[i]);
    if (f[0] == "utterance") {
      if (f.size() != 4) throw ParseError(i + 1, "utterance", "expected 'utterance ID RECORDING CHANNEL'");
      flush();
      header = NamedLattice{f[1], f[2], f[3], {}};
      builder.emplace();
      builder->first_line = i + 1;
      continue;
    }
    if (!builder) {
      if (header) throw InvariantError("lattice archive reader lost its header");
      builder.emplace();
      builder->first_line = i + 1;
    }
    builder->Line(f, i + 1);
  }
  flush();
  return out;
}

std::string WriteLatticeArchive(const std::vector<NamedLattice> &lattices) {
  std::string out;
  for (const auto &named : lattices) {
    out += "utterance " + named.utterance_id + " " + named.recording_id + " " + named.channel + "\n";
    out += WriteLattice(named.lattice);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Alternatives documents

std::vector<AlternativesDoc> ParseAlternatives(std::string_view text) {
  std::vector<AlternativesDoc> docs;
  auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (IsBlank(lines[i]) || IsComment(lines[i])) continue;
    auto f = SplitFields(lines[i]);
    if (f[0] == "utterance") {
      if (f.size() != 5) {
        throw ParseError(lineno, "utterance", "expected 'utterance ID RECORDING CHANNEL LEVEL'");
      }
      auto level = ParseLevel(f[4]);
      if (!level) throw ParseError(lineno, "level", "unknown level '" + f[4] + "'");
      docs.push_back({f[1], f[2], f[3], *level, {}});
    } else if (f[0] == "position") {
      if (docs.empty()) throw ParseError(lineno, "position", "position before any utterance header");
      if (f.size() != 3) throw ParseError(lineno, "position", "expected 'position START_FRAME END_FRAME'");
      AltPosition pos;
      pos.start_frame = RequireInt(f[1], lineno, "start_frame");
      pos.end_frame = RequireInt(f[2], lineno, "end_frame");
      if (pos.end_frame < pos.start_frame) throw ParseError(lineno, "end_frame", "end precedes start");
      auto &positions = docs.back().positions;
      if (!positions.empty() && positions.back().end_frame > pos.start_frame) {
        throw ParseError(lineno, "start_frame", "positions overlap or are out of time order");
      }
      positions.push_back(std::move(pos));
    } else if (f[0] == "alt") {
      if (docs.empty() || docs.back().positions.empty()) {
        throw ParseError(lineno, "alt", "alternative before any position");
      }
      if (f.size() < 2) throw ParseError(lineno, "score", "missing score");
      ScoredSequence seq;
      seq.score = RequireDouble(f[1], lineno, "score");
      for (std::size_t k = 2; k < f.size(); ++k) seq.words.push_back(ToUpper(f[k]));
      if (seq.words.size() == 1 && seq.words[0] == kEmptyPhrase) seq.words.clear();
      docs.back().positions.back().alternatives.push_back(std::move(seq));
    } else {
      throw ParseError(lineno, "", "unknown record '" + f[0] + "'");
    }
  }
  for (const auto &doc : docs) {
    for (const auto &pos : doc.positions) {
      if (pos.alternatives.empty()) {
        throw ParseError(0, "position", "utterance " + doc.utterance_id + " has a position without alternatives");
      }
    }
  }
  return docs;
}

std::string WriteAlternatives(const std::vector<AlternativesDoc> &docs) {
  std::string out;
  for (const auto &doc : docs) {
    out += "utterance " + doc.utterance_id + " " + doc.recording_id + " " + doc.channel + " " +
           std::string(LevelName(doc.level)) + "\n";
    for (const auto &pos : doc.positions) {
      out += "position " + std::to_string(pos.start_frame) + " " + std::to_string(pos.end_frame) + "\n";
      for (const auto &alt : pos.alternatives) {
        out += "alt " + FormatShortest(alt.score);
        out += " " + PhraseText(alt.words);
        out += '\n';
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CTM with ALT blocks

namespace {

std::vector<CtmToken> TimedTokens(const AlternativesDoc &doc, const AltPosition &pos,
                                  const ScoredSequence &seq, double frame_rate) {
  std::vector<CtmToken> tokens;
  const bool have_spans = seq.spans.size() == seq.words.size();
  const double k = static_cast<double>(seq.words.size());
  const double width = pos.end_frame - pos.start_frame;
  for (std::size_t i = 0; i < seq.words.size(); ++i) {
    double s, e;
    if (have_spans) {
      s = seq.spans[i].first;
      e = seq.spans[i].second;
    } else {
      s = pos.start_frame + width * static_cast<double>(i) / k;
      e = pos.start_frame + width * static_cast<double>(i + 1) / k;
    }
    CtmToken tok;
    tok.recording_id = doc.recording_id;
    tok.channel = doc.channel;
    tok.start = s * frame_rate;
    tok.duration = (e - s) * frame_rate;
    tok.surface = seq.words[i];
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace

std::string WriteCtmWithAlts(const AlternativesDoc &doc, double frame_rate) {
  std::vector<CtmItem> items;
  for (const auto &pos : doc.positions) {
    if (pos.alternatives.size() == 1) {
      for (auto &tok : TimedTokens(doc, pos, pos.alternatives.front(), frame_rate)) {
        items.emplace_back(std::move(tok));
      }
      continue;
    }
    CtmAltBlock block{doc.recording_id, doc.channel, {}};
    for (const auto &alt : pos.alternatives) {
      block.alternatives.push_back(TimedTokens(doc, pos, alt, frame_rate));
    }
    items.emplace_back(std::move(block));
  }
  return WriteCtm(items);
}

std::string WriteCtmWithAlts(const NBestList &nbest, double frame_rate) {
  return WriteCtmWithAlts(ToAlternativesDoc(nbest), frame_rate);
}

}  // namespace altscore
