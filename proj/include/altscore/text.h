// altscore/text.h

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

#ifndef ALTSCORE_TEXT_H_
#define ALTSCORE_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace altscore {

/// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> SplitFields(std::string_view line);

std::string_view Trim(std::string_view s);

/// ASCII uppercase. Non-ASCII bytes (UTF-8 continuation etc.) pass through.
std::string ToUpper(std::string_view s);

bool StartsWith(std::string_view s, std::string_view prefix);

/// Splits text into lines, dropping a trailing '\r' on each.
std::vector<std::string_view> SplitLines(std::string_view text);

/// Strict numeric parsing; whole field must be consumed.
std::optional<double> ParseDouble(std::string_view s);
std::optional<long long> ParseInt(std::string_view s);

/// Shortest decimal that round-trips to the same double ("4.49", "12", "0.5").
std::string FormatShortest(double v);

/// Seconds, snapped to microseconds before shortest formatting so that
/// frame * rate products print as "4.49" rather than "4.4900000000000002".
std::string FormatSeconds(double seconds);

/// Fixed-point with `decimals` digits. Exact binary ties round half-to-even.
std::string FormatFixed(double v, int decimals);

std::string Join(const std::vector<std::string> &words, std::string_view sep = " ");

}  // namespace altscore

#endif  // ALTSCORE_TEXT_H_
