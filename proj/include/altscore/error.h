// altscore/error.h

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

#ifndef ALTSCORE_ERROR_H_
#define ALTSCORE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace altscore {

/// Bad user input: malformed files, invalid arguments, unusable lattices.
/// The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A line-oriented parse failure. `line` is 1-based; 0 means "whole input".
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string &field, const std::string &what)
      : InputError(Compose(line, field, what)), line_(line), field_(field) {}

  std::size_t line() const { return line_; }
  const std::string &field() const { return field_; }

 private:
  static std::string Compose(std::size_t line, const std::string &field,
                             const std::string &what) {
    std::string msg = "line " + std::to_string(line);
    if (!field.empty()) msg += ", field '" + field + "'";
    return msg + ": " + what;
  }

  std::size_t line_;
  std::string field_;
};

/// Broken internal invariant (a bug, or a precondition the caller skipped).
/// The CLI maps these to exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace altscore

#endif  // ALTSCORE_ERROR_H_
