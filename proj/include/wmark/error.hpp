// Copyright 2026 The wmark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wmark {

/// Error categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorKind {
  Format = 10,        // malformed container
  Unsupported,        // valid container, unsupported codec / channel layout / bit depth
  Truncated,
  Io,
  UnsupportedBasis,
  Depth,              // signal too short for the requested DWT depth
  Inconsistent,       // decomposition or silence map does not chain
  DegenerateKey,
  Parameter,
  EmptyVoiced,
  Capacity,
  SegmentTooShort,
  Alignment,
  UndefinedRatio,
  UnsupportedRatio,
  ExternalTool,
  Config,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace wmark
