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

#include "wmark/error.hpp"

namespace wmark {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Format: return "format";
    case ErrorKind::Unsupported: return "unsupported-format";
    case ErrorKind::Truncated: return "truncated";
    case ErrorKind::Io: return "io";
    case ErrorKind::UnsupportedBasis: return "unsupported-basis";
    case ErrorKind::Depth: return "depth";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::DegenerateKey: return "degenerate-key";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::EmptyVoiced: return "empty-voiced";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::SegmentTooShort: return "segment-too-short";
    case ErrorKind::Alignment: return "alignment";
    case ErrorKind::UndefinedRatio: return "undefined-ratio";
    case ErrorKind::UnsupportedRatio: return "unsupported-ratio";
    case ErrorKind::ExternalTool: return "external-tool";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace wmark
