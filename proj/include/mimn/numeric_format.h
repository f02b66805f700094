// Copyright 2026 The MIMN Authors. All Rights Reserved.
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

#ifndef MIMN_NUMERIC_FORMAT_H_
#define MIMN_NUMERIC_FORMAT_H_

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace mimn {

// Shortest decimal form that parses back to exactly v (at most 17
// significant digits).
inline std::string FormatShortest(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

// Whole-string decimal parse; nullopt on any trailing garbage.
inline std::optional<double> ParseDouble(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), v);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return v;
}

}  // namespace mimn

#endif  // MIMN_NUMERIC_FORMAT_H_
