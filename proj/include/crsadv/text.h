//
// Copyright 2026 The crsadv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef CRSADV_TEXT_H_
#define CRSADV_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crsadv/types.h"

// ASCII-level text helpers shared by every module. Non-ASCII bytes are
// treated as word characters and passed through untouched.
namespace crsadv::text {

std::string AsciiLower(std::string_view s);
std::string_view Trim(std::string_view s);
bool IsSpace(char c);
bool IsWordChar(char c);

// Byte spans of maximal non-whitespace runs.
std::vector<Span> WordSpans(std::string_view s);
std::size_t CountWords(std::string_view s);

// Case-insensitive occurrences of `needle` in `haystack` that start and end
// on word boundaries. Occurrences do not overlap.
std::vector<Span> FindWordBounded(std::string_view haystack,
                                  std::string_view needle);

// Lowercased alphanumeric words ("Se7en (1995)!" -> {"se7en", "1995"}).
std::vector<std::string> NormalizedWords(std::string_view s);

std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

std::vector<std::string> Split(std::string_view s, char sep);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace crsadv::text

#endif  // CRSADV_TEXT_H_
