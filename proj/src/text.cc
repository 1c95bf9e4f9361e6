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

#include "crsadv/text.h"

namespace crsadv::text {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsWordChar(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || u >= 0x80;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::vector<Span> WordSpans(std::string_view s) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    if (i == s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    spans.push_back({start, i});
  }
  return spans;
}

std::size_t CountWords(std::string_view s) { return WordSpans(s).size(); }

std::vector<Span> FindWordBounded(std::string_view haystack,
                                  std::string_view needle) {
  std::vector<Span> found;
  if (needle.empty() || needle.size() > haystack.size()) return found;
  const std::string hay = AsciiLower(haystack);
  const std::string pat = AsciiLower(needle);
  const bool starts_word = IsWordChar(pat.front());
  const bool ends_word = IsWordChar(pat.back());
  std::size_t pos = 0;
  while ((pos = hay.find(pat, pos)) != std::string::npos) {
    const std::size_t end = pos + pat.size();
    const bool left_ok = !starts_word || pos == 0 || !IsWordChar(hay[pos - 1]);
    const bool right_ok =
        !ends_word || end == hay.size() || !IsWordChar(hay[end]);
    if (left_ok && right_ok) {
      found.push_back({pos, end});
      pos = end;
    } else {
      ++pos;
    }
  }
  return found;
}

std::vector<std::string> NormalizedWords(std::string_view s) {
  std::vector<std::string> words;
  std::string current;
  for (char c : s) {
    if (IsWordChar(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                             : c);
    } else if (c == '\'' && !current.empty()) {
      // Keep contractions together: "don't" is one word.
      current.push_back(c);
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  for (std::string& w : words) {
    while (!w.empty() && w.back() == '\'') w.pop_back();
  }
  return words;
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace crsadv::text
