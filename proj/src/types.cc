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

#include "crsadv/types.h"

#include <algorithm>

namespace crsadv {
namespace {

bool IsDigits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view StripLeadingZeros(std::string_view s) {
  const std::size_t first = s.find_first_not_of('0');
  return first == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(first);
}

}  // namespace

std::strong_ordering operator<=>(const ItemId& a, const ItemId& b) {
  if (IsDigits(a.value_) && IsDigits(b.value_)) {
    const std::string_view x = StripLeadingZeros(a.value_);
    const std::string_view y = StripLeadingZeros(b.value_);
    if (x.size() != y.size()) return x.size() <=> y.size();
    if (auto c = x.compare(y); c != 0) return c <=> 0;
  }
  return a.value_.compare(b.value_) <=> 0;
}

std::string_view ToString(Domain domain) {
  return domain == Domain::kMovie ? "movie" : "book";
}

std::string_view ToString(Speaker speaker) {
  return speaker == Speaker::kSeeker ? "seeker" : "recommender";
}

std::optional<Domain> ParseDomain(std::string_view text) {
  if (text == "movie") return Domain::kMovie;
  if (text == "book") return Domain::kBook;
  return std::nullopt;
}

std::optional<Speaker> ParseSpeaker(std::string_view text) {
  if (text == "seeker") return Speaker::kSeeker;
  if (text == "recommender") return Speaker::kRecommender;
  return std::nullopt;
}

}  // namespace crsadv
