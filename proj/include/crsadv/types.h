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

#ifndef CRSADV_TYPES_H_
#define CRSADV_TYPES_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace crsadv {

// Catalog identifier of a recommendable item (a movie or a book).
//
// Ids are opaque strings. Ordering is numeric when both ids are digit
// strings (REDIAL ids are integers) and lexicographic otherwise, so ranking
// tie-breaks read naturally in both datasets.
class ItemId {
 public:
  ItemId() = default;
  explicit ItemId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend bool operator==(const ItemId& a, const ItemId& b) = default;
  friend std::strong_ordering operator<=>(const ItemId& a, const ItemId& b);

 private:
  std::string value_;
};

enum class Domain { kMovie, kBook };
enum class Speaker { kSeeker, kRecommender };

std::string_view ToString(Domain domain);
std::string_view ToString(Speaker speaker);
std::optional<Domain> ParseDomain(std::string_view text);
std::optional<Speaker> ParseSpeaker(std::string_view text);

// Half-open byte range [start, end) into a UTF-8 string.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool Overlaps(const Span& other) const {
    return start < other.end && other.start < end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

}  // namespace crsadv

template <>
struct std::hash<crsadv::ItemId> {
  std::size_t operator()(const crsadv::ItemId& id) const noexcept {
    return std::hash<std::string>()(id.str());
  }
};

#endif  // CRSADV_TYPES_H_
