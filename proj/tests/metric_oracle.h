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

#ifndef CRSADV_TESTS_METRIC_ORACLE_H_
#define CRSADV_TESTS_METRIC_ORACLE_H_

#include <cmath>
#include <vector>

#include "crsadv/types.h"

// Brute-force ranking metrics written without any library helper: scans
// the top-k positions and checks each against every truth item.
namespace crsadv::testing {

struct OracleValues {
  double hit = 0.0;
  double mrr = 0.0;
  double ndcg = 0.0;
};

inline OracleValues OracleAt(const std::vector<ItemId>& truth,
                             const std::vector<ItemId>& ranking, int k) {
  OracleValues v;
  for (int pos = 1; pos <= k && pos <= static_cast<int>(ranking.size()); ++pos) {
    bool relevant = false;
    for (const ItemId& t : truth) relevant = relevant || t == ranking[pos - 1];
    if (!relevant) continue;
    v.hit = 1.0;
    v.mrr = 1.0 / pos;
    // One relevant item: the ideal DCG is 1 / log2(2) = 1.
    v.ndcg = (1.0 / std::log2(pos + 1.0)) / (1.0 / std::log2(2.0));
    break;
  }
  return v;
}

}  // namespace crsadv::testing

#endif  // CRSADV_TESTS_METRIC_ORACLE_H_
