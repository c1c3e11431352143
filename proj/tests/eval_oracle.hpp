// Copyright 2026 The wikiner Authors.
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

#ifndef WIKINER_TESTS_EVAL_ORACLE_HPP_
#define WIKINER_TESTS_EVAL_ORACLE_HPP_

#include <cstddef>
#include <set>
#include <tuple>
#include <vector>

#include "core/eval.hpp"
#include "core/rng.hpp"
#include "test_util.hpp"

namespace wikiner::testing {

// Labels are read directly: O = 0, B-k = 1 + 2k, I-k = 2 + 2k. A span
// opens at any B, or at an I that does not continue a span of its class.
inline std::set<std::tuple<std::size_t, std::size_t, std::size_t>> OracleSpans(
    const std::vector<std::size_t>& labels) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i < labels.size()) {
    if (labels[i] == 0) {
      ++i;
      continue;
    }
    const std::size_t cls = (labels[i] - 1) / 2;
    std::size_t j = i + 1;
    while (j < labels.size() && labels[j] == 2 + 2 * cls) ++j;
    out.insert({i, j, cls});
    i = j;
  }
  return out;
}

struct OracleCounts {
  std::vector<std::size_t> tp, fp, fn;
};

inline OracleCounts OracleScore(const std::vector<std::vector<std::size_t>>& gold,
                                const std::vector<std::vector<std::size_t>>& pred,
                                std::size_t classes) {
  OracleCounts c{std::vector<std::size_t>(classes), std::vector<std::size_t>(classes),
                 std::vector<std::size_t>(classes)};
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto g = OracleSpans(gold[s]);
    const auto p = OracleSpans(pred[s]);
    for (const auto& span : p) {
      (g.count(span) ? c.tp : c.fp)[std::get<2>(span)]++;
    }
    for (const auto& span : g) {
      if (!p.count(span)) c.fn[std::get<2>(span)]++;
    }
  }
  return c;
}

// Number of cases that disagree with the oracle out of `cases` random
// corpora.
inline std::size_t EvalOracleMismatches(std::uint64_t seed, std::size_t cases) {
  const auto inv = ClassInventory::FromLists("PER,LOC", "FOOD");
  Rng rng(seed);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < cases; ++k) {
    std::vector<std::vector<std::size_t>> gold, pred;
    const auto sentences = 1 + rng.Below(4);
    for (std::size_t s = 0; s < sentences; ++s) {
      const auto n = rng.Below(10);
      gold.push_back(RandomBio(rng, n, 3));
      // Half the time a perturbed copy of gold, else anything.
      auto p = gold.back();
      if (rng.Below(2)) {
        p = RandomLabels(rng, n, inv.label_count());
      } else {
        for (auto& l : p) {
          if (rng.Below(4) == 0) l = static_cast<std::size_t>(rng.Below(inv.label_count()));
        }
      }
      pred.push_back(p);
    }
    const auto report = ScoreLabelSequences(gold, pred, inv);
    const auto oracle = OracleScore(gold, pred, 3);
    SpanCounts micro;
    bool ok = true;
    for (std::size_t c = 0; c < 3; ++c) {
      const SpanCounts expect{oracle.tp[c], oracle.fp[c], oracle.fn[c]};
      ok = ok && report.per_class[c] == expect;
      micro += expect;
    }
    ok = ok && report.micro == micro;
    if (!ok) ++mismatches;
  }
  return mismatches;
}

}  // namespace wikiner::testing

#endif  // WIKINER_TESTS_EVAL_ORACLE_HPP_
