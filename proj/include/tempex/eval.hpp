// Copyright 2026 The Tempex Authors
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

#ifndef TEMPEX_EVAL_HPP_
#define TEMPEX_EVAL_HPP_

// Scoring against gold annotations: strict-extent precision/recall/F1,
// all-or-nothing attribute accuracy over extent-matched timexes, and
// relation label accuracy. Attribute and value credit requires exact string
// equality; a near-miss ("1990-05" against "1990-05-14") scores zero.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tempex/corpus.hpp"

namespace tempex {

struct ExtentScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

enum class TimexAttribute { kType, kValue };

// Marker for an undefined accuracy (empty denominator); printed as "n/a".
inline double undefined_accuracy() {
  return std::numeric_limits<double>::quiet_NaN();
}

inline bool is_undefined(double accuracy) { return std::isnan(accuracy); }

// Strict span matching: a prediction scores only when (sentence, start, end)
// all agree. With no predictions precision is 1.0 by convention; with no
// gold, recall is.
inline ExtentScore score_extents(const std::vector<Span>& gold,
                                 const std::vector<Span>& pred) {
  std::vector<Span> g = gold, p = pred;
  std::sort(g.begin(), g.end());
  std::sort(p.begin(), p.end());
  long tp = 0;
  size_t i = 0, j = 0;
  while (i < g.size() && j < p.size()) {
    if (g[i] == p[j]) {
      ++tp, ++i, ++j;
    } else if (g[i] < p[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  ExtentScore score;
  score.tp = tp;
  score.fp = static_cast<long>(p.size()) - tp;
  score.fn = static_cast<long>(g.size()) - tp;
  score.precision = p.empty() ? 1.0 : static_cast<double>(tp) / p.size();
  score.recall = g.empty() ? 1.0 : static_cast<double>(tp) / g.size();
  double pr = score.precision + score.recall;
  score.f1 = pr > 0.0 ? 2.0 * score.precision * score.recall / pr : 0.0;
  return score;
}

// Raw numerator/denominator behind an accuracy; lets callers aggregate
// across documents before dividing.
struct AccuracyCounts {
  long total = 0;
  long correct = 0;

  double accuracy() const {
    if (total == 0) return undefined_accuracy();
    return static_cast<double>(correct) / static_cast<double>(total);
  }
};

inline AccuracyCounts attribute_counts(const std::vector<TimexAnnotation>& gold,
                                       const std::vector<TimexAnnotation>& pred,
                                       TimexAttribute attr) {
  AccuracyCounts counts;
  for (const auto& g : gold) {
    const TimexAnnotation* p = nullptr;
    for (const auto& candidate : pred) {
      if (candidate.span == g.span) {
        p = &candidate;
        break;
      }
    }
    if (!p) continue;
    if (attr == TimexAttribute::kType) {
      ++counts.total;
      if (p->type == g.type) ++counts.correct;
    } else {
      if (!g.value) continue;  // gold provides no target value
      ++counts.total;
      if (p->value && *p->value == *g.value) ++counts.correct;
    }
  }
  return counts;
}

// Accuracy of one timex attribute over strict-extent-matched pairs. A
// missing predicted value counts as wrong; with no matched pairs the
// accuracy is undefined ("n/a").
inline double score_attribute(const std::vector<TimexAnnotation>& gold,
                              const std::vector<TimexAnnotation>& pred,
                              TimexAttribute attr) {
  return attribute_counts(gold, pred, attr).accuracy();
}

inline AccuracyCounts relation_counts(
    const std::vector<std::pair<std::string, RelationLabel>>& gold,
    const std::vector<std::pair<std::string, RelationLabel>>& pred) {
  AccuracyCounts counts;
  std::map<std::string, RelationLabel> predicted(pred.begin(), pred.end());
  for (const auto& [id, label] : gold) {
    ++counts.total;
    auto it = predicted.find(id);
    if (it != predicted.end() && it->second == label) ++counts.correct;
  }
  return counts;
}

// Fraction of gold instances whose predicted label matches. A gold id with
// no prediction counts as wrong; predictions for unknown ids are ignored.
inline double score_relations(
    const std::vector<std::pair<std::string, RelationLabel>>& gold,
    const std::vector<std::pair<std::string, RelationLabel>>& pred) {
  return relation_counts(gold, pred).accuracy();
}

// Full report for a (gold, predicted) document pair.
struct ScoreReport {
  ExtentScore extent;
  double type_accuracy = 0.0;
  double value_accuracy = 0.0;
  double relation_accuracy = 0.0;
};

inline ScoreReport score_documents(const Document& gold,
                                   const Document& pred) {
  ScoreReport report;
  std::vector<Span> gold_spans, pred_spans;
  for (const auto& t : gold.timexes) gold_spans.push_back(t.span);
  for (const auto& t : pred.timexes) pred_spans.push_back(t.span);
  report.extent = score_extents(gold_spans, pred_spans);
  report.type_accuracy =
      score_attribute(gold.timexes, pred.timexes, TimexAttribute::kType);
  report.value_accuracy =
      score_attribute(gold.timexes, pred.timexes, TimexAttribute::kValue);
  std::vector<std::pair<std::string, RelationLabel>> gold_rel, pred_rel;
  for (const auto& r : gold.relations) {
    if (r.label) gold_rel.emplace_back(r.id, *r.label);
  }
  for (const auto& r : pred.relations) {
    if (r.label) pred_rel.emplace_back(r.id, *r.label);
  }
  report.relation_accuracy = score_relations(gold_rel, pred_rel);
  return report;
}

}  // namespace tempex

#endif  // TEMPEX_EVAL_HPP_
