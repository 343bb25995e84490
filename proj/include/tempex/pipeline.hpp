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

#ifndef TEMPEX_PIPELINE_HPP_
#define TEMPEX_PIPELINE_HPP_

// Recognize-then-normalize composition. Both the one-shot annotate flow and
// the split recognize/normalize flow go through attach_timexes, so their
// outputs are identical byte for byte.

#include <set>
#include <string>
#include <vector>

#include "tempex/corpus.hpp"
#include "tempex/normalizer.hpp"
#include "tempex/recognizer.hpp"

namespace tempex {

// Rules named `date:<something>` force DATE type on their matches.
inline bool rule_forces_date(const std::string& rule_name) {
  return rule_name.rfind("date:", 0) == 0;
}

// Normalizes every recognized span and installs the results as the
// document's timex layer, replacing any previous one. New annotations get
// ids t1, t2, ... in span order (skipping ids already taken by events); any
// relation that referenced a replaced timex is dropped.
inline Document attach_timexes(Document doc,
                               const std::vector<RuleMatch>& matches,
                               const NormalizerConfig& config) {
  std::set<std::string> taken;
  for (const auto& e : doc.events) taken.insert(e.id);

  doc.timexes.clear();
  int counter = 0;
  for (const auto& match : matches) {
    TimexAnnotation timex =
        normalize(match.span, doc, config, rule_forces_date(match.rule));
    do {
      timex.id = "t" + std::to_string(++counter);
    } while (taken.count(timex.id) > 0);
    taken.insert(timex.id);
    doc.timexes.push_back(std::move(timex));
  }

  std::vector<RelationInstance> kept;
  for (const auto& r : doc.relations) {
    if (taken.count(r.arg1) > 0 && taken.count(r.arg2) > 0) {
      kept.push_back(r);
    }
  }
  doc.relations = std::move(kept);
  return doc;
}

inline Document annotate_document(const Document& doc, const Ruleset& ruleset,
                                  const RecognizerConfig& recognizer_config,
                                  const NormalizerConfig& normalizer_config) {
  return attach_timexes(doc, recognize_matches(doc, ruleset, recognizer_config),
                        normalizer_config);
}

}  // namespace tempex

#endif  // TEMPEX_PIPELINE_HPP_
