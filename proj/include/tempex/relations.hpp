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

#ifndef TEMPEX_RELATIONS_HPP_
#define TEMPEX_RELATIONS_HPP_

// Temporal relation labeling: builds categorical feature vectors for entity
// pairs (event attributes, timex descriptions, associated-signal block, word
// order, and per-interval position buckets) and drives per-task training and
// prediction. Two task shapes are supported: event/timex pairs within one
// sentence, and main-event pairs in adjacent sentences. Both share one
// feature schema; features that do not apply to an argument kind emit the
// NONE sentinel.

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "tempex/corpus.hpp"
#include "tempex/maxent.hpp"
#include "tempex/signals.hpp"

namespace tempex {

// Bumped whenever the emitted feature names or their order change; stored in
// trained models and checked before prediction.
inline constexpr const char* kFeatureSchemaVersion = "tlink-features-1";

inline constexpr const char* kNoneSentinel = "NONE";

enum class Task {
  kIntraSentenceEventTimex,   // event + timex in the same sentence
  kConsecutiveMainEvents,     // main events in adjacent sentences
};

inline Task parse_task(const std::string& s) {
  if (s == "C") return Task::kIntraSentenceEventTimex;
  if (s == "E") return Task::kConsecutiveMainEvents;
  throw ValidationError("unknown task '" + s + "' (expected C or E)");
}

namespace detail {

// One argument of a relation instance, resolved to its annotation.
struct Interval {
  Span span;
  bool is_event = false;
  const EventAnnotation* event = nullptr;
  const TimexAnnotation* timex = nullptr;

  std::string kind() const { return is_event ? "event" : "timex"; }
};

inline Interval resolve_interval(const Document& doc, const std::string& id,
                                 const std::string& relation_id) {
  Interval out;
  if (const EventAnnotation* e = doc.find_event(id)) {
    out.is_event = true;
    out.event = e;
    out.span = e->span;
    return out;
  }
  if (const TimexAnnotation* t = doc.find_timex(id)) {
    out.timex = t;
    out.span = t->span;
    return out;
  }
  throw ValidationError("relation " + relation_id + ": argument '" + id +
                        "' does not resolve to any annotation");
}

inline bool fits_task_shape(const Interval& a, const Interval& b, Task task) {
  switch (task) {
    case Task::kIntraSentenceEventTimex:
      return a.is_event != b.is_event && a.span.sentence == b.span.sentence;
    case Task::kConsecutiveMainEvents:
      return a.is_event && b.is_event &&
             std::abs(a.span.sentence - b.span.sentence) == 1;
  }
  return false;
}

inline std::string bool_feature(bool v) { return v ? "true" : "false"; }

}  // namespace detail

inline bool matches_task_shape(const RelationInstance& instance,
                               const Document& doc, Task task) {
  detail::Interval a = detail::resolve_interval(doc, instance.arg1, instance.id);
  detail::Interval b = detail::resolve_interval(doc, instance.arg2, instance.id);
  return detail::fits_task_shape(a, b, task);
}

// Emits the fixed feature schema for an entity pair. Throws ValidationError
// when an argument does not resolve or the argument kinds do not fit the
// task shape.
inline FeatureVector extract_features(const RelationInstance& instance,
                                      const Document& doc,
                                      const SignalLexicon& lexicon,
                                      Task task) {
  detail::Interval args[2] = {
      detail::resolve_interval(doc, instance.arg1, instance.id),
      detail::resolve_interval(doc, instance.arg2, instance.id)};
  if (!detail::fits_task_shape(args[0], args[1], task)) {
    throw ValidationError("relation " + instance.id +
                          ": argument kinds/positions do not fit the task");
  }

  FeatureVector v;

  // Event attribute block, one per argument.
  for (int i = 0; i < 2; ++i) {
    std::string prefix = "arg" + std::to_string(i + 1) + "_";
    if (args[i].is_event) {
      v.add(prefix + "tense", args[i].event->tense);
      v.add(prefix + "aspect", args[i].event->aspect);
      v.add(prefix + "polarity", args[i].event->polarity);
      v.add(prefix + "modality", args[i].event->modality);
    } else {
      v.add(prefix + "tense", kNoneSentinel);
      v.add(prefix + "aspect", kNoneSentinel);
      v.add(prefix + "polarity", kNoneSentinel);
      v.add(prefix + "modality", kNoneSentinel);
    }
  }

  // Timex description block: the timex argument of an event/timex pair.
  const TimexAnnotation* timex =
      !args[0].is_event ? args[0].timex : (!args[1].is_event ? args[1].timex
                                                             : nullptr);
  if (timex) {
    v.add("timex_type", to_string(timex->type));
    v.add("timex_value", timex->value ? *timex->value : kNoneSentinel);
  } else {
    v.add("timex_type", kNoneSentinel);
    v.add("timex_value", kNoneSentinel);
  }

  // Associated-signal block. Signals are sentence-internal, so
  // cross-sentence pairs always emit sentinels.
  std::optional<SignalMention> signal;
  if (args[0].span.sentence == args[1].span.sentence) {
    const Sentence& sentence = doc.sentence_of(args[0].span);
    signal = associate_signal(args[0].span, args[1].span, sentence,
                              identify_signals(sentence, lexicon));
  }
  if (signal) {
    v.add("signal_text", signal->phrase);
    v.add("signal_hint", to_string(signal->hint));
    v.add("arg1_before_signal",
          detail::bool_feature(args[0].span.start < signal->span.start));
    v.add("signal_before_arg2",
          detail::bool_feature(signal->span.start < args[1].span.start));
  } else {
    v.add("signal_text", kNoneSentinel);
    v.add("signal_hint", kNoneSentinel);
    v.add("arg1_before_signal", kNoneSentinel);
    v.add("signal_before_arg2", kNoneSentinel);
  }

  // Pair block.
  auto attr_or_none = [](const detail::Interval& arg, auto getter) {
    return arg.is_event ? getter(*arg.event) : std::string(kNoneSentinel);
  };
  std::string tense1 = attr_or_none(args[0], [](const auto& e) { return e.tense; });
  std::string tense2 = attr_or_none(args[1], [](const auto& e) { return e.tense; });
  std::string aspect1 = attr_or_none(args[0], [](const auto& e) { return e.aspect; });
  std::string aspect2 = attr_or_none(args[1], [](const auto& e) { return e.aspect; });
  v.add("same_tense", detail::bool_feature(tense1 == tense2));
  v.add("same_aspect", detail::bool_feature(aspect1 == aspect2));
  bool arg1_first = args[0].span.sentence != args[1].span.sentence
                        ? args[0].span.sentence < args[1].span.sentence
                        : args[0].span.start < args[1].span.start;
  v.add("arg1_before_arg2", detail::bool_feature(arg1_first));

  // Interval block: position bucket (start token / 5), surface, kind.
  for (int i = 0; i < 2; ++i) {
    std::string prefix = "arg" + std::to_string(i + 1) + "_";
    v.add(prefix + "tokbucket", std::to_string(args[i].span.start / 5));
    v.add(prefix + "text", words::lower(doc.surface(args[i].span)));
    v.add(prefix + "kind", args[i].kind());
  }

  return v;
}

struct TrainingSet {
  std::vector<TrainingExample> examples;
  int skipped = 0;  // instances whose shape did not fit the task
};

// Collects one labeled feature vector per gold instance fitting the task
// shape. Instances of a different shape are counted and skipped; a
// task-shaped instance without a gold label is an error.
inline TrainingSet build_training_set(const std::vector<Document>& documents,
                                      Task task,
                                      const SignalLexicon& lexicon) {
  TrainingSet out;
  for (const Document& doc : documents) {
    for (const RelationInstance& instance : doc.relations) {
      if (!matches_task_shape(instance, doc, task)) {
        ++out.skipped;
        continue;
      }
      if (!instance.label) {
        throw ValidationError("relation " + instance.id + " in document " +
                              doc.id + " has no gold label");
      }
      out.examples.emplace_back(extract_features(instance, doc, lexicon, task),
                                to_string(*instance.label));
    }
  }
  return out;
}

struct PredictedRelation {
  std::string document_id;
  std::string instance_id;
  RelationLabel label;
};

// Labels every task-shaped unlabeled instance with the classifier argmax.
// Deterministic given (model, documents). Throws when the model's feature
// schema differs from this code's.
inline std::vector<PredictedRelation> label_relations(
    const std::vector<Document>& documents, Task task,
    const MaxEntModel& model, const SignalLexicon& lexicon) {
  if (model.schema_version() != kFeatureSchemaVersion) {
    throw ValidationError("model feature schema '" + model.schema_version() +
                          "' does not match '" + kFeatureSchemaVersion + "'");
  }
  std::vector<PredictedRelation> out;
  for (const Document& doc : documents) {
    for (const RelationInstance& instance : doc.relations) {
      if (instance.label) continue;
      if (!matches_task_shape(instance, doc, task)) continue;
      FeatureVector features = extract_features(instance, doc, lexicon, task);
      out.push_back({doc.id, instance.id,
                     parse_relation_label(predict(model, features))});
    }
  }
  return out;
}

}  // namespace tempex

#endif  // TEMPEX_RELATIONS_HPP_
