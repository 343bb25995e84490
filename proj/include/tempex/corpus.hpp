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

#ifndef TEMPEX_CORPUS_HPP_
#define TEMPEX_CORPUS_HPP_

// Canonical document model: tokenized sentences anchored to a document
// creation time, with event/timex/relation annotation layers and a strict
// JSON wire format. Documents are immutable after parsing and safe to share
// across threads.

#include <algorithm>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tempex/calendar.hpp"

namespace tempex {

// Token window within one sentence: [start, end) with 0 <= start < end.
struct Span {
  int sentence = 0;
  int start = 0;
  int end = 0;

  int length() const { return end - start; }

  // True when *this lies strictly inside other (other covers more).
  bool inside(const Span& other) const {
    return sentence == other.sentence && other.start <= start &&
           end <= other.end && other.length() > length();
  }

  bool overlaps(const Span& other) const {
    return sentence == other.sentence && start < other.end &&
           other.start < end;
  }

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Sentence {
  int index = 0;
  std::vector<std::string> tokens;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

enum class TimexType { kDate, kDuration };

inline std::string to_string(TimexType t) {
  return t == TimexType::kDate ? "DATE" : "DURATION";
}

inline TimexType parse_timex_type(const std::string& s) {
  if (s == "DATE") return TimexType::kDate;
  if (s == "DURATION") return TimexType::kDuration;
  throw ValidationError("unknown timex type '" + s + "'");
}

// The six TempEval relation labels, lower-case on the wire.
enum class RelationLabel {
  kBefore,
  kAfter,
  kOverlap,
  kBeforeOrOverlap,
  kOverlapOrAfter,
  kVague,
};

inline const std::vector<std::string>& relation_label_names() {
  static const std::vector<std::string> kNames = {
      "before", "after", "overlap", "before-or-overlap", "overlap-or-after",
      "vague"};
  return kNames;
}

inline std::string to_string(RelationLabel label) {
  return relation_label_names()[static_cast<int>(label)];
}

inline RelationLabel parse_relation_label(const std::string& s) {
  const auto& names = relation_label_names();
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == s) return static_cast<RelationLabel>(i);
  }
  throw ValidationError("unknown relation label '" + s + "'");
}

struct TimexAnnotation {
  std::string id;
  Span span;
  TimexType type = TimexType::kDate;
  // Absent when the normalizer could not anchor the expression.
  std::optional<std::string> value;

  friend bool operator==(const TimexAnnotation&, const TimexAnnotation&) =
      default;
};

struct EventAnnotation {
  std::string id;
  Span span;
  std::string tense;
  std::string aspect;
  std::string polarity;  // "pos" or "neg"
  std::string modality;

  friend bool operator==(const EventAnnotation&, const EventAnnotation&) =
      default;
};

struct RelationInstance {
  std::string id;
  std::string arg1;
  std::string arg2;
  std::optional<RelationLabel> label;

  friend bool operator==(const RelationInstance&, const RelationInstance&) =
      default;
};

struct Document {
  std::string id;
  Date dct;
  std::vector<Sentence> sentences;
  std::vector<EventAnnotation> events;
  std::vector<TimexAnnotation> timexes;
  std::vector<RelationInstance> relations;

  const Sentence& sentence_of(const Span& span) const {
    return sentences.at(static_cast<size_t>(span.sentence));
  }

  // Space-joined token text covered by the span.
  std::string surface(const Span& span) const {
    const auto& toks = sentence_of(span).tokens;
    std::string out;
    for (int i = span.start; i < span.end; ++i) {
      if (i > span.start) out += ' ';
      out += toks[static_cast<size_t>(i)];
    }
    return out;
  }

  const EventAnnotation* find_event(const std::string& annotation_id) const {
    for (const auto& e : events) {
      if (e.id == annotation_id) return &e;
    }
    return nullptr;
  }

  const TimexAnnotation* find_timex(const std::string& annotation_id) const {
    for (const auto& t : timexes) {
      if (t.id == annotation_id) return &t;
    }
    return nullptr;
  }

  friend bool operator==(const Document&, const Document&) = default;
};

inline bool valid_duration_value(const std::string& v) {
  static const std::regex kDuration(R"(P(\d+|X)[YMWD])");
  return std::regex_match(v, kDuration);
}

inline bool valid_date_value(const std::string& v) {
  static const std::regex kDate(
      R"(\d{4}(-\d{2}(-\d{2})?)?|\d{4}-W\d{2}|PRESENT_REF)");
  return std::regex_match(v, kDate);
}

inline void check_span(const Span& span, const Document& doc,
                       const std::string& owner) {
  if (span.sentence < 0 ||
      span.sentence >= static_cast<int>(doc.sentences.size())) {
    throw ValidationError(owner + ": sentence index " +
                          std::to_string(span.sentence) + " out of range");
  }
  int len = static_cast<int>(doc.sentences[span.sentence].tokens.size());
  if (!(0 <= span.start && span.start < span.end && span.end <= len)) {
    throw ValidationError(owner + ": span [" + std::to_string(span.start) +
                          "," + std::to_string(span.end) +
                          ") invalid for sentence of length " +
                          std::to_string(len));
  }
}

// Full-document consistency check; throws ValidationError naming the
// offending annotation.
inline void validate_document(const Document& doc) {
  if (doc.id.empty()) throw ValidationError("document id must be non-empty");
  check_date(doc.dct);
  for (size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto& s = doc.sentences[i];
    if (s.tokens.empty()) {
      throw ValidationError("sentence " + std::to_string(i) + " has no tokens");
    }
    for (const auto& tok : s.tokens) {
      if (tok.empty() || tok.find_first_of(" \t\n\r") != std::string::npos) {
        throw ValidationError("sentence " + std::to_string(i) +
                              " contains an empty or whitespace token");
      }
    }
  }
  std::set<std::string> entity_ids;
  for (const auto& e : doc.events) {
    if (e.id.empty()) throw ValidationError("event with empty id");
    if (!entity_ids.insert(e.id).second) {
      throw ValidationError("duplicate annotation id '" + e.id + "'");
    }
    check_span(e.span, doc, "event " + e.id);
    if (e.polarity != "pos" && e.polarity != "neg") {
      throw ValidationError("event " + e.id + ": polarity must be pos or neg");
    }
  }
  for (const auto& t : doc.timexes) {
    if (t.id.empty()) throw ValidationError("timex with empty id");
    if (!entity_ids.insert(t.id).second) {
      throw ValidationError("duplicate annotation id '" + t.id + "'");
    }
    check_span(t.span, doc, "timex " + t.id);
    if (t.value) {
      bool ok = t.type == TimexType::kDuration ? valid_duration_value(*t.value)
                                               : valid_date_value(*t.value);
      if (!ok) {
        throw ValidationError("timex " + t.id + ": value '" + *t.value +
                              "' invalid for type " + to_string(t.type));
      }
    }
  }
  std::set<std::string> relation_ids;
  for (const auto& r : doc.relations) {
    if (r.id.empty()) throw ValidationError("relation with empty id");
    if (!relation_ids.insert(r.id).second) {
      throw ValidationError("duplicate relation id '" + r.id + "'");
    }
    if (r.arg1 == r.arg2) {
      throw ValidationError("relation " + r.id + ": arg1 equals arg2");
    }
    for (const std::string* arg : {&r.arg1, &r.arg2}) {
      if (entity_ids.find(*arg) == entity_ids.end()) {
        throw ValidationError("relation " + r.id + ": argument '" + *arg +
                              "' does not resolve to any annotation");
      }
    }
  }
}

namespace detail {

using Json = nlohmann::ordered_json;

inline void reject_unknown_keys(const Json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

inline const Json& require(const Json& obj, const char* key,
                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError("missing key '" + std::string(key) + "' in " + where);
  }
  return *it;
}

inline std::string require_string(const Json& obj, const char* key,
                                  const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) {
    throw ParseError("key '" + std::string(key) + "' in " + where +
                     " must be a string");
  }
  return v.get<std::string>();
}

inline Span parse_span(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError("span in " + where + " must be an object");
  reject_unknown_keys(j, {"s", "start", "end"}, where + " span");
  Span span;
  for (auto [key, out] : {std::pair{"s", &span.sentence},
                          std::pair{"start", &span.start},
                          std::pair{"end", &span.end}}) {
    const Json& v = require(j, key, where + " span");
    if (!v.is_number_integer()) {
      throw ParseError("span field '" + std::string(key) + "' in " + where +
                       " must be an integer");
    }
    *out = v.get<int>();
  }
  return span;
}

inline Json span_to_json(const Span& span) {
  Json j;
  j["s"] = span.sentence;
  j["start"] = span.start;
  j["end"] = span.end;
  return j;
}

}  // namespace detail

// Parses a canonical-format JSON document. Unknown keys are rejected;
// annotation layers are optional. Throws ParseError for malformed input and
// ValidationError when the parsed document violates an invariant.
inline Document parse_document(const std::string& text) {
  using detail::Json;
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("document must be a JSON object");
  detail::reject_unknown_keys(
      root, {"id", "dct", "sentences", "events", "timexes", "relations"},
      "document");

  Document doc;
  doc.id = detail::require_string(root, "id", "document");
  doc.dct = parse_iso_date(detail::require_string(root, "dct", "document"));

  const Json& sentences = detail::require(root, "sentences", "document");
  if (!sentences.is_array()) {
    throw ParseError("'sentences' must be an array of token arrays");
  }
  int index = 0;
  for (const Json& sent : sentences) {
    if (!sent.is_array()) {
      throw ParseError("sentence " + std::to_string(index) +
                       " must be an array of tokens");
    }
    Sentence s;
    s.index = index++;
    for (const Json& tok : sent) {
      if (!tok.is_string()) {
        throw ParseError("tokens in sentence " + std::to_string(s.index) +
                         " must be strings");
      }
      s.tokens.push_back(tok.get<std::string>());
    }
    doc.sentences.push_back(std::move(s));
  }

  if (auto it = root.find("events"); it != root.end()) {
    if (!it->is_array()) throw ParseError("'events' must be an array");
    for (const Json& j : *it) {
      std::string where = "event";
      if (j.is_object() && j.contains("id") && j["id"].is_string()) {
        where += " " + j["id"].get<std::string>();
      }
      detail::reject_unknown_keys(
          j, {"id", "span", "tense", "aspect", "polarity", "modality"}, where);
      EventAnnotation e;
      e.id = detail::require_string(j, "id", where);
      e.span = detail::parse_span(detail::require(j, "span", where), where);
      e.tense = detail::require_string(j, "tense", where);
      e.aspect = detail::require_string(j, "aspect", where);
      e.polarity = detail::require_string(j, "polarity", where);
      e.modality = detail::require_string(j, "modality", where);
      doc.events.push_back(std::move(e));
    }
  }

  if (auto it = root.find("timexes"); it != root.end()) {
    if (!it->is_array()) throw ParseError("'timexes' must be an array");
    for (const Json& j : *it) {
      std::string where = "timex";
      if (j.is_object() && j.contains("id") && j["id"].is_string()) {
        where += " " + j["id"].get<std::string>();
      }
      detail::reject_unknown_keys(j, {"id", "span", "type", "value"}, where);
      TimexAnnotation t;
      t.id = detail::require_string(j, "id", where);
      t.span = detail::parse_span(detail::require(j, "span", where), where);
      t.type = parse_timex_type(detail::require_string(j, "type", where));
      if (j.contains("value")) {
        t.value = detail::require_string(j, "value", where);
      }
      doc.timexes.push_back(std::move(t));
    }
  }

  if (auto it = root.find("relations"); it != root.end()) {
    if (!it->is_array()) throw ParseError("'relations' must be an array");
    for (const Json& j : *it) {
      std::string where = "relation";
      if (j.is_object() && j.contains("id") && j["id"].is_string()) {
        where += " " + j["id"].get<std::string>();
      }
      detail::reject_unknown_keys(j, {"id", "arg1", "arg2", "label"}, where);
      RelationInstance r;
      r.id = detail::require_string(j, "id", where);
      r.arg1 = detail::require_string(j, "arg1", where);
      r.arg2 = detail::require_string(j, "arg2", where);
      if (j.contains("label")) {
        r.label = parse_relation_label(detail::require_string(j, "label", where));
      }
      doc.relations.push_back(std::move(r));
    }
  }

  validate_document(doc);
  return doc;
}

// Serializes a document to the canonical format. Output is deterministic and
// re-parses to a structurally identical document. Empty annotation layers are
// omitted.
inline std::string serialize(const Document& doc) {
  using detail::Json;
  Json root;
  root["id"] = doc.id;
  root["dct"] = format_date(doc.dct);
  Json sentences = Json::array();
  for (const auto& s : doc.sentences) {
    sentences.push_back(s.tokens);
  }
  root["sentences"] = std::move(sentences);
  if (!doc.events.empty()) {
    Json events = Json::array();
    for (const auto& e : doc.events) {
      Json j;
      j["id"] = e.id;
      j["span"] = detail::span_to_json(e.span);
      j["tense"] = e.tense;
      j["aspect"] = e.aspect;
      j["polarity"] = e.polarity;
      j["modality"] = e.modality;
      events.push_back(std::move(j));
    }
    root["events"] = std::move(events);
  }
  if (!doc.timexes.empty()) {
    Json timexes = Json::array();
    for (const auto& t : doc.timexes) {
      Json j;
      j["id"] = t.id;
      j["span"] = detail::span_to_json(t.span);
      j["type"] = to_string(t.type);
      if (t.value) j["value"] = *t.value;
      timexes.push_back(std::move(j));
    }
    root["timexes"] = std::move(timexes);
  }
  if (!doc.relations.empty()) {
    Json relations = Json::array();
    for (const auto& r : doc.relations) {
      Json j;
      j["id"] = r.id;
      j["arg1"] = r.arg1;
      j["arg2"] = r.arg2;
      if (r.label) j["label"] = to_string(*r.label);
      relations.push_back(std::move(j));
    }
    root["relations"] = std::move(relations);
  }
  return root.dump(2) + "\n";
}

}  // namespace tempex

#endif  // TEMPEX_CORPUS_HPP_
