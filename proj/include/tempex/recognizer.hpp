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

#ifndef TEMPEX_RECOGNIZER_HPP_
#define TEMPEX_RECOGNIZER_HPP_

// Temporal-expression recognition: slides token n-grams over each sentence,
// matches the space-joined window against a regex ruleset, and keeps the
// maximal non-overlapped matches.
//
// Matching is case-insensitive and implicitly anchored to the whole window.
// A window that matches but lies strictly inside another matching window is
// dropped; overlapping (non-nested) survivors are resolved by keeping the
// longer match, leftmost on ties.

#include <istream>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "tempex/corpus.hpp"

namespace tempex {

struct Rule {
  std::string name;
  std::string pattern;  // source text, kept for diagnostics
  std::regex regex;
};

struct Ruleset {
  std::vector<Rule> rules;
};

struct RecognizerConfig {
  int max_n = 5;  // n-gram ceiling
};

// Reads rules from `name<TAB>pattern` lines. Blank lines and lines starting
// with '#' are skipped. Throws ParseError citing the offending line.
inline Ruleset load_ruleset(std::istream& in) {
  Ruleset out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError("ruleset line " + std::to_string(lineno) +
                       ": expected name<TAB>pattern");
    }
    Rule rule;
    rule.name = line.substr(0, tab);
    rule.pattern = line.substr(tab + 1);
    for (const auto& existing : out.rules) {
      if (existing.name == rule.name) {
        throw ParseError("ruleset line " + std::to_string(lineno) +
                         ": duplicate rule name '" + rule.name + "'");
      }
    }
    try {
      rule.regex.assign(rule.pattern, std::regex_constants::ECMAScript |
                                          std::regex_constants::icase);
    } catch (const std::regex_error& e) {
      throw ParseError("ruleset line " + std::to_string(lineno) +
                       ": pattern for rule '" + rule.name +
                       "' does not compile: " + e.what());
    }
    out.rules.push_back(std::move(rule));
  }
  return out;
}

// All contiguous token windows of length 1..min(max_n, sentence length),
// each paired with its space-joined surface string, ordered by
// (start, length).
inline std::vector<std::pair<Span, std::string>> candidate_spans(
    const Sentence& sentence, const RecognizerConfig& config) {
  std::vector<std::pair<Span, std::string>> out;
  int len = static_cast<int>(sentence.tokens.size());
  int cap = config.max_n < len ? config.max_n : len;
  for (int start = 0; start < len; ++start) {
    std::string surface;
    for (int n = 1; n <= cap && start + n <= len; ++n) {
      if (n > 1) surface += ' ';
      surface += sentence.tokens[static_cast<size_t>(start + n - 1)];
      out.push_back({Span{sentence.index, start, start + n}, surface});
    }
  }
  return out;
}

// A recognized span together with the first rule (in file order) whose
// pattern matches its surface.
struct RuleMatch {
  Span span;
  std::string rule;
};

namespace detail {

inline const std::string* first_matching_rule(const Ruleset& ruleset,
                                              const std::string& surface) {
  for (const auto& rule : ruleset.rules) {
    if (std::regex_match(surface, rule.regex)) return &rule.name;
  }
  return nullptr;
}

}  // namespace detail

// Recognizes temporal-expression spans in every sentence, reporting the
// matching rule for each kept span. Output is sorted by document position.
inline std::vector<RuleMatch> recognize_matches(const Document& doc,
                                                const Ruleset& ruleset,
                                                const RecognizerConfig& config) {
  std::vector<RuleMatch> out;
  for (const auto& sentence : doc.sentences) {
    std::vector<RuleMatch> hits;
    for (const auto& [span, surface] : candidate_spans(sentence, config)) {
      if (const std::string* name =
              detail::first_matching_rule(ruleset, surface)) {
        hits.push_back({span, *name});
      }
    }
    // Drop any hit strictly inside another hit.
    std::vector<RuleMatch> maximal;
    for (const auto& hit : hits) {
      bool nested = false;
      for (const auto& other : hits) {
        if (hit.span.inside(other.span)) {
          nested = true;
          break;
        }
      }
      if (!nested) maximal.push_back(hit);
    }
    // Resolve overlaps: longer first, leftmost on ties.
    std::stable_sort(maximal.begin(), maximal.end(),
                     [](const RuleMatch& a, const RuleMatch& b) {
                       if (a.span.length() != b.span.length()) {
                         return a.span.length() > b.span.length();
                       }
                       return a.span.start < b.span.start;
                     });
    std::vector<RuleMatch> kept;
    for (const auto& hit : maximal) {
      bool blocked = false;
      for (const auto& k : kept) {
        if (hit.span.overlaps(k.span)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) kept.push_back(hit);
    }
    std::sort(kept.begin(), kept.end(), [](const RuleMatch& a,
                                           const RuleMatch& b) {
      return a.span < b.span;
    });
    out.insert(out.end(), kept.begin(), kept.end());
  }
  return out;
}

inline std::vector<Span> recognize(const Document& doc, const Ruleset& ruleset,
                                   const RecognizerConfig& config) {
  std::vector<Span> out;
  for (const auto& match : recognize_matches(doc, ruleset, config)) {
    out.push_back(match.span);
  }
  return out;
}

}  // namespace tempex

#endif  // TEMPEX_RECOGNIZER_HPP_
