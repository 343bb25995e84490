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

#ifndef TEMPEX_SIGNALS_HPP_
#define TEMPEX_SIGNALS_HPP_

// Temporal signal words: a phrase lexicon mapping each signal to the
// relation it suggests in surface order, plus in-sentence mention detection
// and signal/entity-pair association. The hint is never inverted here;
// whether word order flips the relation is the classifier's concern.

#include <algorithm>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "tempex/corpus.hpp"
#include "tempex/normalizer.hpp"  // words::lower

namespace tempex {

struct SignalLexicon {
  // Lower-case phrase -> suggested relation, in file order.
  std::vector<std::pair<std::string, RelationLabel>> entries;

  std::optional<RelationLabel> hint_for(const std::string& phrase) const {
    for (const auto& [p, hint] : entries) {
      if (p == phrase) return hint;
    }
    return std::nullopt;
  }

  // Longest phrase, in tokens; bounds the mention scan window.
  int max_phrase_tokens() const {
    int max = 0;
    for (const auto& [phrase, hint] : entries) {
      int n = 1 + static_cast<int>(
                      std::count(phrase.begin(), phrase.end(), ' '));
      if (n > max) max = n;
    }
    return max;
  }
};

struct SignalMention {
  Span span;
  std::string phrase;  // lower-case lexicon form
  RelationLabel hint;

  friend bool operator==(const SignalMention&, const SignalMention&) = default;
};

// Reads `phrase<TAB>hint` lines; blank lines and '#' comments are skipped.
// Throws ParseError naming the offending line for unknown hint labels or
// duplicate phrases.
inline SignalLexicon load_lexicon(std::istream& in) {
  SignalLexicon out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError("lexicon line " + std::to_string(lineno) +
                       ": expected phrase<TAB>hint");
    }
    std::string phrase = words::lower(line.substr(0, tab));
    for (const auto& [existing, hint] : out.entries) {
      if (existing == phrase) {
        throw ParseError("lexicon line " + std::to_string(lineno) +
                         ": duplicate phrase '" + phrase + "'");
      }
    }
    RelationLabel hint;
    try {
      hint = parse_relation_label(line.substr(tab + 1));
    } catch (const ValidationError& e) {
      throw ParseError("lexicon line " + std::to_string(lineno) + ": " +
                       e.what());
    }
    out.entries.emplace_back(std::move(phrase), hint);
  }
  return out;
}

// Every maximal token window matching a lexicon phrase (case-insensitive)
// becomes a mention. Windows nested inside a longer match are suppressed;
// overlapping survivors keep the longer match, leftmost on ties. Output is
// ordered by position.
inline std::vector<SignalMention> identify_signals(
    const Sentence& sentence, const SignalLexicon& lexicon) {
  int len = static_cast<int>(sentence.tokens.size());
  int cap = lexicon.max_phrase_tokens();
  if (cap > len) cap = len;

  std::vector<SignalMention> hits;
  for (int start = 0; start < len; ++start) {
    std::string surface;
    for (int n = 1; n <= cap && start + n <= len; ++n) {
      if (n > 1) surface += ' ';
      surface += words::lower(sentence.tokens[static_cast<size_t>(start + n - 1)]);
      if (auto hint = lexicon.hint_for(surface)) {
        hits.push_back({Span{sentence.index, start, start + n}, surface, *hint});
      }
    }
  }

  std::vector<SignalMention> maximal;
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
  std::stable_sort(maximal.begin(), maximal.end(),
                   [](const SignalMention& a, const SignalMention& b) {
                     if (a.span.length() != b.span.length()) {
                       return a.span.length() > b.span.length();
                     }
                     return a.span.start < b.span.start;
                   });
  std::vector<SignalMention> kept;
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
  std::sort(kept.begin(), kept.end(),
            [](const SignalMention& a, const SignalMention& b) {
              return a.span < b.span;
            });
  return kept;
}

namespace detail {

// Clause segments: maximal token runs delimited by sentence-internal
// ',' ';' ':' tokens. Returns the segment index of every token.
inline std::vector<int> clause_segments(const Sentence& sentence) {
  std::vector<int> segment(sentence.tokens.size(), 0);
  int current = 0;
  for (size_t i = 0; i < sentence.tokens.size(); ++i) {
    const std::string& tok = sentence.tokens[i];
    if (tok == "," || tok == ";" || tok == ":") {
      segment[i] = current;
      ++current;
    } else {
      segment[i] = current;
    }
  }
  return segment;
}

// Token gap between two spans in the same sentence; 0 when they touch or
// overlap.
inline int token_distance(const Span& a, const Span& b) {
  if (a.end <= b.start) return b.start - a.end;
  if (b.end <= a.start) return a.start - b.end;
  return 0;
}

}  // namespace detail

// Picks the signal for an entity pair: among mentions in the same clause
// segment as either argument, the one closest (in tokens) to the nearer
// argument wins; ties go to the textually earlier signal. Returns absent
// when no same-clause signal exists. Cross-sentence pairs have no signal by
// construction; callers emit NONE sentinels for them.
inline std::optional<SignalMention> associate_signal(
    const Span& arg1, const Span& arg2, const Sentence& sentence,
    const std::vector<SignalMention>& signals) {
  std::vector<int> segment = detail::clause_segments(sentence);
  auto segment_of = [&](const Span& span) {
    return segment[static_cast<size_t>(span.start)];
  };
  int seg1 = segment_of(arg1);
  int seg2 = segment_of(arg2);

  std::optional<SignalMention> best;
  int best_distance = 0;
  for (const auto& signal : signals) {
    int seg = segment_of(signal.span);
    if (seg != seg1 && seg != seg2) continue;
    int distance = std::min(detail::token_distance(signal.span, arg1),
                            detail::token_distance(signal.span, arg2));
    if (!best || distance < best_distance) {
      best = signal;
      best_distance = distance;
    }
  }
  return best;
}

}  // namespace tempex

#endif  // TEMPEX_SIGNALS_HPP_
