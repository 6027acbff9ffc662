#pragma once

// Review text preparation: tokenization, spell correction against a word
// frequency list, stopword removal and stemming.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hvd/error.hpp"
#include "hvd/stemmer.hpp"
#include "hvd/text_util.hpp"

namespace hvd::textprep {

enum class TokenKind { kWord, kPunctuation };

struct Token {
  std::string surface;   // lowercase for words, verbatim for punctuation
  TokenKind kind = TokenKind::kWord;
  std::size_t position = 0;
  std::string original;  // source spelling (casing intact)
  bool space_before = false;

  bool is_word() const { return kind == TokenKind::kWord; }
  friend bool operator==(const Token&, const Token&) = default;
};

/// Splits text into word tokens (maximal runs of letters/digits, with
/// apostrophes allowed between letters) and punctuation runs.
inline std::vector<Token> tokenize(std::string_view utf8) {
  const std::u32string s = text::decode_utf8(utf8);
  std::vector<Token> out;
  std::size_t i = 0;
  bool pending_space = false;
  while (i < s.size()) {
    const char32_t c = s[i];
    if (text::is_space(c)) {
      pending_space = true;
      ++i;
      continue;
    }
    Token t;
    t.position = out.size();
    t.space_before = pending_space;
    pending_space = false;
    std::u32string orig;
    if (text::is_alnum(c)) {
      t.kind = TokenKind::kWord;
      while (i < s.size()) {
        if (text::is_alnum(s[i])) {
          orig.push_back(s[i++]);
        } else if (text::is_apostrophe(s[i]) && i + 1 < s.size() && text::is_alnum(s[i + 1])) {
          orig.push_back(U'\'');
          ++i;
        } else {
          break;
        }
      }
      std::u32string lower = orig;
      for (char32_t& ch : lower) ch = text::to_lower(ch);
      t.surface = text::encode_utf8(lower);
      t.original = text::encode_utf8(orig);
    } else {
      t.kind = TokenKind::kPunctuation;
      while (i < s.size() && !text::is_space(s[i]) && !text::is_alnum(s[i])) {
        // an apostrophe that opens a word belongs to the punctuation run
        orig.push_back(s[i++]);
      }
      t.surface = text::encode_utf8(orig);
      t.original = t.surface;
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline std::size_t word_count(std::string_view utf8) {
  const auto tokens = tokenize(utf8);
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_word(); }));
}

/// Edit distance with unit-cost insertion, deletion and substitution,
/// computed over code points.
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::u32string x = text::decode_utf8(a);
  const std::u32string y = text::decode_utf8(b);
  std::vector<std::size_t> prev(y.size() + 1);
  std::vector<std::size_t> cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

/// Known-word list with occurrence counts ("word<TAB>count" per line).
class FrequencyList {
 public:
  FrequencyList() = default;
  explicit FrequencyList(std::unordered_map<std::string, std::uint64_t> counts)
      : counts_(std::move(counts)) {
    for (const auto& [w, n] : counts_) {
      if (n == 0) throw ValidationError("frequency list: count of '" + w + "' must be positive");
      if (text::to_lower(w) != w) {
        throw ValidationError("frequency list: key '" + w + "' is not lowercase");
      }
    }
  }

  static FrequencyList load(const std::filesystem::path& path) {
    const std::string content = text::read_file(path);
    std::unordered_map<std::string, std::uint64_t> counts;
    std::size_t lineno = 0;
    for (auto line : text::lines(content)) {
      ++lineno;
      if (text::trim(line).empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected word<TAB>count");
      }
      std::uint64_t n = 0;
      try {
        n = std::stoull(std::string(line.substr(tab + 1)));
      } catch (const std::exception&) {
        throw DataError(path.string() + ":" + std::to_string(lineno) + ": bad count");
      }
      counts[std::string(line.substr(0, tab))] += n;
    }
    return FrequencyList(std::move(counts));
  }

  bool contains(const std::string& w) const { return counts_.count(w) != 0; }

  std::uint64_t count(const std::string& w) const {
    const auto it = counts_.find(w);
    return it == counts_.end() ? 0 : it->second;
  }

  bool empty() const { return counts_.empty(); }
  std::size_t size() const { return counts_.size(); }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
};

namespace detail {

inline constexpr std::u32string_view kEditAlphabet = U"abcdefghijklmnopqrstuvwxyz'";

// Calls fn on every string one deletion, substitution or insertion away
// from w. Candidates may repeat.
template <class Fn>
void for_each_edit1(const std::u32string& w, Fn&& fn) {
  std::u32string cand;
  for (std::size_t i = 0; i < w.size(); ++i) {
    cand = w;
    cand.erase(i, 1);
    fn(cand);
    cand = w;
    for (char32_t c : kEditAlphabet) {
      if (c == w[i]) continue;
      cand[i] = c;
      fn(cand);
    }
  }
  for (std::size_t i = 0; i <= w.size(); ++i) {
    cand = w;
    cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(i), U' ');
    for (char32_t c : kEditAlphabet) {
      cand[i] = c;
      fn(cand);
    }
  }
}

// Highest count wins; ties go to the lexicographically smaller word.
class BestCandidate {
 public:
  explicit BestCandidate(const FrequencyList& freq) : freq_(freq) {}

  void offer(const std::u32string& cand) {
    key_.clear();
    for (char32_t c : cand) text::append_utf8(key_, c);
    const std::uint64_t n = freq_.count(key_);
    if (n == 0) return;
    if (!best_ || n > best_count_ || (n == best_count_ && key_ < *best_)) {
      best_ = key_;
      best_count_ = n;
    }
  }

  const std::optional<std::string>& best() const { return best_; }

 private:
  const FrequencyList& freq_;
  std::string key_;
  std::optional<std::string> best_;
  std::uint64_t best_count_ = 0;
};

}  // namespace detail

/// Correction for a single lowercase word: itself when known, else the most
/// frequent known word at distance 1, else at distance 2, else itself.
/// Words containing digits are never corrected.
inline std::string correct_word(const std::string& word, const FrequencyList& freq) {
  if (word.empty() || freq.contains(word)) return word;
  if (std::any_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return word;
  }
  const std::u32string w = text::decode_utf8(word);

  detail::BestCandidate d1(freq);
  std::unordered_set<std::u32string> ring;
  detail::for_each_edit1(w, [&](const std::u32string& c) {
    d1.offer(c);
    ring.insert(c);
  });
  if (d1.best()) return *d1.best();

  // Nothing known at distance 1, so any known word reached here is at
  // distance exactly 2.
  detail::BestCandidate d2(freq);
  for (const auto& e : ring) {
    detail::for_each_edit1(e, [&](const std::u32string& c) { d2.offer(c); });
  }
  if (d2.best()) return *d2.best();
  return word;
}

namespace detail {

// Re-applies the casing pattern of `original` to a corrected lowercase word.
inline std::string match_case(const std::string& original, const std::string& corrected) {
  const std::u32string o = text::decode_utf8(original);
  std::size_t upper = 0;
  std::size_t letters = 0;
  for (char32_t c : o) {
    if (text::is_upper(c)) ++upper;
    if (text::is_upper(c) || text::is_lower(c)) ++letters;
  }
  std::u32string out = text::decode_utf8(corrected);
  if (letters > 1 && upper == letters) {
    for (char32_t& c : out) {
      if (c >= U'a' && c <= U'z') c -= 32;
    }
  } else if (!o.empty() && text::is_upper(o.front()) && !out.empty() && out.front() >= U'a' &&
             out.front() <= U'z') {
    out.front() -= 32;
  }
  return text::encode_utf8(out);
}

}  // namespace detail

/// Memo of correct_word results. Not thread-safe; use one per worker.
using CorrectionCache = std::unordered_map<std::string, std::string>;

inline std::vector<Token> correct_spelling(const std::vector<Token>& tokens, const FrequencyList& freq,
                                           CorrectionCache* cache = nullptr) {
  std::vector<Token> out = tokens;
  for (Token& t : out) {
    if (!t.is_word() || freq.contains(t.surface)) continue;
    std::string fixed;
    if (cache) {
      auto it = cache->find(t.surface);
      if (it == cache->end()) it = cache->emplace(t.surface, correct_word(t.surface, freq)).first;
      fixed = it->second;
    } else {
      fixed = correct_word(t.surface, freq);
    }
    if (fixed != t.surface) {
      t.original = detail::match_case(t.original, fixed);
      t.surface = std::move(fixed);
    }
  }
  return out;
}

using Stoplist = std::unordered_set<std::string>;

/// One lowercase word per line; blank lines and '#' comments ignored.
inline Stoplist load_stoplist(const std::filesystem::path& path) {
  Stoplist out;
  const std::string content = text::read_file(path);
  for (auto line : text::lines(content)) {
    const auto w = text::trim(line);
    if (w.empty() || w.front() == '#') continue;
    out.insert(text::to_lower(w));
  }
  return out;
}

/// Content view: word tokens not in the stoplist (punctuation dropped).
inline std::vector<Token> remove_stopwords(const std::vector<Token>& tokens,
                                           const Stoplist& stoplist) {
  std::vector<Token> out;
  for (const Token& t : tokens) {
    if (t.is_word() && stoplist.count(t.surface) == 0) out.push_back(t);
  }
  return out;
}

struct PreprocessedReview {
  std::string review_id;
  std::string corrected_text;
  std::vector<std::string> content_stems;

  friend bool operator==(const PreprocessedReview&, const PreprocessedReview&) = default;
};

/// Rebuilds text from tokens, single-spacing wherever the source had
/// whitespace.
inline std::string render(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && tokens[i].space_before) out.push_back(' ');
    out += tokens[i].original;
  }
  return out;
}

inline PreprocessedReview preprocess(std::string_view review_text, const FrequencyList& freq,
                                     const Stoplist& stoplist, CorrectionCache* cache = nullptr) {
  PreprocessedReview out;
  const std::vector<Token> corrected = correct_spelling(tokenize(review_text), freq, cache);
  out.corrected_text = render(corrected);
  for (const Token& t : remove_stopwords(corrected, stoplist)) {
    out.content_stems.push_back(stem(t.surface));
  }
  return out;
}

}  // namespace hvd::textprep
