#pragma once

// Lexicon-and-rules sentiment scoring. Each whitespace-delimited token that
// appears in the valence lexicon contributes its valence, adjusted by
// preceding booster and negation words, ALL-CAPS emphasis and the "least"
// construction. Clause weighting around "but" and exclamation emphasis are
// applied to the sum, which is normalized as s / sqrt(s^2 + alpha).

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hvd/error.hpp"
#include "hvd/text_util.hpp"

namespace hvd::sentiment {

inline constexpr double kBoosterCapsIncrement = 0.733;
inline constexpr double kNegationScalar = -0.74;
inline constexpr double kExclamationIncrement = 0.292;
inline constexpr int kMaxExclamations = 3;
inline constexpr double kAlpha = 15.0;

enum class Polarity { kPositive, kNeutral, kNegative };

inline const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::kPositive: return "positive";
    case Polarity::kNeutral: return "neutral";
    case Polarity::kNegative: return "negative";
  }
  return "neutral";
}

struct Thresholds {
  double positive = 0.05;   // x >= positive
  double negative = -0.05;  // x <= negative
};

inline Polarity classify(double compound, const Thresholds& t = {}) {
  if (compound >= t.positive) return Polarity::kPositive;
  if (compound <= t.negative) return Polarity::kNegative;
  return Polarity::kNeutral;
}

struct SentimentResult {
  double compound = 0.0;
  Polarity polarity = Polarity::kNeutral;
};

struct SentimentLexicon {
  std::unordered_map<std::string, double> valence;
  std::unordered_map<std::string, double> boosters;
  std::unordered_set<std::string> negations;

  void validate() const {
    for (const auto& [w, v] : valence) {
      if (!(v >= -4.0 && v <= 4.0)) {
        throw ValidationError("sentiment lexicon: valence of '" + w + "' outside [-4, 4]");
      }
    }
  }

  static SentimentLexicon load(const std::filesystem::path& lexicon,
                               const std::filesystem::path& boosters,
                               const std::filesystem::path& negations) {
    SentimentLexicon out;
    out.valence = load_table(lexicon);
    out.boosters = load_table(boosters);
    const std::string content = text::read_file(negations);
    for (auto line : text::lines(content)) {
      const auto w = text::trim(line);
      if (!w.empty() && w.front() != '#') out.negations.insert(text::to_lower(w));
    }
    out.validate();
    return out;
  }

  /// Loads sentiment_lexicon.tsv, boosters.tsv and negations.txt from dir.
  static SentimentLexicon load_dir(const std::filesystem::path& dir) {
    return load(dir / "sentiment_lexicon.tsv", dir / "boosters.tsv", dir / "negations.txt");
  }

 private:
  static std::unordered_map<std::string, double> load_table(const std::filesystem::path& path) {
    std::unordered_map<std::string, double> out;
    const std::string content = text::read_file(path);
    std::size_t lineno = 0;
    for (auto line : text::lines(content)) {
      ++lineno;
      if (text::trim(line).empty()) continue;
      const auto tab = line.find('\t');
      const std::string ctx = path.string() + ":" + std::to_string(lineno) + ": ";
      if (tab == std::string_view::npos) throw DataError(ctx + "expected token<TAB>value");
      std::size_t used = 0;
      double v = 0;
      const std::string num(text::trim(line.substr(tab + 1)));
      try {
        v = std::stod(num, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (num.empty() || used != num.size()) throw DataError(ctx + "bad number '" + num + "'");
      out[std::string(line.substr(0, tab))] = v;
    }
    return out;
  }
};

namespace detail {

inline bool is_ascii_punct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

// Strips ASCII punctuation from both ends unless that leaves two code points
// or fewer (which keeps emoticons such as ":)" intact).
inline std::string strip_edges(std::string_view tok) {
  std::string_view s = tok;
  while (!s.empty() && is_ascii_punct(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_punct(s.back())) s.remove_suffix(1);
  if (text::decode_utf8(s).size() <= 2) return std::string(tok);
  return std::string(s);
}

// At least one cased letter and no lowercase ones.
inline bool is_all_caps(std::string_view tok) {
  bool cased = false;
  for (char32_t c : text::decode_utf8(tok)) {
    if (text::is_lower(c)) return false;
    if (text::is_upper(c)) cased = true;
  }
  return cased;
}

struct Word {
  std::string raw;
  std::string lower;
  bool caps = false;
};

inline std::vector<Word> split_words(std::string_view s) {
  std::vector<Word> out;
  const std::u32string u = text::decode_utf8(s);
  std::size_t i = 0;
  while (i < u.size()) {
    while (i < u.size() && text::is_space(u[i])) ++i;
    std::size_t j = i;
    while (j < u.size() && !text::is_space(u[j])) ++j;
    if (j > i) {
      Word w;
      w.raw = strip_edges(text::encode_utf8(u.substr(i, j - i)));
      w.lower = text::to_lower(w.raw);
      w.caps = is_all_caps(w.raw);
      out.push_back(std::move(w));
    }
    i = j;
  }
  return out;
}

}  // namespace detail

/// Sum of adjusted valences before normalization.
inline double raw_sum(std::string_view text, const SentimentLexicon& lex) {
  const std::vector<detail::Word> words = detail::split_words(text);
  std::size_t caps_words = 0;
  for (const auto& w : words) caps_words += w.caps ? 1 : 0;
  const bool cap_diff = caps_words > 0 && caps_words < words.size();

  const auto in_lex = [&](const std::string& w) { return lex.valence.count(w) != 0; };
  const auto is_negation = [&](const std::string& w) {
    return lex.negations.count(w) != 0 || w.find("n't") != std::string::npos;
  };

  std::vector<double> scores;
  scores.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    const auto it = lex.valence.find(w.lower);
    if (lex.boosters.count(w.lower) != 0 || it == lex.valence.end()) {
      scores.push_back(0.0);
      continue;
    }
    double v = it->second;
    // A negator that is itself a lexicon word ("no") modifies the next
    // lexicon word instead of scoring.
    if (is_negation(w.lower) && i + 1 < words.size() && in_lex(words[i + 1].lower)) v = 0.0;
    if (w.caps && cap_diff && v != 0.0) v += v > 0 ? kBoosterCapsIncrement : -kBoosterCapsIncrement;

    for (std::size_t k = 1; k <= 3 && k <= i; ++k) {
      const auto& prev = words[i - k];
      if (in_lex(prev.lower) && !is_negation(prev.lower)) continue;
      if (const auto b = lex.boosters.find(prev.lower); b != lex.boosters.end()) {
        double s = v < 0 ? -b->second : b->second;
        if (prev.caps && cap_diff) s += v > 0 ? kBoosterCapsIncrement : -kBoosterCapsIncrement;
        if (k == 2) s *= 0.95;
        if (k == 3) s *= 0.9;
        v += s;
      }
      if (is_negation(prev.lower)) v *= kNegationScalar;
    }

    // "least X" negates X, except in "at least" / "very least"
    if (i >= 1 && words[i - 1].lower == "least" && !in_lex("least")) {
      if (i < 2 || (words[i - 2].lower != "at" && words[i - 2].lower != "very")) {
        v *= kNegationScalar;
      }
    }
    scores.push_back(v);
  }

  // clause before the first "but" counts half, clause after it 1.5x
  for (std::size_t b = 0; b < words.size(); ++b) {
    if (words[b].lower != "but") continue;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (i < b) scores[i] *= 0.5;
      if (i > b) scores[i] *= 1.5;
    }
    break;
  }

  double sum = 0.0;
  for (double s : scores) sum += s;
  if (sum != 0.0) {
    int bangs = 0;
    for (char c : text) bangs += c == '!' ? 1 : 0;
    const double emphasis = std::min(bangs, kMaxExclamations) * kExclamationIncrement;
    sum += sum > 0 ? emphasis : -emphasis;
  }
  return sum;
}

/// s / sqrt(s^2 + alpha), clamped to [-1, 1].
inline double normalize(double s, double alpha = kAlpha) {
  const double x = s / std::sqrt(s * s + alpha);
  return std::clamp(x, -1.0, 1.0);
}

inline SentimentResult score(std::string_view text, const SentimentLexicon& lex,
                             const Thresholds& t = {}) {
  SentimentResult r;
  r.compound = normalize(raw_sum(text, lex));
  r.polarity = classify(r.compound, t);
  return r;
}

}  // namespace hvd::sentiment
