#pragma once

// App-feature extraction from app descriptions: lexicon-based POS tagging,
// cue-phrase handling and POS-pattern matching, plus the window match that
// locates extracted features inside review stems.

#include <algorithm>
#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hvd/error.hpp"
#include "hvd/stemmer.hpp"
#include "hvd/text_util.hpp"
#include "hvd/textprep.hpp"

namespace hvd::features {

enum class PosTag { kNoun, kVerb, kAdj, kAdv, kDet, kPron, kAdp, kConj, kNum, kPrt, kPunct, kX };

inline constexpr std::array<std::string_view, 12> kTagNames{
    "NOUN", "VERB", "ADJ", "ADV", "DET", "PRON", "ADP", "CONJ", "NUM", "PRT", "PUNCT", "X"};

inline std::string_view to_string(PosTag t) { return kTagNames[static_cast<std::size_t>(t)]; }

inline std::optional<PosTag> parse_tag(std::string_view s) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == s) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

struct PosTaggedToken {
  std::string surface;
  PosTag tag = PosTag::kX;

  friend bool operator==(const PosTaggedToken&, const PosTaggedToken&) = default;
};

/// word -> most frequent tag ("word<TAB>TAG" per line).
class PosLexicon {
 public:
  PosLexicon() = default;
  explicit PosLexicon(std::unordered_map<std::string, PosTag> tags) : tags_(std::move(tags)) {}

  static PosLexicon load(const std::filesystem::path& path) {
    std::unordered_map<std::string, PosTag> tags;
    const std::string content = text::read_file(path);
    std::size_t lineno = 0;
    for (auto line : text::lines(content)) {
      ++lineno;
      if (text::trim(line).empty() || line.front() == '#') continue;
      const auto tab = line.find('\t');
      const auto tag = tab == std::string_view::npos ? std::nullopt : parse_tag(text::trim(line.substr(tab + 1)));
      if (!tag) {
        throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected word<TAB>TAG");
      }
      tags[text::to_lower(line.substr(0, tab))] = *tag;
    }
    return PosLexicon(std::move(tags));
  }

  std::optional<PosTag> lookup(const std::string& w) const {
    const auto it = tags_.find(w);
    if (it == tags_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<std::string, PosTag> tags_;
};

namespace detail {

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline PosTag suffix_tag(const std::string& w) {
  if (std::any_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; })) return PosTag::kNum;
  if (ends_with(w, "ly")) return PosTag::kAdv;
  if (ends_with(w, "ing") || ends_with(w, "ed")) return PosTag::kVerb;
  if (ends_with(w, "ous") || ends_with(w, "ful") || ends_with(w, "ive")) return PosTag::kAdj;
  return PosTag::kNoun;
}

}  // namespace detail

/// Lexicon lookup first (also for punctuation such as "&"); unknown plural
/// forms fall back to the singular's entry, then to suffix rules.
inline std::vector<PosTaggedToken> tag_pos(const std::vector<textprep::Token>& tokens,
                                           const PosLexicon& lex) {
  std::vector<PosTaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    PosTaggedToken p{t.surface, PosTag::kPunct};
    if (const auto hit = lex.lookup(t.surface)) {
      p.tag = *hit;
    } else if (t.is_word()) {
      std::optional<PosTag> singular;
      if (detail::ends_with(t.surface, "s") && !detail::ends_with(t.surface, "ss")) {
        singular = lex.lookup(t.surface.substr(0, t.surface.size() - 1));
      }
      p.tag = singular.value_or(detail::suffix_tag(t.surface));
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct Pattern {
  std::vector<PosTag> tags;
  std::string name;  // e.g. "VERB DET NOUN"
};

/// One pattern per line, space-separated tag names; '#' starts a comment.
inline std::vector<Pattern> parse_patterns(std::string_view content, const std::string& source) {
  std::vector<Pattern> out;
  std::size_t lineno = 0;
  for (auto line : text::lines(content)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    Pattern p;
    std::size_t kept = 0;
    for (auto part : text::split(line, ' ')) {
      if (part.empty()) continue;
      const auto tag = parse_tag(part);
      if (!tag) {
        throw ValidationError(source + ":" + std::to_string(lineno) + ": unknown tag '" +
                              std::string(part) + "'");
      }
      p.tags.push_back(*tag);
      if (*tag != PosTag::kDet) ++kept;
    }
    if (kept < 2 || kept > 4) {
      throw ValidationError(source + ":" + std::to_string(lineno) +
                            ": a pattern must keep between 2 and 4 words");
    }
    for (std::size_t i = 0; i < p.tags.size(); ++i) {
      p.name += (i ? " " : "") + std::string(to_string(p.tags[i]));
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<Pattern> load_patterns(const std::filesystem::path& path) {
  return parse_patterns(text::read_file(path), path.string());
}

struct AppFeature {
  std::vector<std::string> tokens;  // lowercase surface words
  std::vector<std::string> stems;
  std::vector<PosTag> tags;
  std::string source_app;
  std::string source_pattern;

  std::string phrase() const { return text::join(tokens, " "); }

  friend bool operator==(const AppFeature&, const AppFeature&) = default;
};

/// Phrases introducing a feature ("you can ...", "allows you to ..."); they
/// are cut out of the sentence before pattern matching.
inline const std::vector<std::vector<std::string>>& cue_phrases() {
  static const std::vector<std::vector<std::string>> cues{
      {"allows", "you", "to"},   {"allow", "you", "to"},     {"allows", "users", "to"},
      {"enables", "you", "to"},  {"enable", "you", "to"},    {"lets", "you"},
      {"let", "you"},            {"lets", "users"},          {"helps", "you"},
      {"help", "you"},           {"you", "can"},             {"users", "can"},
      {"you", "can", "also"},    {"you", "will", "be", "able", "to"}};
  return cues;
}

class FeatureExtractor {
 public:
  FeatureExtractor(PosLexicon lexicon, std::vector<Pattern> patterns, textprep::Stoplist stoplist)
      : lexicon_(std::move(lexicon)), patterns_(std::move(patterns)), stoplist_(std::move(stoplist)) {
    // longest first, file order among equals
    std::stable_sort(patterns_.begin(), patterns_.end(),
                     [](const Pattern& a, const Pattern& b) { return a.tags.size() > b.tags.size(); });
  }

  /// Keeps only features whose stemmed phrase appears in the allowlist
  /// (one phrase per line).
  void set_allowlist(const std::vector<std::string>& phrases) {
    allow_.emplace();
    for (const auto& p : phrases) {
      std::vector<std::string> stems;
      for (const auto& t : textprep::tokenize(p)) {
        if (t.is_word()) stems.push_back(textprep::stem(t.surface));
      }
      if (!stems.empty()) allow_->insert(text::join(stems, " "));
    }
  }

  std::vector<AppFeature> extract(std::string_view description, const std::string& app_id = "") const {
    std::vector<PosTaggedToken> tagged = tag_pos(textprep::tokenize(description), lexicon_);
    blank_cues(tagged);

    std::vector<AppFeature> out;
    std::set<std::vector<std::string>> seen;
    const auto emit = [&](const std::vector<std::size_t>& idx, const std::string& pattern) {
      AppFeature f;
      f.source_app = app_id;
      f.source_pattern = pattern;
      for (std::size_t i : idx) {
        if (tagged[i].tag == PosTag::kDet) continue;
        if (stoplist_.count(tagged[i].surface) && tagged[i].tag != PosTag::kConj) return;
        f.tokens.push_back(tagged[i].surface);
        f.stems.push_back(textprep::stem(tagged[i].surface));
        f.tags.push_back(tagged[i].tag);
      }
      if (f.tokens.size() < 2 || f.tokens.size() > 4) return;
      if (allow_ && !allow_->count(text::join(f.stems, " "))) return;
      if (seen.insert(f.stems).second) out.push_back(std::move(f));
    };

    std::size_t i = 0;
    while (i < tagged.size()) {
      const Pattern* hit = nullptr;
      for (const auto& p : patterns_) {
        if (matches_at(tagged, i, p)) {
          hit = &p;
          break;
        }
      }
      if (!hit) {
        ++i;
        continue;
      }
      std::vector<std::size_t> idx(hit->tags.size());
      for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = i + k;
      emit(idx, hit->name);
      i += hit->tags.size();
      if (hit->tags.front() == PosTag::kVerb && hit->tags.back() == PosTag::kNoun) {
        i = expand_enumeration(tagged, i, idx.front(), emit);
      }
    }
    return out;
  }

 private:
  static bool matches_at(const std::vector<PosTaggedToken>& t, std::size_t i, const Pattern& p) {
    if (i + p.tags.size() > t.size()) return false;
    for (std::size_t k = 0; k < p.tags.size(); ++k) {
      if (t[i + k].tag != p.tags[k]) return false;
    }
    return true;
  }

  // "add stickers, frames and filters": each further noun phrase of the
  // enumeration is paired with the verb. Returns the position after the last
  // consumed token.
  template <class Emit>
  static std::size_t expand_enumeration(const std::vector<PosTaggedToken>& t, std::size_t i,
                                        std::size_t verb, Emit& emit) {
    while (i + 1 < t.size()) {
      const bool sep = t[i].tag == PosTag::kConj || (t[i].tag == PosTag::kPunct && t[i].surface == ",");
      if (!sep) break;
      std::size_t j = i + 1;
      if (t[j].tag == PosTag::kConj) ++j;  // ", and"
      std::size_t k = j;
      while (k < t.size() && k - j < 3 && (t[k].tag == PosTag::kAdj || t[k].tag == PosTag::kNoun)) ++k;
      if (k == j || t[k - 1].tag != PosTag::kNoun) break;
      std::vector<std::size_t> idx{verb};
      for (std::size_t n = j; n < k; ++n) idx.push_back(n);
      emit(idx, "enumeration");
      i = k;
    }
    return i;
  }

  static void blank_cues(std::vector<PosTaggedToken>& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (const auto& cue : cue_phrases()) {
        if (i + cue.size() > t.size()) continue;
        bool hit = true;
        for (std::size_t k = 0; k < cue.size() && hit; ++k) hit = t[i + k].surface == cue[k];
        if (!hit) continue;
        for (std::size_t k = 0; k < cue.size(); ++k) t[i + k].tag = PosTag::kX;
      }
    }
  }

  PosLexicon lexicon_;
  std::vector<Pattern> patterns_;
  textprep::Stoplist stoplist_;
  std::optional<std::unordered_set<std::string>> allow_;
};

/// True iff every content stem of the feature occurs in some window of
/// `window` consecutive review stems. Conjunction tokens of the feature are
/// not required (the review side has them removed as stopwords).
inline bool feature_in_review(const AppFeature& f, const std::vector<std::string>& review_stems,
                              std::size_t window = 5) {
  std::vector<std::string> need;
  for (std::size_t k = 0; k < f.stems.size(); ++k) {
    if (k < f.tags.size() && f.tags[k] == PosTag::kConj) continue;
    need.push_back(f.stems[k]);
  }
  if (need.empty() || review_stems.empty()) return false;
  const std::size_t n = review_stems.size();
  const std::size_t last = n > window ? n - window : 0;
  for (std::size_t s = 0; s <= last; ++s) {
    const auto b = review_stems.begin() + static_cast<std::ptrdiff_t>(s);
    const auto e = review_stems.begin() + static_cast<std::ptrdiff_t>(std::min(n, s + window));
    if (std::all_of(need.begin(), need.end(), [&](const std::string& x) { return std::find(b, e, x) != e; })) {
      return true;
    }
  }
  return false;
}

inline std::vector<AppFeature> match_features_in_review(const std::vector<AppFeature>& features,
                                                        const std::vector<std::string>& review_stems,
                                                        std::size_t window = 5) {
  std::vector<AppFeature> out;
  for (const auto& f : features) {
    if (feature_in_review(f, review_stems, window)) out.push_back(f);
  }
  return out;
}

}  // namespace hvd::features
