#pragma once

// Snowball English ("Porter2") stemmer, current revision of the algorithm
// (R1 prefix list with inter/later/organ/past/univers, the "-ying" -> "-ie"
// rule, "-ogist", and the even/cann/inn/... "-ing" exceptions).
//
// The algorithm runs on code points so that region boundaries and the
// "preceded by more than one letter" tests count letters, not bytes.

#include <array>
#include <string>
#include <string_view>

#include "hvd/text_util.hpp"

namespace hvd::textprep {

namespace detail {

class EnglishStemmer {
 public:
  std::string operator()(std::string_view word) {
    w_ = text::decode_utf8(word);
    if (apply_exception()) return text::encode_utf8(w_);
    if (w_.size() < 3) return std::string(word);

    prelude();
    mark_regions();
    step_1a();
    step_1b();
    step_1c();
    step_2();
    step_3();
    step_4();
    step_5();
    if (y_found_) {
      for (char32_t& c : w_) {
        if (c == U'Y') c = U'y';
      }
    }
    return text::encode_utf8(w_);
  }

 private:
  static bool vowel(char32_t c) {
    return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' || c == U'y';
  }
  static bool vowel_wxy(char32_t c) { return vowel(c) || c == U'w' || c == U'x' || c == U'Y'; }
  static bool valid_li(char32_t c) {
    return c == U'c' || c == U'd' || c == U'e' || c == U'g' || c == U'h' || c == U'k' ||
           c == U'm' || c == U'n' || c == U'r' || c == U't';
  }

  bool ends_with(std::u32string_view suffix) const {
    return w_.size() >= suffix.size() &&
           std::u32string_view(w_).substr(w_.size() - suffix.size()) == suffix;
  }

  static bool ends_with(std::u32string_view s, std::u32string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
  }

  void replace_suffix(std::size_t suffix_len, std::u32string_view with) {
    w_.resize(w_.size() - suffix_len);
    w_.append(with);
  }

  bool has_vowel(std::size_t end) const {
    for (std::size_t i = 0; i < end; ++i) {
      if (vowel(w_[i])) return true;
    }
    return false;
  }

  // Word ends (at `end`) in a short syllable.
  bool short_syllable(std::size_t end) const {
    if (end >= 3 && !vowel_wxy(w_[end - 1]) && vowel(w_[end - 2]) && !vowel(w_[end - 3])) {
      return true;
    }
    if (end == 2 && !vowel(w_[1]) && vowel(w_[0])) return true;
    return ends_with(std::u32string_view(w_).substr(0, end), U"past");
  }

  bool apply_exception() {
    struct Entry {
      std::u32string_view word;
      std::u32string_view stem;
    };
    static constexpr std::array<Entry, 15> kExceptions{{
        {U"andes", U"andes"}, {U"atlas", U"atlas"}, {U"bias", U"bias"},
        {U"cosmos", U"cosmos"}, {U"early", U"earli"}, {U"gently", U"gentl"},
        {U"howe", U"howe"}, {U"idly", U"idl"}, {U"news", U"news"},
        {U"only", U"onli"}, {U"singly", U"singl"}, {U"skies", U"sky"},
        {U"skis", U"ski"}, {U"sky", U"sky"}, {U"ugly", U"ugli"},
    }};
    for (const auto& e : kExceptions) {
      if (w_ == e.word) {
        w_ = e.stem;
        return true;
      }
    }
    return false;
  }

  void prelude() {
    y_found_ = false;
    if (!w_.empty() && w_.front() == U'\'') w_.erase(0, 1);
    if (!w_.empty() && w_.front() == U'y') {
      w_.front() = U'Y';
      y_found_ = true;
    }
    for (std::size_t i = 1; i < w_.size(); ++i) {
      if (w_[i] == U'y' && vowel(w_[i - 1])) {
        w_[i] = U'Y';
        y_found_ = true;
      }
    }
  }

  // Position just past the first non-vowel that follows a vowel, scanning
  // from `from`; the word length if there is none.
  std::size_t region_start(std::size_t from) const {
    for (std::size_t i = from; i + 1 < w_.size(); ++i) {
      if (vowel(w_[i]) && !vowel(w_[i + 1])) return i + 2;
    }
    return w_.size();
  }

  void mark_regions() {
    static constexpr std::array<std::u32string_view, 9> kPrefixes{
        U"arsen", U"commun", U"emerg", U"gener", U"inter", U"later", U"organ", U"past", U"univers"};
    p1_ = w_.size();
    bool prefixed = false;
    for (auto prefix : kPrefixes) {
      if (std::u32string_view(w_).substr(0, prefix.size()) == prefix) {
        p1_ = prefix.size();
        prefixed = true;
        break;
      }
    }
    if (!prefixed) p1_ = region_start(0);
    p2_ = p1_ >= w_.size() ? w_.size() : region_start(p1_);
  }

  void step_1a() {
    if (ends_with(U"'s'")) {
      replace_suffix(3, U"");
    } else if (ends_with(U"'s")) {
      replace_suffix(2, U"");
    } else if (ends_with(U"'")) {
      replace_suffix(1, U"");
    }

    if (ends_with(U"sses")) {
      replace_suffix(4, U"ss");
    } else if (ends_with(U"ied") || ends_with(U"ies")) {
      replace_suffix(3, w_.size() - 3 >= 2 ? U"i" : U"ie");
    } else if (ends_with(U"ss") || ends_with(U"us")) {
      // unchanged
    } else if (ends_with(U"s")) {
      // delete if a vowel occurs before the letter preceding the s
      if (w_.size() >= 2 && has_vowel(w_.size() - 2)) replace_suffix(1, U"");
    }
  }

  void step_1b() {
    enum class Kind { kNone, kEed, kEd, kIng };
    struct Suffix {
      std::u32string_view text;
      Kind kind;
    };
    static constexpr std::array<Suffix, 6> kSuffixes{{
        {U"eedly", Kind::kEed}, {U"ingly", Kind::kEd}, {U"edly", Kind::kEd},
        {U"eed", Kind::kEed}, {U"ing", Kind::kIng}, {U"ed", Kind::kEd},
    }};
    Kind kind = Kind::kNone;
    std::size_t len = 0;
    for (const auto& s : kSuffixes) {
      if (ends_with(s.text)) {
        kind = s.kind;
        len = s.text.size();
        break;
      }
    }
    if (kind == Kind::kNone) return;
    const std::size_t start = w_.size() - len;
    const std::u32string_view stem = std::u32string_view(w_).substr(0, start);

    if (kind == Kind::kEed) {
      if (start < p1_) return;
      if (stem == U"succ" || stem == U"proc" || stem == U"exc") return;
      replace_suffix(len, U"ee");
      return;
    }

    if (kind == Kind::kIng) {
      static constexpr std::array<std::u32string_view, 6> kKeep{
          U"even", U"cann", U"inn", U"earr", U"herr", U"out"};
      if (ends_with(stem, U"y")) {
        if (stem.size() == 2 && !vowel(stem[0])) {
          w_.resize(1);
          w_.append(U"ie");
          return;
        }
      } else {
        for (auto keep : kKeep) {
          if (ends_with(stem, keep)) {
            if (stem.size() == keep.size()) return;
            break;
          }
        }
      }
    }

    if (!has_vowel(start)) return;
    w_.resize(start);

    if (ends_with(U"at") || ends_with(U"bl") || ends_with(U"iz")) {
      w_.push_back(U'e');
      return;
    }
    static constexpr std::array<std::u32string_view, 9> kDoubles{
        U"bb", U"dd", U"ff", U"gg", U"mm", U"nn", U"pp", U"rr", U"tt"};
    for (auto d : kDoubles) {
      if (ends_with(d)) {
        const bool keep = w_.size() == 3 && (w_[0] == U'a' || w_[0] == U'e' || w_[0] == U'o');
        if (!keep) w_.pop_back();
        return;
      }
    }
    if (w_.size() == p1_ && short_syllable(w_.size())) w_.push_back(U'e');
  }

  void step_1c() {
    if (w_.size() < 3) return;
    const char32_t last = w_.back();
    if ((last == U'y' || last == U'Y') && !vowel(w_[w_.size() - 2])) w_.back() = U'i';
  }

  struct Rule {
    std::u32string_view suffix;
    std::u32string_view replacement;
    int condition;  // see step_2 / step_3 / step_4
  };

  // Returns the longest rule whose suffix ends the word, or nullptr.
  template <std::size_t N>
  const Rule* longest(const std::array<Rule, N>& rules) const {
    const Rule* best = nullptr;
    for (const auto& r : rules) {
      if ((best == nullptr || r.suffix.size() > best->suffix.size()) && ends_with(r.suffix)) {
        best = &r;
      }
    }
    return best;
  }

  void step_2() {
    // condition: 0 plain, 1 preceded by 'l', 2 preceded by a valid li-ending
    static constexpr std::array<Rule, 25> kRules{{
        {U"tional", U"tion", 0}, {U"enci", U"ence", 0},   {U"anci", U"ance", 0},
        {U"abli", U"able", 0},   {U"entli", U"ent", 0},   {U"izer", U"ize", 0},
        {U"ization", U"ize", 0}, {U"ational", U"ate", 0}, {U"ation", U"ate", 0},
        {U"ator", U"ate", 0},    {U"alism", U"al", 0},    {U"aliti", U"al", 0},
        {U"alli", U"al", 0},     {U"fulness", U"ful", 0}, {U"ousli", U"ous", 0},
        {U"ousness", U"ous", 0}, {U"iveness", U"ive", 0}, {U"iviti", U"ive", 0},
        {U"biliti", U"ble", 0},  {U"bli", U"ble", 0},     {U"ogist", U"og", 0},
        {U"ogi", U"og", 1},      {U"fulli", U"ful", 0},   {U"lessli", U"less", 0},
        {U"li", U"", 2},
    }};
    const Rule* r = longest(kRules);
    if (r == nullptr) return;
    const std::size_t start = w_.size() - r->suffix.size();
    if (start < p1_) return;
    if (r->condition == 1 && (start == 0 || w_[start - 1] != U'l')) return;
    if (r->condition == 2 && (start == 0 || !valid_li(w_[start - 1]))) return;
    replace_suffix(r->suffix.size(), r->replacement);
  }

  void step_3() {
    // condition: 0 in R1, 1 in R2
    static constexpr std::array<Rule, 9> kRules{{
        {U"tional", U"tion", 0}, {U"ational", U"ate", 0}, {U"alize", U"al", 0},
        {U"icate", U"ic", 0},    {U"iciti", U"ic", 0},    {U"ical", U"ic", 0},
        {U"ful", U"", 0},        {U"ness", U"", 0},       {U"ative", U"", 1},
    }};
    const Rule* r = longest(kRules);
    if (r == nullptr) return;
    const std::size_t start = w_.size() - r->suffix.size();
    if (start < p1_) return;
    if (r->condition == 1 && start < p2_) return;
    replace_suffix(r->suffix.size(), r->replacement);
  }

  void step_4() {
    // condition: 1 means "preceded by s or t"
    static constexpr std::array<Rule, 18> kRules{{
        {U"al", U"", 0},   {U"ance", U"", 0}, {U"ence", U"", 0}, {U"er", U"", 0},
        {U"ic", U"", 0},   {U"able", U"", 0}, {U"ible", U"", 0}, {U"ant", U"", 0},
        {U"ement", U"", 0}, {U"ment", U"", 0}, {U"ent", U"", 0},  {U"ism", U"", 0},
        {U"ate", U"", 0},  {U"iti", U"", 0},  {U"ous", U"", 0},  {U"ive", U"", 0},
        {U"ize", U"", 0},  {U"ion", U"", 1},
    }};
    const Rule* r = longest(kRules);
    if (r == nullptr) return;
    const std::size_t start = w_.size() - r->suffix.size();
    if (start < p2_) return;
    if (r->condition == 1 && (start == 0 || (w_[start - 1] != U's' && w_[start - 1] != U't'))) {
      return;
    }
    replace_suffix(r->suffix.size(), U"");
  }

  void step_5() {
    if (w_.empty()) return;
    const std::size_t start = w_.size() - 1;
    if (w_.back() == U'e') {
      if (start >= p2_ || (start >= p1_ && !short_syllable(start))) w_.pop_back();
    } else if (w_.back() == U'l') {
      if (start >= p2_ && start > 0 && w_[start - 1] == U'l') w_.pop_back();
    }
  }

  std::u32string w_;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
  bool y_found_ = false;
};

}  // namespace detail

/// Snowball English stem of a lowercase word.
inline std::string stem(std::string_view word) { return detail::EnglishStemmer{}(word); }

}  // namespace hvd::textprep
