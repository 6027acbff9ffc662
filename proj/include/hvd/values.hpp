#pragma once

// Schwartz values dictionary: 10 categories, 50 value items, each with a set
// of stemmed synonym/antonym keywords. Also the keyword-density match used by
// the detector, P(R,V) = T_V / T_R.

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hvd/error.hpp"
#include "hvd/stemmer.hpp"
#include "hvd/text_util.hpp"
#include "hvd/textprep.hpp"

namespace hvd::values {

struct Category {
  std::string_view name;
  std::string_view description;
};

inline constexpr std::size_t kCategoryCount = 10;
inline constexpr std::size_t kItemCount = 50;

inline constexpr std::array<Category, kCategoryCount> kCategories{{
    {"Self-direction", "independent thought and action: choosing, creating, exploring"},
    {"Stimulation", "excitement, novelty and challenge"},
    {"Hedonism", "pleasure and sensuous gratification"},
    {"Achievement", "personal success through demonstrated competence"},
    {"Power", "social status, prestige and control over people and resources"},
    {"Security", "safety, harmony and stability of society, relationships and self"},
    {"Conformity", "restraint of actions likely to upset or harm others or break norms"},
    {"Tradition", "respect for and commitment to cultural or religious customs"},
    {"Benevolence", "preserving and enhancing the welfare of people one is close to"},
    {"Universalism", "understanding, tolerance and protection of the welfare of all people and nature"},
}};

inline constexpr std::array<std::size_t, kCategoryCount> kItemsPerCategory{7, 3, 3, 5, 4, 6, 3, 5, 7, 7};

/// Items deliberately left out of the dictionary (no usable single-word
/// proxy). Matched case-insensitively.
inline const std::vector<std::string>& excluded_items() {
  static const std::vector<std::string> names{
      "social power",          "reciprocation of favours",        "reciprocation of favors",
      "honouring of parents and elders", "honoring of parents and elders",
      "accepting my portion in life",    "mature love",           "meaning in life",
      "unity with nature",     "protecting the environment"};
  return names;
}

inline bool is_excluded_item(std::string_view name) {
  const std::string n = text::to_lower(text::trim(name));
  const auto& ex = excluded_items();
  return std::find(ex.begin(), ex.end(), n) != ex.end();
}

/// Index into kCategories, or kCategoryCount when unknown.
inline std::size_t category_index(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (kCategories[i].name == name) return i;
  }
  return kCategoryCount;
}

enum class Tag { kSynonym, kAntonym };

inline const char* to_string(Tag t) { return t == Tag::kSynonym ? "synonym" : "antonym"; }

struct Keyword {
  std::string stem;
  std::string source;  // dictionary entry the stem came from
  Tag tag = Tag::kSynonym;

  friend bool operator==(const Keyword&, const Keyword&) = default;
};

struct ValueItem {
  std::string name;
  std::size_t category = 0;
  std::vector<Keyword> keywords;  // sorted by stem, unique stems

  std::string_view category_name() const { return kCategories[category].name; }

  const Keyword* find(std::string_view stem) const {
    const auto it = std::lower_bound(keywords.begin(), keywords.end(), stem,
                                     [](const Keyword& k, std::string_view s) { return k.stem < s; });
    return it != keywords.end() && it->stem == stem ? &*it : nullptr;
  }

  friend bool operator==(const ValueItem& a, const ValueItem& b) {
    return a.name == b.name && a.category == b.category && a.keywords == b.keywords;
  }
};

class ValuesDictionary {
 public:
  ValuesDictionary() = default;

  /// Builds and validates a dictionary from the JSON shape
  /// {category: {item: {"synonyms": [...], "antonyms": [...]}}}. Entries are
  /// stemmed here. Throws ValidationError listing every problem found.
  static ValuesDictionary from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("values dictionary: top level must be an object");
    ValuesDictionary d;
    std::vector<std::string> problems;
    for (const auto& [cat_name, items] : j.items()) {
      const std::size_t cat = category_index(cat_name);
      if (cat == kCategoryCount) {
        problems.push_back("unknown category '" + cat_name + "'");
        continue;
      }
      if (!items.is_object()) {
        problems.push_back("category '" + cat_name + "' must map item names to keyword lists");
        continue;
      }
      for (const auto& [item_name, entry] : items.items()) {
        if (is_excluded_item(item_name)) {
          problems.push_back("item '" + item_name + "' is one of the excluded value items");
          continue;
        }
        ValueItem item;
        item.name = item_name;
        item.category = cat;
        std::vector<Keyword> raw;
        for (const auto& [field, tag] : {std::pair{"synonyms", Tag::kSynonym}, std::pair{"antonyms", Tag::kAntonym}}) {
          if (!entry.is_object()) break;
          const auto it = entry.find(field);
          if (it == entry.end()) continue;
          if (!it->is_array()) {
            problems.push_back("item '" + item_name + "': '" + field + "' must be a list");
            continue;
          }
          for (const auto& w : *it) {
            if (!w.is_string()) {
              problems.push_back("item '" + item_name + "': keywords must be strings");
              continue;
            }
            const std::string word = text::to_lower(text::trim(w.get<std::string>()));
            const auto toks = textprep::tokenize(word);
            if (toks.size() != 1 || !toks[0].is_word()) {
              problems.push_back("item '" + item_name + "': keyword '" + word + "' is not a single word");
              continue;
            }
            raw.push_back({textprep::stem(toks[0].surface), toks[0].surface, tag});
          }
        }
        if (!entry.is_object()) {
          problems.push_back("item '" + item_name + "' must be an object with synonyms/antonyms");
          continue;
        }
        // the item's own name counts as a synonym when it is a single word
        const auto name_toks = textprep::tokenize(text::to_lower(item_name));
        if (name_toks.size() == 1 && name_toks[0].is_word()) {
          raw.push_back({textprep::stem(name_toks[0].surface), name_toks[0].surface, Tag::kSynonym});
        }
        if (raw.empty()) {
          problems.push_back("item '" + item_name + "' has no keywords");
          continue;
        }
        std::sort(raw.begin(), raw.end(), [](const Keyword& a, const Keyword& b) {
          return std::tie(a.stem, a.tag, a.source) < std::tie(b.stem, b.tag, b.source);
        });
        for (auto& k : raw) {
          if (!item.keywords.empty() && item.keywords.back().stem == k.stem) {
            if (item.keywords.back().tag != k.tag) {
              d.warnings_.push_back("item '" + item_name + "': stem '" + k.stem +
                                    "' is both a synonym and an antonym");
            }
            continue;
          }
          item.keywords.push_back(std::move(k));
        }
        d.items_.push_back(std::move(item));
      }
    }

    std::array<std::size_t, kCategoryCount> counts{};
    for (const auto& it : d.items_) ++counts[it.category];
    if (d.items_.size() != kItemCount && problems.empty()) {
      problems.push_back("dictionary has " + std::to_string(d.items_.size()) + " items, expected " +
                         std::to_string(kItemCount));
    }
    if (problems.empty()) {
      for (std::size_t c = 0; c < kCategoryCount; ++c) {
        if (counts[c] != kItemsPerCategory[c]) {
          problems.push_back("category '" + std::string(kCategories[c].name) + "' has " +
                             std::to_string(counts[c]) + " items, expected " +
                             std::to_string(kItemsPerCategory[c]));
        }
      }
    }
    if (!problems.empty()) {
      throw ValidationError("values dictionary: " + text::join(problems, "; "));
    }
    d.finish();
    return d;
  }

  static ValuesDictionary parse(std::string_view content, const std::string& name = "dictionary") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(name + ": invalid JSON (" + e.what() + ")");
    }
    return from_json(j);
  }

  static ValuesDictionary load(const std::filesystem::path& path) {
    return parse(text::read_file(path), path.string());
  }

  const std::vector<ValueItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  /// Non-fatal findings: stems shared between items, keywords that are not
  /// fixed points of the stemmer.
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Index of the item with this name (case-insensitive), or size().
  std::size_t find(std::string_view name) const {
    const std::string n = text::to_lower(name);
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (text::to_lower(items_[i].name) == n) return i;
    }
    return items_.size();
  }

  /// Items whose keyword set contains this stem (ascending indices).
  const std::vector<std::size_t>& items_for(const std::string& stem) const {
    static const std::vector<std::size_t> none;
    const auto it = index_.find(stem);
    return it == index_.end() ? none : it->second;
  }

  std::array<std::size_t, kCategoryCount> items_per_category() const {
    std::array<std::size_t, kCategoryCount> out{};
    for (const auto& it : items_) ++out[it.category];
    return out;
  }

  friend bool operator==(const ValuesDictionary& a, const ValuesDictionary& b) {
    return a.items_ == b.items_;
  }

 private:
  void finish() {
    std::sort(items_.begin(), items_.end(), [](const ValueItem& a, const ValueItem& b) {
      return std::tie(a.category, a.name) < std::tie(b.category, b.name);
    });
    std::map<std::string, std::vector<std::string>> owners;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      for (const auto& k : items_[i].keywords) {
        index_[k.stem].push_back(i);
        owners[k.stem].push_back(items_[i].name);
        if (textprep::stem(k.stem) != k.stem) {
          warnings_.push_back("keyword '" + k.source + "' (" + items_[i].name + ") stems to '" +
                              k.stem + "', which is not a fixed point of the stemmer");
        }
      }
    }
    for (const auto& [stem, names] : owners) {
      if (names.size() > 1) {
        warnings_.push_back("stem '" + stem + "' is shared by items: " + text::join(names, ", "));
      }
    }
    std::sort(warnings_.begin(), warnings_.end());
  }

  std::vector<ValueItem> items_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
  std::vector<std::string> warnings_;
};

struct MatchedStem {
  std::string stem;
  Tag tag = Tag::kSynonym;

  friend bool operator==(const MatchedStem&, const MatchedStem&) = default;
};

struct ValueMatch {
  std::size_t item = 0;  // index into ValuesDictionary::items()
  std::size_t tv = 0;
  std::size_t tr = 0;
  double probability = 0.0;
  std::vector<MatchedStem> matched_stems;  // one entry per matching occurrence

  friend bool operator==(const ValueMatch&, const ValueMatch&) = default;
};

struct MatchResult {
  std::vector<ValueMatch> matches;  // ascending item index
  bool degenerate = false;          // no stems: nothing to divide by
};

/// One ValueMatch per item with at least one keyword occurrence among the
/// stems. T_R counts occurrences, not distinct stems.
inline MatchResult match_values(const std::vector<std::string>& stems, const ValuesDictionary& dict) {
  MatchResult out;
  if (stems.empty()) {
    out.degenerate = true;
    return out;
  }
  std::map<std::size_t, ValueMatch> by_item;
  for (const auto& s : stems) {
    for (std::size_t item : dict.items_for(s)) {
      ValueMatch& m = by_item[item];
      m.item = item;
      ++m.tv;
      m.matched_stems.push_back({s, dict.items()[item].find(s)->tag});
    }
  }
  for (auto& [item, m] : by_item) {
    m.tr = stems.size();
    m.probability = static_cast<double>(m.tv) / static_cast<double>(m.tr);
    std::sort(m.matched_stems.begin(), m.matched_stems.end(),
              [](const MatchedStem& a, const MatchedStem& b) { return a.stem < b.stem; });
    out.matches.push_back(std::move(m));
  }
  return out;
}

}  // namespace hvd::values
