#pragma once

// Corpus-level aggregation of violation records: category and item counts,
// likes per category, feature/value co-occurrence, and evaluation against a
// labelled truthset.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "hvd/corpus.hpp"
#include "hvd/detector.hpp"
#include "hvd/error.hpp"
#include "hvd/values.hpp"

namespace hvd::analytics {

using values::kCategoryCount;
using Counts = std::array<std::size_t, kCategoryCount>;

/// Category indices in alphabetical order of name (the report column order).
inline std::array<std::size_t, kCategoryCount> alphabetical_categories() {
  std::array<std::size_t, kCategoryCount> idx{};
  for (std::size_t i = 0; i < kCategoryCount; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [](std::size_t a, std::size_t b) {
    return values::kCategories[a].name < values::kCategories[b].name;
  });
  return idx;
}

namespace detail {

inline std::size_t category_of(const detector::ViolatedItem& i, const std::string& review_id) {
  const std::size_t c = values::category_index(i.category);
  if (c == kCategoryCount) {
    throw DataError("review '" + review_id + "': unknown category '" + i.category + "'");
  }
  return c;
}

// Distinct categories of a record, ascending index.
inline std::vector<std::size_t> categories_of(const detector::ViolationRecord& r) {
  std::set<std::size_t> cats;
  for (const auto& i : r.items) cats.insert(category_of(i, r.review_id));
  return {cats.begin(), cats.end()};
}

inline std::array<double, kCategoryCount> percentages(const Counts& c, std::size_t total) {
  std::array<double, kCategoryCount> out{};
  if (total == 0) return out;
  for (std::size_t i = 0; i < kCategoryCount; ++i) out[i] = 100.0 * static_cast<double>(c[i]) / total;
  return out;
}

}  // namespace detail

struct CategoryStats {
  std::size_t corpus_size = 0;
  std::size_t violating_reviews = 0;  // distinct review ids

  // review-level: a review counts once per distinct violated category
  Counts review_counts{};
  std::size_t total = 0;
  std::array<double, kCategoryCount> percentages{};

  // item-level: one count per (review, item)
  Counts item_counts{};
  std::size_t item_total = 0;
  std::array<double, kCategoryCount> item_percentages{};
  std::map<std::pair<std::size_t, std::string>, std::size_t> item_frequencies;  // (category, item) -> f

  std::map<std::string, Counts> per_app;  // review-level
  std::array<double, kCategoryCount> app_average{};
  double app_average_total = 0.0;

  bool empty = true;  // no violations; percentages are all 0

  double violation_rate() const {
    return corpus_size == 0 ? 0.0 : static_cast<double>(violating_reviews) / corpus_size;
  }
};

/// `app_ids` lists apps to include in the per-app table even when they have
/// no violations; apps seen in the records are always included.
inline CategoryStats aggregate_by_category(const std::vector<detector::ViolationRecord>& records,
                                           std::size_t corpus_size,
                                           const std::vector<std::string>& app_ids = {}) {
  CategoryStats s;
  s.corpus_size = corpus_size;
  for (const auto& a : app_ids) s.per_app[a];
  std::unordered_set<std::string> reviews;
  for (const auto& r : records) {
    reviews.insert(r.review_id);
    Counts& app = s.per_app[r.app_id];
    for (std::size_t c : detail::categories_of(r)) {
      ++s.review_counts[c];
      ++app[c];
    }
    std::set<std::pair<std::size_t, std::string>> items;
    for (const auto& i : r.items) items.insert({detail::category_of(i, r.review_id), i.item});
    for (const auto& key : items) {
      ++s.item_counts[key.first];
      ++s.item_frequencies[key];
    }
  }
  s.violating_reviews = reviews.size();
  if (corpus_size < s.violating_reviews) {
    throw DataError("corpus size " + std::to_string(corpus_size) + " is smaller than the " +
                    std::to_string(s.violating_reviews) + " distinct reviews in the records");
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    s.total += s.review_counts[c];
    s.item_total += s.item_counts[c];
  }
  s.empty = s.total == 0;
  s.percentages = detail::percentages(s.review_counts, s.total);
  s.item_percentages = detail::percentages(s.item_counts, s.item_total);
  if (!s.per_app.empty()) {
    const double n = static_cast<double>(s.per_app.size());
    for (const auto& [app, counts] : s.per_app) {
      for (std::size_t c = 0; c < kCategoryCount; ++c) {
        s.app_average[c] += counts[c] / n;
        s.app_average_total += counts[c] / n;
      }
    }
  }
  return s;
}

struct LikesStats {
  std::array<std::int64_t, kCategoryCount> likes{};

  /// Category indices by likes, highest first; ties in canonical order.
  std::array<std::size_t, kCategoryCount> ranking() const {
    std::array<std::size_t, kCategoryCount> idx{};
    for (std::size_t i = 0; i < kCategoryCount; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return likes[a] > likes[b]; });
    return idx;
  }
};

/// A review's likes count once toward every category it violates.
inline LikesStats aggregate_likes(const std::vector<detector::ViolationRecord>& records) {
  LikesStats s;
  for (const auto& r : records) {
    if (r.likes < 0) throw DataError("review '" + r.review_id + "': negative likes");
    for (std::size_t c : detail::categories_of(r)) s.likes[c] += r.likes;
  }
  return s;
}

struct FeatureValueRow {
  std::string feature;
  std::string app_id;
  std::set<std::string> items;
  std::size_t support = 0;  // records containing the feature

  friend bool operator==(const FeatureValueRow&, const FeatureValueRow&) = default;
};

using FeatureValueTable = std::vector<FeatureValueRow>;

/// One row per (app, feature), items unioned over the records mentioning
/// it. Sorted by support (descending), then app, then feature.
inline FeatureValueTable associate_features(const std::vector<detector::ViolationRecord>& records) {
  std::map<std::pair<std::string, std::string>, FeatureValueRow> rows;
  for (const auto& r : records) {
    std::set<std::string> features(r.features.begin(), r.features.end());
    for (const auto& f : features) {
      FeatureValueRow& row = rows[{r.app_id, f}];
      row.feature = f;
      row.app_id = r.app_id;
      ++row.support;
      for (const auto& i : r.items) row.items.insert(i.item);
    }
  }
  FeatureValueTable out;
  for (auto& [key, row] : rows) out.push_back(std::move(row));
  std::stable_sort(out.begin(), out.end(),
                   [](const FeatureValueRow& a, const FeatureValueRow& b) { return a.support > b.support; });
  return out;
}

struct EvalMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f_undefined = false;
};

inline EvalMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
  EvalMetrics m{tp, fp, fn, tn};
  if (tp + fp > 0) {
    m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  } else {
    m.precision_undefined = true;
  }
  if (tp + fn > 0) {
    m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  } else {
    m.recall_undefined = true;
  }
  if (m.precision + m.recall > 0) {
    m.f_measure = 2 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f_undefined = true;
  }
  return m;
}

struct TruthLabel {
  std::string review_id;
  std::vector<std::string> items;
  std::vector<std::string> categories;

  bool positive() const { return !items.empty() || !categories.empty(); }
};

/// JSONL: {review_id, violated_items: [...], violated_categories: [...]}.
inline std::vector<TruthLabel> parse_truthset(std::string_view content, const std::string& name) {
  std::vector<TruthLabel> out;
  std::unordered_set<std::string> seen;
  std::size_t lineno = 0;
  for (auto line : text::lines(content)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const std::string ctx = name + ":" + std::to_string(lineno);
    TruthLabel t;
    try {
      const auto j = nlohmann::json::parse(line);
      for (const auto& [k, v] : j.items()) {
        if (k != "review_id" && k != "violated_items" && k != "violated_categories") {
          throw DataError("unexpected key '" + k + "'");
        }
      }
      t.review_id = j.at("review_id").get<std::string>();
      if (j.contains("violated_items")) t.items = j["violated_items"].get<std::vector<std::string>>();
      if (j.contains("violated_categories")) {
        t.categories = j["violated_categories"].get<std::vector<std::string>>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(ctx + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(ctx + ": " + e.what());
    }
    for (const auto& c : t.categories) {
      if (values::category_index(c) == kCategoryCount) throw DataError(ctx + ": unknown category '" + c + "'");
    }
    if (!seen.insert(t.review_id).second) throw DataError(ctx + ": duplicate review_id '" + t.review_id + "'");
    out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<TruthLabel> load_truthset(const std::filesystem::path& path) {
  return parse_truthset(text::read_file(path), path.string());
}

struct Evaluation {
  EvalMetrics reviews;  // binary, review level
  EvalMetrics items;    // micro-averaged over (review, item) pairs; tn unused
};

/// Review-level evaluation over `corpus_ids`. Corpus reviews without a
/// truthset line count as actual negatives.
inline Evaluation evaluate(const std::vector<detector::ViolationRecord>& records,
                           const std::vector<TruthLabel>& truth, const std::vector<std::string>& corpus_ids) {
  const std::unordered_set<std::string> corpus(corpus_ids.begin(), corpus_ids.end());
  std::unordered_map<std::string, const TruthLabel*> labels;
  for (const auto& t : truth) {
    if (!corpus.count(t.review_id)) {
      throw DataError("truthset review '" + t.review_id + "' is not in the corpus");
    }
    labels[t.review_id] = &t;
  }
  std::unordered_map<std::string, const detector::ViolationRecord*> predicted;
  for (const auto& r : records) {
    if (!corpus.count(r.review_id)) {
      throw DataError("violation record '" + r.review_id + "' is not in the corpus");
    }
    predicted[r.review_id] = &r;
  }

  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::size_t itp = 0, ifp = 0, ifn = 0;
  for (const auto& id : corpus) {
    const auto lt = labels.find(id);
    const auto pr = predicted.find(id);
    const bool actual = lt != labels.end() && lt->second->positive();
    const bool pred = pr != predicted.end();
    if (pred && actual) ++tp;
    if (pred && !actual) ++fp;
    if (!pred && actual) ++fn;
    if (!pred && !actual) ++tn;

    std::set<std::string> want;
    if (lt != labels.end()) {
      for (const auto& i : lt->second->items) want.insert(text::to_lower(i));
    }
    std::set<std::string> got;
    if (pred) {
      for (const auto& i : pr->second->items) got.insert(text::to_lower(i.item));
    }
    for (const auto& g : got) (want.count(g) ? itp : ifp)++;
    for (const auto& w : want) ifn += !got.count(w);
  }
  return {metrics_from_counts(tp, fp, fn, tn), metrics_from_counts(itp, ifp, ifn, 0)};
}

inline Evaluation evaluate(const std::vector<detector::ViolationRecord>& records,
                           const std::vector<TruthLabel>& truth, const corpus::ReviewCollection& corpus) {
  std::vector<std::string> ids;
  for (const auto& r : corpus) ids.push_back(r.review_id);
  return evaluate(records, truth, ids);
}

}  // namespace hvd::analytics
