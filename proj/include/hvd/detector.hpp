#pragma once

// Per-review values-violation detection and the corpus pipeline around it.
// A review violates an item when the item's keyword density reaches the
// probability threshold and the review's compound sentiment is below the
// positive boundary.

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hvd/assets.hpp"
#include "hvd/corpus.hpp"
#include "hvd/error.hpp"
#include "hvd/features.hpp"
#include "hvd/sentiment.hpp"
#include "hvd/textprep.hpp"
#include "hvd/values.hpp"

namespace hvd::detector {

struct Options {
  double p_threshold = 0.05;
  sentiment::Thresholds sentiment;
  std::size_t window = 5;  // feature-in-review window
};

struct ViolatedItem {
  std::string item;
  std::string category;
  double probability = 0.0;

  friend bool operator==(const ViolatedItem&, const ViolatedItem&) = default;
};

struct ViolationRecord {
  std::string review_id;
  std::string app_id;
  std::vector<ViolatedItem> items;  // dictionary order
  double compound = 0.0;
  sentiment::Polarity polarity = sentiment::Polarity::kNeutral;
  std::vector<std::string> features;  // matched feature phrases
  std::int64_t likes = 0;

  std::vector<std::string> categories() const {
    std::vector<std::string> out;
    for (const auto& i : items) {
      if (std::find(out.begin(), out.end(), i.category) == out.end()) out.push_back(i.category);
    }
    return out;
  }

  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

enum class Outcome { kViolation, kNoViolation, kDegenerate };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kViolation: return "violation";
    case Outcome::kNoViolation: return "no-violation";
    case Outcome::kDegenerate: return "degenerate";
  }
  return "?";
}

inline Outcome parse_outcome(const std::string& s) {
  if (s == "violation") return Outcome::kViolation;
  if (s == "no-violation") return Outcome::kNoViolation;
  if (s == "degenerate") return Outcome::kDegenerate;
  throw DataError("unknown outcome '" + s + "'");
}

/// One ledger line per processed review, including items below threshold.
struct LedgerEntry {
  struct Match {
    std::string item;
    std::string category;
    std::size_t tv = 0;
    double probability = 0.0;

    friend bool operator==(const Match&, const Match&) = default;
  };

  std::string review_id;
  std::string app_id;
  Outcome outcome = Outcome::kNoViolation;
  double compound = 0.0;
  sentiment::Polarity polarity = sentiment::Polarity::kNeutral;
  std::size_t tr = 0;
  std::vector<Match> matches;

  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

struct Detection {
  LedgerEntry entry;
  std::optional<ViolationRecord> record;
};

/// The decision rule on already-computed stems and sentiment.
inline Detection decide(const corpus::Review& review, const std::vector<std::string>& content_stems,
                        const sentiment::SentimentResult& sent, const values::ValuesDictionary& dict,
                        const std::vector<features::AppFeature>& app_features, const Options& opt = {}) {
  Detection d;
  d.entry.review_id = review.review_id;
  d.entry.app_id = review.app_id;
  d.entry.compound = sent.compound;
  d.entry.polarity = sent.polarity;
  d.entry.tr = content_stems.size();

  const values::MatchResult m = values::match_values(content_stems, dict);
  if (m.degenerate) {
    d.entry.outcome = Outcome::kDegenerate;
    return d;
  }
  std::vector<ViolatedItem> kept;
  for (const auto& vm : m.matches) {
    const auto& item = dict.items()[vm.item];
    d.entry.matches.push_back({item.name, std::string(item.category_name()), vm.tv, vm.probability});
    if (vm.probability >= opt.p_threshold) {
      kept.push_back({item.name, std::string(item.category_name()), vm.probability});
    }
  }
  if (kept.empty() || !(sent.compound < opt.sentiment.positive)) {
    d.entry.outcome = Outcome::kNoViolation;
    return d;
  }
  d.entry.outcome = Outcome::kViolation;
  ViolationRecord r;
  r.review_id = review.review_id;
  r.app_id = review.app_id;
  r.items = std::move(kept);
  r.compound = sent.compound;
  r.polarity = sent.polarity;
  r.likes = review.likes;
  for (const auto& f : features::match_features_in_review(app_features, content_stems, opt.window)) {
    r.features.push_back(f.phrase());
  }
  d.record = std::move(r);
  return d;
}

/// Preprocess, score the corrected text, match values, apply the rule.
inline Detection detect(const corpus::Review& review, const Assets& assets,
                        const std::vector<features::AppFeature>& app_features, const Options& opt = {},
                        textprep::CorrectionCache* cache = nullptr) {
  const auto pre = textprep::preprocess(review.text, assets.frequency, assets.stoplist, cache);
  const auto sent = sentiment::score(pre.corrected_text, assets.sentiment, opt.sentiment);
  return decide(review, pre.content_stems, sent, assets.dictionary, app_features, opt);
}

struct PipelineResult {
  std::vector<ViolationRecord> records;  // input order
  std::vector<LedgerEntry> ledger;       // one per review, input order
  std::map<std::string, std::vector<features::AppFeature>> features;  // by app_id
  std::size_t degenerate = 0;
};

/// Features for every app, extracted once.
inline std::map<std::string, std::vector<features::AppFeature>> extract_app_features(
    const std::vector<corpus::AppRecord>& apps, const features::FeatureExtractor& fx) {
  std::map<std::string, std::vector<features::AppFeature>> out;
  for (const auto& a : apps) out[a.app_id] = fx.extract(a.description, a.app_id);
  return out;
}

/// Runs detection over the corpus on `workers` threads. Results are
/// assembled in input order, so output does not depend on the worker count.
inline PipelineResult run_pipeline(const corpus::ReviewCollection& corpus,
                                   const std::vector<corpus::AppRecord>& apps, const Assets& assets,
                                   const Options& opt = {}, std::size_t workers = 1) {
  PipelineResult out;
  out.features = extract_app_features(apps, assets.feature_extractor());
  for (const auto& r : corpus) {
    if (!out.features.count(r.app_id)) {
      throw DataError("review '" + r.review_id + "': app_id '" + r.app_id + "' has no app metadata");
    }
  }

  const std::vector<corpus::Review>& reviews = corpus.reviews();
  std::vector<Detection> results(reviews.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto work = [&] {
    textprep::CorrectionCache cache;
    try {
      for (std::size_t i = next++; i < reviews.size(); i = next++) {
        results[i] = detect(reviews[i], assets, out.features.at(reviews[i].app_id), opt, &cache);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = reviews.size();
    }
  };
  const std::size_t n = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, reviews.size()));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& d : results) {
    if (d.entry.outcome == Outcome::kDegenerate) ++out.degenerate;
    out.ledger.push_back(std::move(d.entry));
    if (d.record) out.records.push_back(std::move(*d.record));
  }
  return out;
}

// ---- serialization ----

inline nlohmann::ordered_json to_json(const ViolationRecord& r) {
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& i : r.items) {
    items.push_back({{"item", i.item}, {"category", i.category}, {"probability", i.probability}});
  }
  return {{"review_id", r.review_id}, {"app_id", r.app_id}, {"items", items},
          {"compound", r.compound},   {"polarity", sentiment::to_string(r.polarity)},
          {"features", r.features},   {"likes", r.likes}};
}

inline nlohmann::ordered_json to_json(const LedgerEntry& e) {
  nlohmann::ordered_json matches = nlohmann::ordered_json::array();
  for (const auto& m : e.matches) {
    matches.push_back(
        {{"item", m.item}, {"category", m.category}, {"tv", m.tv}, {"probability", m.probability}});
  }
  return {{"review_id", e.review_id}, {"app_id", e.app_id}, {"outcome", to_string(e.outcome)},
          {"compound", e.compound},   {"polarity", sentiment::to_string(e.polarity)},
          {"tr", e.tr},               {"matches", matches}};
}

inline nlohmann::ordered_json to_json(const features::AppFeature& f) {
  std::vector<std::string> tags;
  for (auto t : f.tags) tags.emplace_back(features::to_string(t));
  return {{"app_id", f.source_app}, {"feature", f.phrase()}, {"tokens", f.tokens},
          {"stems", f.stems},       {"tags", tags},          {"pattern", f.source_pattern}};
}

template <class T>
std::string to_jsonl(const std::vector<T>& xs) {
  std::string out;
  for (const auto& x : xs) out += to_json(x).dump() + "\n";
  return out;
}

inline std::string features_jsonl(const std::map<std::string, std::vector<features::AppFeature>>& by_app) {
  std::string out;
  for (const auto& [app, fs] : by_app) out += to_jsonl(fs);
  return out;
}

namespace detail {

inline sentiment::Polarity parse_polarity(const std::string& s) {
  if (s == "positive") return sentiment::Polarity::kPositive;
  if (s == "neutral") return sentiment::Polarity::kNeutral;
  if (s == "negative") return sentiment::Polarity::kNegative;
  throw DataError("unknown polarity '" + s + "'");
}

template <class Fn>
void for_each_json_line(std::string_view content, const std::string& name, Fn&& fn) {
  std::size_t lineno = 0;
  for (auto line : text::lines(content)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const std::string ctx = name + ":" + std::to_string(lineno);
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(ctx + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(ctx + ": " + e.what());
    }
  }
}

}  // namespace detail

inline std::vector<ViolationRecord> parse_violations(std::string_view content, const std::string& name) {
  std::vector<ViolationRecord> out;
  detail::for_each_json_line(content, name, [&](const nlohmann::json& j) {
    ViolationRecord r;
    r.review_id = j.at("review_id").get<std::string>();
    r.app_id = j.at("app_id").get<std::string>();
    for (const auto& i : j.at("items")) {
      r.items.push_back({i.at("item").get<std::string>(), i.at("category").get<std::string>(),
                         i.at("probability").get<double>()});
    }
    r.compound = j.at("compound").get<double>();
    r.polarity = detail::parse_polarity(j.at("polarity").get<std::string>());
    r.features = j.at("features").get<std::vector<std::string>>();
    r.likes = j.at("likes").get<std::int64_t>();
    out.push_back(std::move(r));
  });
  return out;
}

inline std::vector<ViolationRecord> load_violations(const std::filesystem::path& path) {
  return parse_violations(text::read_file(path), path.string());
}

inline std::vector<LedgerEntry> parse_ledger(std::string_view content, const std::string& name) {
  std::vector<LedgerEntry> out;
  detail::for_each_json_line(content, name, [&](const nlohmann::json& j) {
    LedgerEntry e;
    e.review_id = j.at("review_id").get<std::string>();
    e.app_id = j.at("app_id").get<std::string>();
    e.outcome = parse_outcome(j.at("outcome").get<std::string>());
    e.compound = j.at("compound").get<double>();
    e.polarity = detail::parse_polarity(j.at("polarity").get<std::string>());
    e.tr = j.at("tr").get<std::size_t>();
    for (const auto& m : j.at("matches")) {
      e.matches.push_back({m.at("item").get<std::string>(), m.at("category").get<std::string>(),
                           m.at("tv").get<std::size_t>(), m.at("probability").get<double>()});
    }
    out.push_back(std::move(e));
  });
  return out;
}

inline std::vector<LedgerEntry> load_ledger(const std::filesystem::path& path) {
  return parse_ledger(text::read_file(path), path.string());
}

}  // namespace hvd::detector
