#pragma once

// Writes aggregated results as JSON, CSV or Markdown files. Output is a pure
// function of the inputs: same stats in, same bytes out.

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "hvd/analytics.hpp"
#include "hvd/corpus.hpp"
#include "hvd/error.hpp"
#include "hvd/text_util.hpp"

namespace hvd::report {

enum class Format { kJson, kCsv, kMd };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  if (s == "md") return Format::kMd;
  throw UsageError("unknown report format '" + s + "' (expected json, csv or md)");
}

inline const char* extension(Format f) {
  switch (f) {
    case Format::kJson: return ".json";
    case Format::kCsv: return ".csv";
    case Format::kMd: return ".md";
  }
  return "";
}

/// Fixed-point with `decimals` digits.
inline std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

/// One decimal, dropping a trailing ".0" (10.0 -> "10").
inline std::string one_decimal(double x) {
  std::string s = fixed(x, 1);
  if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0) s.resize(s.size() - 2);
  return s;
}

struct Inputs {
  analytics::CategoryStats stats;
  analytics::LikesStats likes;
  analytics::FeatureValueTable features;
  std::optional<analytics::Evaluation> metrics;
  std::map<std::string, std::string> app_names;  // app_id -> display name

  std::string app_name(const std::string& id) const {
    const auto it = app_names.find(id);
    return it == app_names.end() ? id : it->second;
  }
};

inline std::map<std::string, std::string> app_names(const std::vector<corpus::AppRecord>& apps) {
  std::map<std::string, std::string> out;
  for (const auto& a : apps) out[a.app_id] = a.name.empty() ? a.app_id : a.name;
  return out;
}

namespace detail {

using values::kCategories;
using Json = nlohmann::ordered_json;

inline std::string cat_name(std::size_t c) { return std::string(kCategories[c].name); }

inline std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

inline std::size_t row_total(const analytics::Counts& c) {
  std::size_t t = 0;
  for (auto n : c) t += n;
  return t;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + corpus::csv_quote(cells[i]);
      out += "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }

  std::string md() const {
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
      out += "|";
      for (const auto& c : cells) {
        std::string esc;
        for (char ch : c) {
          if (ch == '|') esc += '\\';
          esc += ch;
        }
        out += " " + esc + " |";
      }
      out += "\n";
    };
    line(header);
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
    out += "\n";
    for (const auto& r : rows) line(r);
    return out;
  }
};

// Per-app matrix in alphabetical category order, with Average row.
inline Table app_table(const Inputs& in) {
  const auto order = analytics::alphabetical_categories();
  Table t;
  t.header.push_back("App");
  for (auto c : order) t.header.push_back(cat_name(c));
  t.header.push_back("Total");
  for (const auto& [app, counts] : in.stats.per_app) {
    std::vector<std::string> row{in.app_name(app)};
    for (auto c : order) row.push_back(std::to_string(counts[c]));
    row.push_back(std::to_string(row_total(counts)));
    t.rows.push_back(std::move(row));
  }
  std::vector<std::string> avg{"Average"};
  for (auto c : order) avg.push_back(one_decimal(in.stats.app_average[c]));
  avg.push_back(one_decimal(in.stats.app_average_total));
  t.rows.push_back(std::move(avg));
  return t;
}

inline Table percentage_table(const Inputs& in) {
  Table t{{"category", "review_count", "percentage", "item_count", "item_percentage"}, {}};
  for (auto c : analytics::alphabetical_categories()) {
    t.rows.push_back({cat_name(c), std::to_string(in.stats.review_counts[c]), fixed(in.stats.percentages[c], 2),
                      std::to_string(in.stats.item_counts[c]), fixed(in.stats.item_percentages[c], 2)});
  }
  return t;
}

inline Table item_table(const Inputs& in) {
  Table t{{"category", "item", "f"}, {}};
  for (auto c : analytics::alphabetical_categories()) {
    std::vector<std::pair<std::string, std::size_t>> items;
    for (const auto& [key, f] : in.stats.item_frequencies) {
      if (key.first == c) items.push_back({key.second, f});
    }
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [item, f] : items) t.rows.push_back({cat_name(c), item, std::to_string(f)});
  }
  return t;
}

inline Table likes_table(const Inputs& in) {
  Table t{{"category", "likes"}, {}};
  for (auto c : in.likes.ranking()) t.rows.push_back({cat_name(c), std::to_string(in.likes.likes[c])});
  return t;
}

inline Table feature_table(const Inputs& in) {
  Table t{{"feature", "app", "items", "support"}, {}};
  for (const auto& r : in.features) {
    std::vector<std::string> items(r.items.begin(), r.items.end());
    t.rows.push_back({capitalized(r.feature), in.app_name(r.app_id), text::join(items, "; "), std::to_string(r.support)});
  }
  return t;
}

inline std::vector<std::string> metric_cells(const std::string& scope, const analytics::EvalMetrics& m) {
  std::vector<std::string> undefined;
  if (m.precision_undefined) undefined.push_back("precision");
  if (m.recall_undefined) undefined.push_back("recall");
  if (m.f_undefined) undefined.push_back("f_measure");
  return {scope,
          std::to_string(m.tp),
          std::to_string(m.fp),
          std::to_string(m.fn),
          std::to_string(m.tn),
          fixed(m.precision, 4),
          fixed(m.recall, 4),
          fixed(m.f_measure, 4),
          text::join(undefined, "; ")};
}

inline Table metrics_table(const analytics::Evaluation& e) {
  Table t{{"scope", "tp", "fp", "fn", "tn", "precision", "recall", "f_measure", "undefined"}, {}};
  t.rows.push_back(metric_cells("review", e.reviews));
  t.rows.push_back(metric_cells("item", e.items));
  return t;
}

inline Json metrics_json(const analytics::EvalMetrics& m) {
  return {{"tp", m.tp},
          {"fp", m.fp},
          {"fn", m.fn},
          {"tn", m.tn},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f_measure", m.f_measure},
          {"precision_undefined", m.precision_undefined},
          {"recall_undefined", m.recall_undefined},
          {"f_undefined", m.f_undefined}};
}

inline Json category_json(const Inputs& in) {
  const auto& s = in.stats;
  Json cats = Json::array();
  for (auto c : analytics::alphabetical_categories()) {
    cats.push_back({{"category", cat_name(c)},
                    {"review_count", s.review_counts[c]},
                    {"percentage", s.percentages[c]},
                    {"item_count", s.item_counts[c]},
                    {"item_percentage", s.item_percentages[c]},
                    {"app_average", s.app_average[c]}});
  }
  Json apps = Json::array();
  for (const auto& [app, counts] : s.per_app) {
    Json byc = Json::object();
    for (auto c : analytics::alphabetical_categories()) byc[cat_name(c)] = counts[c];
    apps.push_back({{"app_id", app}, {"name", in.app_name(app)}, {"counts", byc}, {"total", row_total(counts)}});
  }
  return {{"corpus_size", s.corpus_size},
          {"violating_reviews", s.violating_reviews},
          {"violation_rate", s.violation_rate()},
          {"empty", s.empty},
          {"total", s.total},
          {"item_total", s.item_total},
          {"app_average_total", s.app_average_total},
          {"categories", cats},
          {"per_app", apps}};
}

inline Json rows_json(const Table& t) {
  Json out = Json::array();
  for (const auto& r : t.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) o[t.header[i]] = r[i];
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace detail

/// Writes category_summary, item_frequencies, likes_summary,
/// feature_value_table and (when metrics are given) metrics in `format`,
/// plus category_percentages.csv for charting. Returns the paths written.
inline std::vector<std::filesystem::path> emit_report(const Inputs& in, Format format,
                                                      const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const auto put = [&](const std::string& stem, const std::string& ext, const std::string& content) {
    const auto p = dir / (stem + ext);
    text::write_file(p, content);
    written.push_back(p);
  };

  const auto apps = detail::app_table(in);
  const auto pct = detail::percentage_table(in);
  const auto items = detail::item_table(in);
  const auto likes = detail::likes_table(in);
  const auto feats = detail::feature_table(in);
  const std::string ext = extension(format);

  switch (format) {
    case Format::kJson: {
      put("category_summary", ext, detail::category_json(in).dump(2) + "\n");
      put("item_frequencies", ext, detail::rows_json(items).dump(2) + "\n");
      detail::Json lj = detail::Json::array();
      for (auto c : in.likes.ranking()) lj.push_back({{"category", detail::cat_name(c)}, {"likes", in.likes.likes[c]}});
      put("likes_summary", ext, lj.dump(2) + "\n");
      detail::Json fj = detail::Json::array();
      for (const auto& r : in.features) {
        fj.push_back({{"feature", r.feature}, {"app_id", r.app_id}, {"app", in.app_name(r.app_id)},
                      {"items", std::vector<std::string>(r.items.begin(), r.items.end())}, {"support", r.support}});
      }
      put("feature_value_table", ext, fj.dump(2) + "\n");
      if (in.metrics) {
        const detail::Json mj{{"review_level", detail::metrics_json(in.metrics->reviews)},
                              {"item_level", detail::metrics_json(in.metrics->items)}};
        put("metrics", ext, mj.dump(2) + "\n");
      }
      break;
    }
    case Format::kCsv:
      put("category_summary", ext, apps.csv());
      put("item_frequencies", ext, items.csv());
      put("likes_summary", ext, likes.csv());
      put("feature_value_table", ext, feats.csv());
      if (in.metrics) put("metrics", ext, detail::metrics_table(*in.metrics).csv());
      break;
    case Format::kMd: {
      const auto& s = in.stats;
      std::string cs = "# Violations per category\n\n" + apps.md() + "\n" + pct.md() + "\n";
      cs += "Reviews with a violation: " + std::to_string(s.violating_reviews) + " of " +
            std::to_string(s.corpus_size) + " (" + fixed(100.0 * s.violation_rate(), 1) + "%)\n";
      put("category_summary", ext, cs);
      put("item_frequencies", ext, "# Value item frequencies\n\n" + items.md());
      put("likes_summary", ext, "# Likes per category\n\n" + likes.md());
      put("feature_value_table", ext, "# App features and violated values\n\n" + feats.md());
      if (in.metrics) put("metrics", ext, "# Evaluation\n\n" + detail::metrics_table(*in.metrics).md());
      break;
    }
  }
  put("category_percentages", ".csv", pct.csv());
  return written;
}

}  // namespace hvd::report
