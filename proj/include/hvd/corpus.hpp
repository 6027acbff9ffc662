#pragma once

// Review and app-metadata ingestion (JSONL or CSV exports) and the
// informativeness filter.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "hvd/error.hpp"
#include "hvd/text_util.hpp"
#include "hvd/textprep.hpp"

namespace hvd::corpus {

struct Review {
  std::string review_id;
  std::string app_id;
  std::string text;
  int rating = 0;
  std::int64_t likes = 0;
  std::optional<std::string> date;

  friend bool operator==(const Review&, const Review&) = default;
};

struct AppRecord {
  std::string app_id;
  std::string name;
  std::string category;
  std::string description;

  friend bool operator==(const AppRecord&, const AppRecord&) = default;
};

/// Reviews in input order. Use add() to keep review ids unique.
class ReviewCollection {
 public:
  void add(Review r) {
    if (r.review_id.empty()) throw DataError("review with empty review_id");
    if (!ids_.insert(r.review_id).second) {
      throw DataError("duplicate review_id '" + r.review_id + "'");
    }
    ++source_counts_[r.app_id];
    reviews_.push_back(std::move(r));
  }

  const std::vector<Review>& reviews() const { return reviews_; }
  const std::map<std::string, std::size_t>& source_counts() const { return source_counts_; }
  std::size_t size() const { return reviews_.size(); }
  bool empty() const { return reviews_.empty(); }
  bool contains(const std::string& id) const { return ids_.count(id) != 0; }

  auto begin() const { return reviews_.begin(); }
  auto end() const { return reviews_.end(); }

  friend bool operator==(const ReviewCollection& a, const ReviewCollection& b) {
    return a.reviews_ == b.reviews_;
  }

 private:
  std::vector<Review> reviews_;
  std::unordered_set<std::string> ids_;
  std::map<std::string, std::size_t> source_counts_;
};

enum class Format { kJsonl, kCsv };

inline Format format_from_path(const std::filesystem::path& p) {
  return p.extension() == ".csv" ? Format::kCsv : Format::kJsonl;
}

namespace detail {

inline const std::vector<std::string>& review_keys() {
  static const std::vector<std::string> keys{"review_id", "app_id", "text", "rating", "likes", "date"};
  return keys;
}

inline std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

inline std::int64_t parse_int(std::string_view s, const std::string& ctx, const char* field) {
  s = text::trim(s);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(std::string(s), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw DataError(ctx + "field '" + field + "' is not an integer");
  }
  return v;
}

inline Review validated(Review r, const std::string& ctx) {
  if (r.review_id.empty()) throw DataError(ctx + "empty review_id");
  if (r.app_id.empty()) throw DataError(ctx + "empty app_id");
  if (r.rating < 1 || r.rating > 5) {
    throw DataError(ctx + "rating " + std::to_string(r.rating) + " outside 1..5");
  }
  if (r.likes < 0) throw DataError(ctx + "likes must be non-negative");
  return r;
}

inline Review review_from_json(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_object()) throw DataError(ctx + "expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    const auto& keys = review_keys();
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw DataError(ctx + "unknown field '" + k + "'");
    }
  }
  const auto str = [&](const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw DataError(ctx + "missing required field '" + key + "'");
    if (!it->is_string()) throw DataError(ctx + "field '" + key + "' must be a string");
    return it->get<std::string>();
  };
  const auto integer = [&](const char* key) -> std::int64_t {
    const auto it = j.find(key);
    if (it == j.end()) throw DataError(ctx + "missing required field '" + key + "'");
    if (!it->is_number_integer()) throw DataError(ctx + "field '" + key + "' must be an integer");
    return it->get<std::int64_t>();
  };
  Review r;
  r.review_id = str("review_id");
  r.app_id = str("app_id");
  r.text = str("text");
  const std::int64_t rating = integer("rating");
  if (rating < 1 || rating > 5) throw DataError(ctx + "rating " + std::to_string(rating) + " outside 1..5");
  r.rating = static_cast<int>(rating);
  r.likes = integer("likes");
  if (const auto it = j.find("date"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError(ctx + "field 'date' must be a string");
    r.date = it->get<std::string>();
  }
  return validated(std::move(r), ctx);
}

}  // namespace detail

/// RFC 4180 reader. Returns records with the 1-based line each one starts on.
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

inline std::vector<CsvRecord> parse_csv(std::string_view s, const std::string& name) {
  std::vector<CsvRecord> out;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < s.size()) {
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool end_of_record = false;
    while (!end_of_record) {
      field.clear();
      if (i < s.size() && s[i] == '"') {
        ++i;
        while (true) {
          if (i >= s.size()) {
            throw DataError(name + ":" + std::to_string(rec.line) + ": unterminated quoted field");
          }
          if (s[i] == '"') {
            if (i + 1 < s.size() && s[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (s[i] == '\n') ++line;
          field.push_back(s[i++]);
        }
        if (i < s.size() && s[i] != ',' && s[i] != '\n' && s[i] != '\r') {
          throw DataError(name + ":" + std::to_string(line) + ": text after closing quote");
        }
      } else {
        while (i < s.size() && s[i] != ',' && s[i] != '\n' && s[i] != '\r') {
          if (s[i] == '"') {
            throw DataError(name + ":" + std::to_string(line) + ": stray quote in unquoted field");
          }
          field.push_back(s[i++]);
        }
      }
      rec.fields.push_back(field);
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == '\r') ++i;
      if (i < s.size() && s[i] == '\n') ++i;
      ++line;
      end_of_record = true;
    }
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty();
    if (!blank) out.push_back(std::move(rec));
  }
  return out;
}

inline std::string csv_quote(std::string_view f) {
  if (f.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(f);
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

inline ReviewCollection parse_reviews(std::string_view content, Format format,
                                      const std::filesystem::path& name) {
  ReviewCollection out;
  if (format == Format::kJsonl) {
    std::size_t lineno = 0;
    for (auto line : text::lines(content)) {
      ++lineno;
      if (text::trim(line).empty()) continue;
      const std::string ctx = detail::where(name, lineno);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw DataError(ctx + "invalid JSON (" + e.what() + ")");
      }
      Review r = detail::review_from_json(j, ctx);
      if (out.contains(r.review_id)) throw DataError(ctx + "duplicate review_id '" + r.review_id + "'");
      out.add(std::move(r));
    }
    return out;
  }

  const auto records = parse_csv(content, name.string());
  if (records.empty()) return out;
  const auto& header = records.front().fields;
  std::map<std::string, std::size_t> col;
  for (std::size_t k = 0; k < header.size(); ++k) {
    const auto& keys = detail::review_keys();
    if (std::find(keys.begin(), keys.end(), header[k]) == keys.end()) {
      throw DataError(detail::where(name, 1) + "unknown column '" + header[k] + "'");
    }
    if (!col.emplace(header[k], k).second) {
      throw DataError(detail::where(name, 1) + "repeated column '" + header[k] + "'");
    }
  }
  for (std::size_t n = 1; n < records.size(); ++n) {
    const auto& rec = records[n];
    const std::string ctx = detail::where(name, rec.line);
    if (rec.fields.size() != header.size()) {
      throw DataError(ctx + "expected " + std::to_string(header.size()) + " fields, got " +
                      std::to_string(rec.fields.size()));
    }
    const auto field = [&](const char* key) -> const std::string& {
      const auto it = col.find(key);
      if (it == col.end()) throw DataError(ctx + "missing required field '" + key + "'");
      return rec.fields[it->second];
    };
    Review r;
    r.review_id = field("review_id");
    r.app_id = field("app_id");
    r.text = field("text");
    const std::int64_t rating = detail::parse_int(field("rating"), ctx, "rating");
    if (rating < 1 || rating > 5) throw DataError(ctx + "rating " + std::to_string(rating) + " outside 1..5");
    r.rating = static_cast<int>(rating);
    r.likes = detail::parse_int(field("likes"), ctx, "likes");
    if (const auto it = col.find("date"); it != col.end() && !rec.fields[it->second].empty()) {
      r.date = rec.fields[it->second];
    }
    r = detail::validated(std::move(r), ctx);
    if (out.contains(r.review_id)) throw DataError(ctx + "duplicate review_id '" + r.review_id + "'");
    out.add(std::move(r));
  }
  return out;
}

inline ReviewCollection load_reviews(const std::filesystem::path& path, Format format) {
  return parse_reviews(text::read_file(path), format, path);
}

inline ReviewCollection load_reviews(const std::filesystem::path& path) {
  return load_reviews(path, format_from_path(path));
}

inline nlohmann::ordered_json to_json(const Review& r) {
  nlohmann::ordered_json j;
  j["review_id"] = r.review_id;
  j["app_id"] = r.app_id;
  j["text"] = r.text;
  j["rating"] = r.rating;
  j["likes"] = r.likes;
  if (r.date) j["date"] = *r.date;
  return j;
}

inline std::string serialize_reviews(const ReviewCollection& c, Format format) {
  std::string out;
  if (format == Format::kJsonl) {
    for (const Review& r : c) out += to_json(r).dump() + "\n";
    return out;
  }
  out = "review_id,app_id,text,rating,likes,date\n";
  for (const Review& r : c) {
    out += csv_quote(r.review_id) + "," + csv_quote(r.app_id) + "," + csv_quote(r.text) + "," +
           std::to_string(r.rating) + "," + std::to_string(r.likes) + "," +
           csv_quote(r.date.value_or("")) + "\n";
  }
  return out;
}

inline void save_reviews(const ReviewCollection& c, const std::filesystem::path& path, Format format) {
  text::write_file(path, serialize_reviews(c, format));
}

struct FilterResult {
  ReviewCollection kept;
  std::size_t discarded = 0;
};

/// Keeps reviews with at least min_tokens word tokens (punctuation is not
/// counted). Order is preserved.
inline FilterResult filter_informative(const ReviewCollection& c, std::size_t min_tokens = 3) {
  if (min_tokens < 1) throw ValidationError("min_tokens must be at least 1");
  FilterResult out;
  for (const Review& r : c) {
    if (textprep::word_count(r.text) >= min_tokens) {
      out.kept.add(r);
    } else {
      ++out.discarded;
    }
  }
  return out;
}

inline std::vector<AppRecord> parse_app_metadata(std::string_view content,
                                                 const std::filesystem::path& name) {
  static const std::vector<std::string> keys{"app_id", "name", "category", "description"};
  std::vector<AppRecord> out;
  std::unordered_set<std::string> seen;
  std::size_t lineno = 0;
  for (auto line : text::lines(content)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const std::string ctx = detail::where(name, lineno);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(ctx + "invalid JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw DataError(ctx + "expected a JSON object");
    for (const auto& [k, v] : j.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        throw DataError(ctx + "unknown field '" + k + "'");
      }
      if (!v.is_string()) throw DataError(ctx + "field '" + k + "' must be a string");
    }
    AppRecord a;
    a.app_id = j.value("app_id", "");
    if (a.app_id.empty()) throw DataError(ctx + "missing app_id");
    a.name = j.value("name", "");
    a.category = j.value("category", "");
    a.description = j.value("description", "");
    if (!seen.insert(a.app_id).second) throw DataError(ctx + "duplicate app_id '" + a.app_id + "'");
    out.push_back(std::move(a));
  }
  return out;
}

inline std::vector<AppRecord> load_app_metadata(const std::filesystem::path& path) {
  return parse_app_metadata(text::read_file(path), path);
}

}  // namespace hvd::corpus
