#pragma once

// Command-line front end: analyze, evaluate, extract-features, dict-validate
// and report. Exit codes: 0 ok, 1 usage, 2 data/validation, 3 I/O.

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hvd/analytics.hpp"
#include "hvd/assets.hpp"
#include "hvd/corpus.hpp"
#include "hvd/detector.hpp"
#include "hvd/error.hpp"
#include "hvd/report.hpp"
#include "hvd/values.hpp"

namespace hvd::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitIo = 3;

struct RunConfig {
  std::optional<fs::path> reviews;
  std::optional<fs::path> apps;
  std::optional<fs::path> truthset;
  std::optional<fs::path> out;
  AssetPaths assets;
  double p_threshold = 0.05;
  double positive_threshold = 0.05;
  double negative_threshold = -0.05;
  std::size_t min_tokens = 3;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "json";

  void validate() const {
    if (!(p_threshold > 0.0 && p_threshold <= 1.0)) throw UsageError("p_threshold must be in (0, 1]");
    if (!(negative_threshold <= positive_threshold) || negative_threshold < -1.0 || positive_threshold > 1.0) {
      throw UsageError("sentiment thresholds must satisfy -1 <= negative <= positive <= 1");
    }
    if (min_tokens < 1) throw UsageError("min_tokens must be at least 1");
    if (workers < 1) throw UsageError("workers must be at least 1");
    report::parse_format(format);
  }

  detector::Options detector_options() const {
    detector::Options o;
    o.p_threshold = p_threshold;
    o.sentiment = {positive_threshold, negative_threshold};
    return o;
  }
};

/// Reads a JSON config file into `cfg`. Keys mirror the long flag names with
/// underscores (e.g. "p_threshold", "pos_lexicon").
inline void apply_config_file(const fs::path& path, RunConfig& cfg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw DataError(path.string() + ": config must be a JSON object");
  const auto str = [&](const std::string& k, const nlohmann::json& v) {
    if (!v.is_string()) throw DataError(path.string() + ": '" + k + "' must be a string");
    return v.get<std::string>();
  };
  const auto num = [&](const std::string& k, const nlohmann::json& v) {
    if (!v.is_number()) throw DataError(path.string() + ": '" + k + "' must be a number");
    return v.get<double>();
  };
  const auto count = [&](const std::string& k, const nlohmann::json& v) {
    if (!v.is_number_unsigned()) throw DataError(path.string() + ": '" + k + "' must be a non-negative integer");
    return v.get<std::size_t>();
  };
  // relative paths in the file are relative to the file
  const fs::path base = path.parent_path();
  const auto file = [&](const std::string& k, const nlohmann::json& v) { return base / str(k, v); };
  for (const auto& [k, v] : j.items()) {
    if (k == "reviews") cfg.reviews = file(k, v);
    else if (k == "apps") cfg.apps = file(k, v);
    else if (k == "truthset") cfg.truthset = file(k, v);
    else if (k == "out") cfg.out = file(k, v);
    else if (k == "assets") cfg.assets.dir = file(k, v);
    else if (k == "dict") cfg.assets.dictionary = file(k, v);
    else if (k == "frequency") cfg.assets.frequency = file(k, v);
    else if (k == "stopwords") cfg.assets.stopwords = file(k, v);
    else if (k == "sentiment_lexicon") cfg.assets.sentiment_lexicon = file(k, v);
    else if (k == "boosters") cfg.assets.boosters = file(k, v);
    else if (k == "negations") cfg.assets.negations = file(k, v);
    else if (k == "pos_lexicon") cfg.assets.pos_lexicon = file(k, v);
    else if (k == "patterns") cfg.assets.patterns = file(k, v);
    else if (k == "allowlist") cfg.assets.allowlist = file(k, v);
    else if (k == "p_threshold") cfg.p_threshold = num(k, v);
    else if (k == "positive_threshold") cfg.positive_threshold = num(k, v);
    else if (k == "negative_threshold") cfg.negative_threshold = num(k, v);
    else if (k == "min_tokens") cfg.min_tokens = count(k, v);
    else if (k == "workers") cfg.workers = count(k, v);
    else if (k == "format") cfg.format = str(k, v);
    else throw DataError(path.string() + ": unknown config key '" + k + "'");
  }
}

namespace detail {

// Flag values; applied over the config file only when given.
struct Flags {
  std::string config, reviews, apps, truthset, out, assets, dict, frequency, stopwords, sentiment_lexicon, boosters,
      negations, pos_lexicon, patterns, allowlist, format;
  double p_threshold = 0, positive_threshold = 0, negative_threshold = 0;
  std::size_t min_tokens = 0, workers = 0;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters;

  template <class T, class Fn>
  void add(CLI::App* app, const std::string& name, T& var, const std::string& help, Fn apply) {
    CLI::Option* o = app->add_option(name, var, help);
    setters.push_back({o, [this, apply](RunConfig& c) { apply(*this, c); }});
  }
};

inline void add_asset_flags(CLI::App* app, Flags& f) {
  f.add(app, "--assets", f.assets, "asset directory (default: $HVD_ASSETS or the bundled data)",
        [](Flags& f, RunConfig& c) { c.assets.dir = f.assets; });
  f.add(app, "--dict", f.dict, "values dictionary JSON", [](Flags& f, RunConfig& c) { c.assets.dictionary = f.dict; });
  f.add(app, "--frequency", f.frequency, "word frequency list",
        [](Flags& f, RunConfig& c) { c.assets.frequency = f.frequency; });
  f.add(app, "--stopwords", f.stopwords, "stopword list", [](Flags& f, RunConfig& c) { c.assets.stopwords = f.stopwords; });
  f.add(app, "--sentiment-lexicon", f.sentiment_lexicon, "sentiment valence lexicon",
        [](Flags& f, RunConfig& c) { c.assets.sentiment_lexicon = f.sentiment_lexicon; });
  f.add(app, "--boosters", f.boosters, "booster word list", [](Flags& f, RunConfig& c) { c.assets.boosters = f.boosters; });
  f.add(app, "--negations", f.negations, "negation word list",
        [](Flags& f, RunConfig& c) { c.assets.negations = f.negations; });
  f.add(app, "--pos-lexicon", f.pos_lexicon, "part-of-speech lexicon",
        [](Flags& f, RunConfig& c) { c.assets.pos_lexicon = f.pos_lexicon; });
  f.add(app, "--patterns", f.patterns, "feature POS patterns",
        [](Flags& f, RunConfig& c) { c.assets.patterns = f.patterns; });
  f.add(app, "--allowlist", f.allowlist, "only keep features listed here",
        [](Flags& f, RunConfig& c) { c.assets.allowlist = f.allowlist; });
}

inline void add_threshold_flags(CLI::App* app, Flags& f) {
  f.add(app, "--p-threshold", f.p_threshold, "keyword density threshold (default 0.05)",
        [](Flags& f, RunConfig& c) { c.p_threshold = f.p_threshold; });
  f.add(app, "--positive-threshold", f.positive_threshold, "compound >= this is positive (default 0.05)",
        [](Flags& f, RunConfig& c) { c.positive_threshold = f.positive_threshold; });
  f.add(app, "--negative-threshold", f.negative_threshold, "compound <= this is negative (default -0.05)",
        [](Flags& f, RunConfig& c) { c.negative_threshold = f.negative_threshold; });
  f.add(app, "--min-tokens", f.min_tokens, "drop reviews with fewer words (default 3)",
        [](Flags& f, RunConfig& c) { c.min_tokens = f.min_tokens; });
}

inline void add_format_flag(CLI::App* app, Flags& f) {
  f.add(app, "--format", f.format, "report format: json, csv or md (default json)",
        [](Flags& f, RunConfig& c) { c.format = f.format; });
}

inline RunConfig resolve(const Flags& f, CLI::App* sub) {
  RunConfig cfg;
  if (sub->get_option("--config")->count()) {
    apply_config_file(f.config, cfg);
  }
  for (const auto& [opt, set] : f.setters) {
    if (opt->count()) set(cfg);
  }
  cfg.validate();
  return cfg;
}

inline const fs::path& need(const std::optional<fs::path>& p, const char* flag) {
  if (!p) throw UsageError(std::string(flag) + " is required");
  return *p;
}

inline void require_file(const fs::path& p, const std::string& what) {
  if (!fs::exists(p)) throw DataError(what + " not found: " + p.string());
}

inline void write_out(const fs::path& p, const std::string& content) {
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create " + p.parent_path().string() + ": " + ec.message());
  text::write_file(p, content);
}

struct AnalyzeOutputs {
  std::vector<detector::ViolationRecord> records;
  std::vector<detector::LedgerEntry> ledger;
};

inline AnalyzeOutputs load_analyze_outputs(const fs::path& out) {
  const fs::path v = out / "violations.jsonl";
  const fs::path l = out / "ledger.jsonl";
  for (const auto& p : {v, l}) {
    if (!fs::exists(p)) throw DataError(p.string() + " not found; run analyze first");
  }
  return {detector::load_violations(v), detector::load_ledger(l)};
}

inline std::vector<std::string> ledger_ids(const std::vector<detector::LedgerEntry>& ledger) {
  std::vector<std::string> ids;
  for (const auto& e : ledger) ids.push_back(e.review_id);
  return ids;
}

inline report::Inputs report_inputs(const AnalyzeOutputs& a, const std::vector<corpus::AppRecord>& apps) {
  std::set<std::string> app_ids;
  for (const auto& e : a.ledger) app_ids.insert(e.app_id);
  report::Inputs in;
  in.stats = analytics::aggregate_by_category(a.records, a.ledger.size(), {app_ids.begin(), app_ids.end()});
  in.likes = analytics::aggregate_likes(a.records);
  in.features = analytics::associate_features(a.records);
  in.app_names = report::app_names(apps);
  return in;
}

inline std::string metrics_summary(const analytics::EvalMetrics& m) {
  const auto val = [](double x, bool undefined) { return undefined ? std::string("undefined") : report::fixed(x, 4); };
  return "precision " + val(m.precision, m.precision_undefined) + "  recall " + val(m.recall, m.recall_undefined) +
         "  f_measure " + val(m.f_measure, m.f_undefined) + "  (tp " + std::to_string(m.tp) + ", fp " +
         std::to_string(m.fp) + ", fn " + std::to_string(m.fn) + ", tn " + std::to_string(m.tn) + ")";
}

inline int analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const fs::path& reviews_path = need(cfg.reviews, "--reviews");
  const fs::path& apps_path = need(cfg.apps, "--apps");
  const fs::path& dir = need(cfg.out, "--out");
  require_file(reviews_path, "reviews file");
  require_file(apps_path, "app metadata file");

  const Assets assets = load_assets(cfg.assets);
  const auto loaded = corpus::load_reviews(reviews_path);
  const auto apps = corpus::load_app_metadata(apps_path);
  const auto filtered = corpus::filter_informative(loaded, cfg.min_tokens);
  err << "analyze: " << loaded.size() << " reviews, " << filtered.discarded << " below " << cfg.min_tokens
      << " words\n";

  const auto result = detector::run_pipeline(filtered.kept, apps, assets, cfg.detector_options(), cfg.workers);
  write_out(dir / "violations.jsonl", detector::to_jsonl(result.records));
  write_out(dir / "ledger.jsonl", detector::to_jsonl(result.ledger));
  write_out(dir / "features.jsonl", detector::features_jsonl(result.features));

  nlohmann::ordered_json summary{{"reviews_loaded", loaded.size()},
                                 {"discarded_uninformative", filtered.discarded},
                                 {"analyzed", filtered.kept.size()},
                                 {"degenerate", result.degenerate},
                                 {"violations", result.records.size()},
                                 {"p_threshold", cfg.p_threshold},
                                 {"positive_threshold", cfg.positive_threshold},
                                 {"negative_threshold", cfg.negative_threshold},
                                 {"min_tokens", cfg.min_tokens}};
  write_out(dir / "run_summary.json", summary.dump(2) + "\n");

  const AnalyzeOutputs a{result.records, result.ledger};
  report::emit_report(report_inputs(a, apps), report::parse_format(cfg.format), dir);
  err << "analyze: " << result.records.size() << " violations among " << filtered.kept.size() << " reviews ("
      << result.degenerate << " degenerate)\n";
  out << dir.string() << "\n";
  return kExitOk;
}

inline int evaluate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const fs::path& truth_path = need(cfg.truthset, "--truthset");
  const fs::path& dir = need(cfg.out, "--out");
  require_file(truth_path, "truthset");
  const auto a = load_analyze_outputs(dir);
  const auto e = analytics::evaluate(a.records, analytics::load_truthset(truth_path), ledger_ids(a.ledger));

  report::Inputs in;
  in.metrics = e;
  const auto format = report::parse_format(cfg.format);
  if (format == report::Format::kJson) {
    const nlohmann::ordered_json j{{"review_level", report::detail::metrics_json(e.reviews)},
                                   {"item_level", report::detail::metrics_json(e.items)}};
    write_out(dir / "metrics.json", j.dump(2) + "\n");
  } else {
    const auto t = report::detail::metrics_table(e);
    write_out(dir / (std::string("metrics") + report::extension(format)),
              format == report::Format::kCsv ? t.csv() : "# Evaluation\n\n" + t.md());
  }
  out << "review-level: " << metrics_summary(e.reviews) << "\n";
  out << "item-level:   " << metrics_summary(e.items) << "\n";
  return kExitOk;
}

inline int extract_features(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const fs::path& apps_path = need(cfg.apps, "--apps");
  require_file(apps_path, "app metadata file");
  const auto apps = corpus::load_app_metadata(apps_path);
  features::FeatureExtractor fx(features::PosLexicon::load(cfg.assets.resolve(cfg.assets.pos_lexicon, "pos_lexicon.tsv")),
                                features::load_patterns(cfg.assets.resolve(cfg.assets.patterns, "feature_patterns.txt")),
                                textprep::load_stoplist(cfg.assets.resolve(cfg.assets.stopwords, "stopwords.txt")));
  if (cfg.assets.allowlist) {
    std::vector<std::string> phrases;
    const std::string content = text::read_file(*cfg.assets.allowlist);
    for (auto line : text::lines(content)) {
      const auto s = text::trim(line);
      if (!s.empty() && s.front() != '#') phrases.emplace_back(s);
    }
    fx.set_allowlist(phrases);
  }
  const auto by_app = detector::extract_app_features(apps, fx);
  std::size_t n = 0;
  for (const auto& [app, fs] : by_app) n += fs.size();
  const std::string jsonl = detector::features_jsonl(by_app);
  if (cfg.out) {
    write_out(*cfg.out, jsonl);
  } else {
    out << jsonl;
  }
  err << "extract-features: " << n << " features from " << apps.size() << " apps\n";
  return kExitOk;
}

inline int dict_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const fs::path p = cfg.assets.resolve(cfg.assets.dictionary, "values_dictionary.json");
  const auto d = values::ValuesDictionary::load(p);
  for (const auto& w : d.warnings()) err << "warning: " << w << "\n";
  std::size_t keywords = 0;
  for (const auto& i : d.items()) keywords += i.keywords.size();
  out << "ok: " << d.size() << " items in " << values::kCategoryCount << " categories, " << keywords
      << " keyword stems\n";
  return kExitOk;
}

inline int make_report(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const fs::path& dir = need(cfg.out, "--out");
  const auto a = load_analyze_outputs(dir);
  std::vector<corpus::AppRecord> apps;
  if (cfg.apps) apps = corpus::load_app_metadata(*cfg.apps);
  report::Inputs in = report_inputs(a, apps);
  if (cfg.truthset) {
    in.metrics = analytics::evaluate(a.records, analytics::load_truthset(*cfg.truthset), ledger_ids(a.ledger));
  }
  for (const auto& p : report::emit_report(in, report::parse_format(cfg.format), dir)) out << p.string() << "\n";
  return kExitOk;
}

inline std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

inline int exit_code(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::kUsage: return kExitUsage;
    case Error::Kind::kData:
    case Error::Kind::kValidation: return kExitData;
    case Error::Kind::kIo: return kExitIo;
  }
  return kExitData;
}

}  // namespace detail

/// Runs one subcommand. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Detects human-values violations in app reviews.", "hvd"};
  app.require_subcommand(1);
  app.fallthrough(false);

  detail::Flags f;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "JSON config file; flags override its values");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "run detection over a review corpus and write results");
  common(analyze);
  f.add(analyze, "--reviews", f.reviews, "reviews (.jsonl or .csv)", [](detail::Flags& f, RunConfig& c) { c.reviews = f.reviews; });
  f.add(analyze, "--apps", f.apps, "app metadata (.jsonl)", [](detail::Flags& f, RunConfig& c) { c.apps = f.apps; });
  f.add(analyze, "--out", f.out, "output directory", [](detail::Flags& f, RunConfig& c) { c.out = f.out; });
  f.add(analyze, "--workers", f.workers, "worker threads (default: hardware concurrency)",
        [](detail::Flags& f, RunConfig& c) { c.workers = f.workers; });
  detail::add_asset_flags(analyze, f);
  detail::add_threshold_flags(analyze, f);
  detail::add_format_flag(analyze, f);

  CLI::App* evaluate = app.add_subcommand("evaluate", "score analyze output against a labelled truthset");
  common(evaluate);
  f.add(evaluate, "--truthset", f.truthset, "truthset (.jsonl)", [](detail::Flags& f, RunConfig& c) { c.truthset = f.truthset; });
  f.add(evaluate, "--out", f.out, "directory holding analyze output", [](detail::Flags& f, RunConfig& c) { c.out = f.out; });
  detail::add_format_flag(evaluate, f);

  CLI::App* extract = app.add_subcommand("extract-features", "extract app features from app descriptions");
  common(extract);
  f.add(extract, "--apps", f.apps, "app metadata (.jsonl)", [](detail::Flags& f, RunConfig& c) { c.apps = f.apps; });
  f.add(extract, "--out", f.out, "output file (default: stdout)", [](detail::Flags& f, RunConfig& c) { c.out = f.out; });
  detail::add_asset_flags(extract, f);

  CLI::App* validate = app.add_subcommand("dict-validate", "check a values dictionary");
  common(validate);
  detail::add_asset_flags(validate, f);

  CLI::App* rep = app.add_subcommand("report", "rebuild report files from analyze output");
  common(rep);
  f.add(rep, "--out", f.out, "directory holding analyze output", [](detail::Flags& f, RunConfig& c) { c.out = f.out; });
  f.add(rep, "--apps", f.apps, "app metadata for display names", [](detail::Flags& f, RunConfig& c) { c.apps = f.apps; });
  f.add(rep, "--truthset", f.truthset, "also evaluate against this truthset",
        [](detail::Flags& f, RunConfig& c) { c.truthset = f.truthset; });
  detail::add_format_flag(rep, f);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {  // --help
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << detail::one_line(e.what()) << "\n" << app.help();
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const RunConfig cfg = detail::resolve(f, sub);
    if (sub == analyze) return detail::analyze(cfg, out, err);
    if (sub == evaluate) return detail::evaluate(cfg, out, err);
    if (sub == extract) return detail::extract_features(cfg, out, err);
    if (sub == validate) return detail::dict_validate(cfg, out, err);
    return detail::make_report(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return detail::exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return kExitData;
  }
}

}  // namespace hvd::cli
