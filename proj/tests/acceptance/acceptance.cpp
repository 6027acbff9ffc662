// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "app_counts.hpp"
#include "hvd/analytics.hpp"
#include "hvd/assets.hpp"
#include "hvd/detector.hpp"
#include "hvd/features.hpp"
#include "hvd/report.hpp"
#include "hvd/sentiment.hpp"
#include "hvd/stemmer.hpp"
#include "hvd/textprep.hpp"
#include "hvd/values.hpp"

namespace {

const std::string kAssets = HVD_DEFAULT_ASSET_DIR;
const std::string kData = HVD_TEST_DATA_DIR;
const std::string kFixtures = HVD_FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

const hvd::Assets& assets() {
  static const hvd::Assets a = [] {
    hvd::AssetPaths p;
    p.dir = kAssets;
    return hvd::load_assets(p);
  }();
  return a;
}

std::string num(double x, int decimals) { return hvd::report::fixed(x, decimals); }

Outcome evaluation_identity() {
  Outcome o;
  // TP 5727, FP 2573, FN 1173, TN 3000: P = 0.69, R = 0.83
  std::vector<std::string> ids;
  std::vector<hvd::detector::ViolationRecord> records;
  std::vector<hvd::analytics::TruthLabel> truth;
  const auto add = [&](const std::string& prefix, int n, bool predicted, bool actual) {
    for (int i = 0; i < n; ++i) {
      const std::string id = prefix + std::to_string(i);
      ids.push_back(id);
      if (predicted) {
        hvd::detector::ViolationRecord r;
        r.review_id = id;
        r.items.push_back({"Helpful", "Benevolence", 0.1});
        records.push_back(r);
      }
      truth.push_back({id, actual ? std::vector<std::string>{"Helpful"} : std::vector<std::string>{}, {}});
    }
  };
  add("tp", 5727, true, true);
  add("fp", 2573, true, false);
  add("fn", 1173, false, true);
  add("tn", 3000, false, false);
  const auto m = hvd::analytics::evaluate(records, truth, ids).reviews;
  o.check(std::abs(m.precision - 0.69) < 1e-12, "precision " + num(m.precision, 6));
  o.check(std::abs(m.recall - 0.83) < 1e-12, "recall " + num(m.recall, 6));
  o.check(std::abs(m.f_measure - 0.75) <= 0.005, "f " + num(m.f_measure, 6));
  o.check(m.tp + m.fp + m.fn + m.tn == ids.size(), "counts do not sum to corpus size");
  o.detail = o.pass ? "P=0.69 R=0.83 F=" + num(m.f_measure, 4) : o.detail;
  return o;
}

Outcome dictionary_gate() {
  Outcome o;
  const std::string path = kAssets + "/values_dictionary.json";
  const auto d = hvd::values::ValuesDictionary::load(path);
  o.check(d.size() == 50, "items " + std::to_string(d.size()));
  const std::array<std::size_t, 10> want{7, 3, 3, 5, 4, 6, 3, 5, 7, 7};
  o.check(d.items_per_category() == want, "per-category counts differ");
  const std::vector<std::pair<std::string, std::string>> excluded{
      {"Power", "Social power"},
      {"Benevolence", "Reciprocation of favours"},
      {"Tradition", "Honouring of parents and elders"},
      {"Tradition", "Accepting my portion in life"},
      {"Benevolence", "Mature love"},
      {"Benevolence", "Meaning in life"},
      {"Universalism", "Unity with nature"},
      {"Universalism", "Protecting the environment"}};
  const auto base = nlohmann::json::parse(hvd::text::read_file(path));
  std::size_t rejected = 0;
  for (const auto& [cat, item] : excluded) {
    auto j = base;
    j[cat][item] = {{"synonyms", {"placeholder"}}};
    try {
      hvd::values::ValuesDictionary::from_json(j);
    } catch (const hvd::ValidationError& e) {
      if (std::string(e.what()).find(item) != std::string::npos) ++rejected;
    }
  }
  o.check(rejected == excluded.size(), "rejected " + std::to_string(rejected) + "/8 excluded items");
  if (o.pass) o.detail = "50 items, counts 7,3,3,5,4,6,3,5,7,7, 8/8 excluded items rejected";
  return o;
}

Outcome aggregation_reproduction() {
  Outcome o;
  const auto s = hvd::analytics::aggregate_by_category(hvd::testing::synthetic_records(), 22119);
  for (std::size_t k = 0; k < 10; ++k) {
    const std::size_t c = hvd::values::category_index(hvd::testing::kAlphaCategories[k]);
    const std::string got = hvd::report::one_decimal(s.app_average[c]);
    const std::string want = hvd::report::one_decimal(hvd::testing::kAverageRow[k]);
    o.check(got == want, std::string(hvd::testing::kAlphaCategories[k]) + " average " + got + " != " + want);
  }
  o.check(hvd::report::one_decimal(s.app_average_total) == "487.6",
          "total average " + hvd::report::one_decimal(s.app_average_total));
  const std::vector<std::pair<const char*, double>> pct{
      {"Benevolence", 35.3}, {"Self-direction", 25.6}, {"Tradition", 0.92}, {"Conformity", 0.56}};
  std::string shown;
  for (const auto& [name, want] : pct) {
    const double got = s.percentages[hvd::values::category_index(name)];
    o.check(std::abs(got - want) <= 0.5, std::string(name) + " " + num(got, 2) + "%");
    shown += std::string(shown.empty() ? "" : ", ") + name + " " + num(got, 2) + "%";
  }
  if (o.pass) o.detail = "Average row reproduced (Benevolence 172.3, Total 487.6); " + shown;
  return o;
}

Outcome stemmer_oracle() {
  Outcome o;
  const std::string content = hvd::text::read_file(kData + "/snowball_english_sample.tsv");
  std::size_t n = 0;
  std::size_t agree = 0;
  std::string first_miss;
  for (auto line : hvd::text::lines(content)) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) continue;
    ++n;
    const std::string in(line.substr(0, tab));
    const std::string want(line.substr(tab + 1));
    if (hvd::textprep::stem(in) == want) {
      ++agree;
    } else if (first_miss.empty()) {
      first_miss = in;
    }
  }
  o.check(n >= 1000, "sample has only " + std::to_string(n) + " pairs");
  o.check(agree == n, "mismatch, first: " + first_miss);
  o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(agree) + "/" + std::to_string(n) + " agree";
  return o;
}

// Full-matrix Wagner-Fischer over bytes (inputs are ASCII).
std::size_t dp_distance(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    }
  }
  return d[a.size()][b.size()];
}

Outcome edit_distance() {
  Outcome o;
  std::mt19937 rng(10000);
  const std::string alphabet = "abcde";
  const auto draw = [&] {
    std::string s(rng() % 13, 'a');
    for (char& c : s) c = alphabet[rng() % alphabet.size()];
    return s;
  };
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string a = draw();
    const std::string b = draw();
    const std::string c = draw();
    const std::size_t ab = hvd::textprep::levenshtein(a, b);
    bool ok = ab == dp_distance(a, b);
    ok = ok && hvd::textprep::levenshtein(a, a) == 0;
    ok = ok && ab == hvd::textprep::levenshtein(b, a);
    ok = ok && (a == b) == (ab == 0);
    ok = ok && ab <= hvd::textprep::levenshtein(a, c) + hvd::textprep::levenshtein(c, b);
    bad += !ok;
  }
  o.check(bad == 0, std::to_string(bad) + " pairs failed");
  if (o.pass) o.detail = "10000 pairs (length <= 12): DP oracle and metric axioms hold";
  return o;
}

Outcome spell_vignettes() {
  Outcome o;
  const auto& freq = assets().frequency;
  const std::string pretty = hvd::textprep::correct_word("pritty", freq);
  const std::string share = hvd::textprep::correct_word("sharr", freq);
  o.check(pretty == "pretty", "pritty -> " + pretty);
  o.check(share == "share", "sharr -> " + share);

  std::vector<std::string> vocab;
  const std::string content = hvd::text::read_file(kAssets + "/word_frequency.tsv");
  for (auto line : hvd::text::lines(content)) vocab.emplace_back(line.substr(0, line.find('\t')));
  std::mt19937 rng(1000);
  std::size_t altered = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string& w = vocab[rng() % vocab.size()];
    const auto toks = hvd::textprep::correct_spelling(hvd::textprep::tokenize(w), freq);
    if (toks.size() != 1 || toks[0].surface != w || hvd::textprep::correct_word(w, freq) != w) ++altered;
  }
  o.check(altered == 0, std::to_string(altered) + "/1000 in-vocabulary words altered");
  if (o.pass) o.detail = "pritty->pretty, sharr->share, 0/1000 in-vocabulary words altered";
  return o;
}

Outcome sentiment_boundaries() {
  Outcome o;
  using hvd::sentiment::classify;
  using hvd::sentiment::Polarity;
  o.check(classify(0.05) == Polarity::kPositive, "classify(0.05)");
  o.check(classify(0.049) == Polarity::kNeutral, "classify(0.049)");
  o.check(classify(-0.05) == Polarity::kNegative, "classify(-0.05)");
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = -1.0 + 2.0 * i / 9999.0;
    const Polarity p = classify(x);
    const int memberships = (x >= 0.05) + (x <= -0.05) + (x > -0.05 && x < 0.05);
    const Polarity want = x >= 0.05 ? Polarity::kPositive : x <= -0.05 ? Polarity::kNegative : Polarity::kNeutral;
    bad += memberships != 1 || p != want;
  }
  o.check(bad == 0, std::to_string(bad) + " grid points misclassified");

  const std::string content = hvd::text::read_file(kData + "/sentiment_reference.tsv");
  std::size_t n = 0;
  std::size_t agree = 0;
  for (auto line : hvd::text::lines(content)) {
    const auto tab = line.find('\t');
    const double ref = std::stod(std::string(line.substr(0, tab)));
    ++n;
    agree += hvd::sentiment::score(line.substr(tab + 1), assets().sentiment).polarity == classify(ref);
  }
  const double rate = n ? static_cast<double>(agree) / n : 0.0;
  o.check(n == 200, "reference has " + std::to_string(n) + " sentences");
  o.check(rate >= 0.90, "agreement " + num(100 * rate, 1) + "%");
  if (o.pass) {
    o.detail = "boundaries ok, 10^4-point grid partitioned, agreement " + std::to_string(agree) + "/" +
               std::to_string(n) + " (" + num(100 * rate, 1) + "%)";
  }
  return o;
}

Outcome detection_oracle() {
  Outcome o;
  const auto corpus = hvd::corpus::load_reviews(kFixtures + "/detection_corpus.jsonl");
  const auto apps = hvd::corpus::load_app_metadata(kFixtures + "/apps.jsonl");
  const auto r1 = hvd::detector::run_pipeline(corpus, apps, assets(), {}, 1);

  const std::string golden = hvd::text::read_file(kData + "/detection_golden.jsonl");
  std::size_t n = 0;
  std::size_t mismatches = 0;
  for (auto line : hvd::text::lines(golden)) {
    const auto g = nlohmann::json::parse(line);
    if (n >= r1.ledger.size()) {
      ++mismatches;
      break;
    }
    const auto& e = r1.ledger[n++];
    std::set<std::tuple<std::string, std::string, std::size_t>> want;
    for (const auto& i : g["items"]) {
      want.insert({i["item"].get<std::string>(), i["category"].get<std::string>(), i["tv"].get<std::size_t>()});
    }
    std::set<std::tuple<std::string, std::string, std::size_t>> got;
    if (e.outcome == hvd::detector::Outcome::kViolation) {
      for (const auto& m : e.matches) {
        if (m.probability >= 0.05) got.insert({m.item, m.category, m.tv});
      }
    }
    const bool same = e.review_id == g["review_id"].get<std::string>() &&
                      hvd::detector::to_string(e.outcome) == g["outcome"].get<std::string>() &&
                      e.tr == g["tr"].get<std::size_t>() && got == want;
    if (!same) {
      ++mismatches;
      o.check(false, "differs at " + e.review_id);
    }
  }
  o.check(n == corpus.size() && n == 50, "golden covers " + std::to_string(n) + " reviews");

  const std::string ref = hvd::detector::to_jsonl(r1.records) + hvd::detector::to_jsonl(r1.ledger);
  for (std::size_t w : {2u, 8u}) {
    const auto rw = hvd::detector::run_pipeline(corpus, apps, assets(), {}, w);
    o.check(hvd::detector::to_jsonl(rw.records) + hvd::detector::to_jsonl(rw.ledger) == ref,
            "output differs with " + std::to_string(w) + " workers");
  }
  if (o.pass) {
    o.detail = "50/50 reviews match the independent oracle (" + std::to_string(r1.records.size()) +
               " violations); byte-identical with 1, 2, 8 workers";
  }
  return o;
}

// Every window start, every feature stem, linear search.
bool brute_window(const std::vector<std::string>& need, const std::vector<std::string>& review) {
  if (need.empty() || review.empty()) return false;
  for (std::size_t s = 0; s < review.size(); ++s) {
    if (s > 0 && s + 5 > review.size()) break;
    bool all = true;
    for (const auto& x : need) {
      bool found = false;
      for (std::size_t k = s; k < std::min(review.size(), s + 5); ++k) found = found || review[k] == x;
      all = all && found;
    }
    if (all) return true;
  }
  return false;
}

Outcome feature_vignettes() {
  Outcome o;
  const auto fx = assets().feature_extractor();
  std::set<std::string> found;
  for (const auto& a : hvd::corpus::load_app_metadata(kFixtures + "/apps.jsonl")) {
    for (const auto& f : fx.extract(a.description, a.app_id)) found.insert(f.phrase());
  }
  for (const char* want : {"save recipes", "add workouts", "set reminders"}) {
    o.check(found.count(want) == 1, std::string("missing '") + want + "'");
  }
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g"};
  std::mt19937 rng(10000);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    hvd::features::AppFeature f;
    f.stems.resize(1 + rng() % 3);
    for (auto& s : f.stems) s = vocab[rng() % vocab.size()];
    f.tokens = f.stems;
    f.tags.assign(f.stems.size(), hvd::features::PosTag::kNoun);
    std::vector<std::string> review(rng() % 15);
    for (auto& s : review) s = vocab[rng() % vocab.size()];
    bad += hvd::features::feature_in_review(f, review) != brute_window(f.stems, review);
  }
  o.check(bad == 0, std::to_string(bad) + "/10000 window cases disagree");
  if (o.pass) o.detail = "save recipes, add workouts, set reminders extracted; 10000/10000 window cases agree";
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;  // 0: no stated budget
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"evaluation-identity", 1, evaluation_identity},
      {"dictionary-gate", 1, dictionary_gate},
      {"aggregation-reproduction", 1, aggregation_reproduction},
      {"stemmer-oracle", 5, stemmer_oracle},
      {"edit-distance-properties", 10, edit_distance},
      {"spell-correction-vignettes", 0, spell_vignettes},
      {"sentiment-boundaries", 30, sentiment_boundaries},
      {"detection-rule-oracle", 30, detection_oracle},
      {"feature-extraction-vignettes", 0, feature_vignettes},
  };
  // shared assets are loaded once, outside the timed sections
  assets();

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && s > c.budget_s) o.check(false, "took " + num(s, 2) + " s, budget " + num(c.budget_s, 0) + " s");
    failed += !o.pass;
    std::printf("%s %-30s %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), s);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
