#pragma once

// Locating and loading the bundled data assets. The asset directory is taken
// from HVD_ASSETS when set, else the build-time default; each file can also
// be overridden individually.

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hvd/features.hpp"
#include "hvd/sentiment.hpp"
#include "hvd/textprep.hpp"
#include "hvd/values.hpp"

namespace hvd {

inline std::filesystem::path default_asset_dir() {
  if (const char* env = std::getenv("HVD_ASSETS"); env && *env) return env;
#ifdef HVD_DEFAULT_ASSET_DIR
  return HVD_DEFAULT_ASSET_DIR;
#else
  return "data";
#endif
}

struct AssetPaths {
  std::filesystem::path dir = default_asset_dir();
  std::optional<std::filesystem::path> dictionary;
  std::optional<std::filesystem::path> frequency;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> sentiment_lexicon;
  std::optional<std::filesystem::path> boosters;
  std::optional<std::filesystem::path> negations;
  std::optional<std::filesystem::path> pos_lexicon;
  std::optional<std::filesystem::path> patterns;
  std::optional<std::filesystem::path> allowlist;  // no default

  std::filesystem::path resolve(const std::optional<std::filesystem::path>& p, const char* file) const {
    return p ? *p : dir / file;
  }
};

/// Everything the detector needs, immutable once loaded.
struct Assets {
  textprep::FrequencyList frequency;
  textprep::Stoplist stoplist;
  sentiment::SentimentLexicon sentiment;
  values::ValuesDictionary dictionary;
  features::PosLexicon pos;
  std::vector<features::Pattern> patterns;
  std::optional<std::vector<std::string>> allowlist;

  features::FeatureExtractor feature_extractor() const {
    features::FeatureExtractor fx(pos, patterns, stoplist);
    if (allowlist) fx.set_allowlist(*allowlist);
    return fx;
  }
};

inline Assets load_assets(const AssetPaths& p = {}) {
  Assets a;
  a.frequency = textprep::FrequencyList::load(p.resolve(p.frequency, "word_frequency.tsv"));
  a.stoplist = textprep::load_stoplist(p.resolve(p.stopwords, "stopwords.txt"));
  a.sentiment = sentiment::SentimentLexicon::load(p.resolve(p.sentiment_lexicon, "sentiment_lexicon.tsv"),
                                                  p.resolve(p.boosters, "boosters.tsv"),
                                                  p.resolve(p.negations, "negations.txt"));
  a.dictionary = values::ValuesDictionary::load(p.resolve(p.dictionary, "values_dictionary.json"));
  a.pos = features::PosLexicon::load(p.resolve(p.pos_lexicon, "pos_lexicon.tsv"));
  a.patterns = features::load_patterns(p.resolve(p.patterns, "feature_patterns.txt"));
  if (p.allowlist) {
    std::vector<std::string> phrases;
    const std::string content = text::read_file(*p.allowlist);
    for (auto line : text::lines(content)) {
      const auto s = text::trim(line);
      if (!s.empty() && s.front() != '#') phrases.emplace_back(s);
    }
    a.allowlist = std::move(phrases);
  }
  return a;
}

}  // namespace hvd
