#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hvd/textprep.hpp"

namespace tp = hvd::textprep;

namespace {

const std::string kAssets = HVD_DEFAULT_ASSET_DIR;

const tp::FrequencyList& freq() {
  static const tp::FrequencyList f = tp::FrequencyList::load(kAssets + "/word_frequency.tsv");
  return f;
}

const tp::Stoplist& stoplist() {
  static const tp::Stoplist s = tp::load_stoplist(kAssets + "/stopwords.txt");
  return s;
}

std::vector<tp::Token> words(const std::vector<std::string>& ws) {
  std::vector<tp::Token> out;
  for (const auto& w : ws) {
    tp::Token t;
    t.surface = w;
    t.original = w;
    t.position = out.size();
    out.push_back(t);
  }
  return out;
}

std::vector<std::string> surfaces(const std::vector<tp::Token>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.surface);
  return out;
}

// Full (n+1)x(m+1) edit matrix.
std::size_t dp_oracle(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
    }
  }
  return d[a.size()][b.size()];
}

}  // namespace

TEST(Tokenize, Examples) {
  const auto t = tp::tokenize("Great app!");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].surface, "great");
  EXPECT_TRUE(t[0].is_word());
  EXPECT_EQ(t[1].surface, "app");
  EXPECT_EQ(t[2].surface, "!");
  EXPECT_EQ(t[2].kind, tp::TokenKind::kPunctuation);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t[i].position, i);

  EXPECT_TRUE(tp::tokenize("").empty());

  const auto tap = tp::tokenize("Tap & pay");
  ASSERT_EQ(tap.size(), 3u);
  EXPECT_EQ(tap[0].surface, "tap");
  EXPECT_EQ(tap[1].surface, "&");
  EXPECT_FALSE(tap[1].is_word());
  EXPECT_EQ(tap[2].surface, "pay");
}

TEST(Tokenize, ApostrophesStayInsideWords) {
  const auto t = tp::tokenize("I DON'T like it’s 'quoted'");
  EXPECT_EQ(surfaces(t), (std::vector<std::string>{"i", "don't", "like", "it's", "'", "quoted", "'"}));
  EXPECT_EQ(t[1].original, "DON'T");
}

TEST(Tokenize, PunctuationTokensHaveNoLettersOrDigits) {
  const auto t = tp::tokenize("wow!!! 5 stars... (really) 😀 ok");
  for (const auto& tok : t) {
    EXPECT_FALSE(tok.surface.empty());
    if (tok.is_word()) {
      EXPECT_EQ(tok.surface, hvd::text::to_lower(tok.surface));
    } else {
      for (char32_t c : hvd::text::decode_utf8(tok.surface)) EXPECT_FALSE(hvd::text::is_alnum(c));
    }
  }
  EXPECT_EQ(tp::word_count("wow!!! 5 stars... (really) 😀 ok"), 5u);
}

TEST(Levenshtein, Examples) {
  EXPECT_EQ(tp::levenshtein("pritty", "pretty"), 1u);
  EXPECT_EQ(tp::levenshtein("", "abc"), 3u);
  EXPECT_EQ(tp::levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(dp_oracle("kitten", "sitting"), 3u);
  EXPECT_EQ(tp::levenshtein("naïve", "naive"), 1u);
}

TEST(Levenshtein, MetricAxiomsAgainstOracle) {
  std::mt19937 rng(20240607);
  std::uniform_int_distribution<int> len(0, 9);
  std::uniform_int_distribution<int> ch(0, 3);
  const auto draw = [&] {
    std::string s(static_cast<std::size_t>(len(rng)), 'a');
    for (char& c : s) c = static_cast<char>('a' + ch(rng));
    return s;
  };
  for (int i = 0; i < 2000; ++i) {
    const std::string a = draw(), b = draw(), c = draw();
    const std::size_t ab = tp::levenshtein(a, b);
    ASSERT_EQ(ab, dp_oracle(a, b)) << a << " / " << b;
    ASSERT_EQ(ab, tp::levenshtein(b, a));
    ASSERT_EQ(ab == 0, a == b);
    ASSERT_EQ(tp::levenshtein(a, a), 0u);
    ASSERT_LE(tp::levenshtein(a, c), ab + tp::levenshtein(b, c));
  }
}

TEST(FrequencyList, Invariants) {
  EXPECT_GT(freq().size(), 10000u);
  EXPECT_THROW(tp::FrequencyList({{"Word", 3}}), hvd::ValidationError);
  EXPECT_THROW(tp::FrequencyList({{"word", 0}}), hvd::ValidationError);
  EXPECT_THROW(tp::FrequencyList::load(kAssets + "/no_such_file.tsv"), hvd::IoError);
}

TEST(CorrectSpelling, Examples) {
  EXPECT_EQ(tp::correct_word("pritty", freq()), "pretty");
  EXPECT_EQ(tp::correct_word("sharr", freq()), "share");
  EXPECT_EQ(tp::correct_word("parking", freq()), "parking");
}

TEST(CorrectSpelling, RankingRules) {
  const tp::FrequencyList f({{"cat", 5}, {"cart", 50}, {"bat", 5}, {"coat", 500}});
  // distance 1 beats a more frequent distance-2 word
  EXPECT_EQ(tp::correct_word("caat", f), "coat");
  EXPECT_EQ(tp::correct_word("zat", f), "bat");  // tie on count, lexicographic
  EXPECT_EQ(tp::correct_word("cxxt", f), "coat");  // distance 2 only
  EXPECT_EQ(tp::correct_word("qqqqqq", f), "qqqqqq");
  EXPECT_EQ(tp::correct_word("c4t", f), "c4t");
}

TEST(CorrectSpelling, PreservesShapeAndPunctuation) {
  const auto in = tp::tokenize("Pritty GOOD app, awsome!");
  const auto out = tp::correct_spelling(in, freq());
  ASSERT_EQ(out.size(), in.size());
  EXPECT_EQ(out[0].original, "Pretty");
  EXPECT_EQ(out[3].surface, ",");
  EXPECT_EQ(out[4].surface, "awesome");
  EXPECT_EQ(tp::render(out), "Pretty GOOD app, awesome!");
}

TEST(CorrectSpelling, ReplacementsAreNearAndKnown) {
  std::mt19937 rng(7);
  std::vector<std::string> vocab;
  for (const auto& w : {"parking", "payment", "history", "reminder", "account", "money",
                        "support", "video", "recipe", "workout", "sticker", "group",
                        "review", "useless", "honest", "helpful", "curious", "pleasure"}) {
    vocab.emplace_back(w);
  }
  std::uniform_int_distribution<int> letter(0, 25);
  for (int i = 0; i < 300; ++i) {
    std::string w = vocab[static_cast<std::size_t>(i) % vocab.size()];
    const int edits = 1 + (i % 2);
    for (int e = 0; e < edits; ++e) {
      std::uniform_int_distribution<std::size_t> pos(0, w.size() - 1);
      w[pos(rng)] = static_cast<char>('a' + letter(rng));
    }
    const std::string fixed = tp::correct_word(w, freq());
    if (fixed == w) continue;
    EXPECT_TRUE(freq().contains(fixed)) << w << " -> " << fixed;
    EXPECT_LE(tp::levenshtein(w, fixed), 2u) << w << " -> " << fixed;
  }
}

TEST(Stopwords, Examples) {
  EXPECT_EQ(surfaces(tp::remove_stopwords(words({"this", "is", "a", "scam"}), stoplist())),
            std::vector<std::string>{"scam"});
  EXPECT_TRUE(tp::remove_stopwords({}, stoplist()).empty());
  EXPECT_EQ(surfaces(tp::remove_stopwords(words({"useless", "for", "me"}), stoplist())),
            std::vector<std::string>{"useless"});
  EXPECT_EQ(surfaces(tp::remove_stopwords(tp::tokenize("Scam, really!"), stoplist())),
            (std::vector<std::string>{"scam", "really"}));
}

TEST(Preprocess, Examples) {
  const auto a = tp::preprocess("pritty good", freq(), stoplist());
  EXPECT_EQ(a.corrected_text, "pretty good");
  EXPECT_EQ(a.content_stems, (std::vector<std::string>{"pretti", "good"}));

  const auto b = tp::preprocess("", freq(), stoplist());
  EXPECT_EQ(b.corrected_text, "");
  EXPECT_TRUE(b.content_stems.empty());

  const auto c = tp::preprocess("This is a scam!", freq(), stoplist());
  EXPECT_EQ(c.content_stems, std::vector<std::string>{"scam"});
  EXPECT_EQ(c.corrected_text, "This is a scam!");
}

TEST(Preprocess, NormalizesSpacingAndIsDeterministic) {
  const std::string text = "  The   app\tis\n\nuseless ,  I want   my money back!! ";
  const auto a = tp::preprocess(text, freq(), stoplist());
  EXPECT_EQ(a.corrected_text, "The app is useless , I want my money back!!");
  EXPECT_EQ(a, tp::preprocess(text, freq(), stoplist()));
  for (const auto& s : a.content_stems) EXPECT_EQ(stoplist().count(s), 0u);
}
