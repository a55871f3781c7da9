#include <gtest/gtest.h>

#include <cmath>

#include "support/fixtures.hpp"

using namespace manipify;

TEST(Preprocess, StripsHashtagsUrlsAndPunctuation) {
  EXPECT_EQ(preprocess("Go TEAM!! #PakvsSA http://t.co/x"), "go team");
  EXPECT_EQ(preprocess(""), "");
  EXPECT_EQ(preprocess("@user said: WWW.example.com rocks"), "said rocks");
}

TEST(Preprocess, UrduTextLosesOnlyTheUrl) {
  // The second word is written with a decomposed hamza; NFC composes it.
  const std::string decomposed = "پاکستان زندۂ";
  const std::string composed = "پاکستان زندۂ";
  EXPECT_EQ(preprocess(decomposed + " https://t.co/abc"), composed);
}

TEST(Tokenize, SplitsOnWhitespace) {
  EXPECT_EQ(tokenize("  a b\tc\n"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(tokenize("").empty());
}

TEST(Ngrams, Enumeration) {
  EXPECT_EQ(ngrams({"a", "b", "c"}, 1, 2), (std::vector<std::string>{"a", "b", "c", "a b", "b c"}));
  EXPECT_TRUE(ngrams({"a"}, 2, 3).empty());
  EXPECT_EQ(ngrams({"a", "b", "c"}, 3, 3), (std::vector<std::string>{"a b c"}));
  EXPECT_THROW(ngrams({"a"}, 0, 1), Error);
  EXPECT_THROW(ngrams({"a"}, 3, 2), Error);
}

TEST(Tfidf, SmoothedIdf) {
  const auto v = TfidfVectorizer::fit({"a b", "a c"}, 1, 2);
  EXPECT_DOUBLE_EQ(v.idf("a"), 1.0);
  EXPECT_NEAR(v.idf("b"), 1.405465, 1e-6);
  EXPECT_NEAR(v.idf("a b"), 1.405465, 1e-6);
  EXPECT_EQ(v.size(), 5u);
}

TEST(Tfidf, SingleDocument) {
  const auto v = TfidfVectorizer::fit({"a"}, 1, 3);
  EXPECT_EQ(v.size(), 1u);
  EXPECT_DOUBLE_EQ(v.idf("a"), 1.0);
}

TEST(Tfidf, DisjointVocabularies) {
  const auto v = TfidfVectorizer::fit({"a b", "c d"}, 1, 2);
  for (double idf : v.idf()) EXPECT_DOUBLE_EQ(idf, std::log(1.5) + 1.0);
}

TEST(Tfidf, TransformWeightsAndNormalizes) {
  const auto v = TfidfVectorizer::fit({"a b", "a c"}, 1, 2);
  const auto x = v.transform("a b");
  const double b = std::log(1.5) + 1.0;
  const double norm = std::sqrt(1.0 + 2 * b * b);
  ASSERT_EQ(x.entries.size(), 3u);
  EXPECT_NEAR(x.weight(*v.column("a")), 1.0 / norm, 1e-12);
  EXPECT_NEAR(x.weight(*v.column("b")), b / norm, 1e-12);
  EXPECT_NEAR(x.weight(*v.column("a b")), b / norm, 1e-12);
  EXPECT_NEAR(x.norm(), 1.0, 1e-12);
}

TEST(Tfidf, EmptyDocumentIsZeroVector) {
  const auto v = TfidfVectorizer::fit({"a b", "a c"}, 1, 2);
  EXPECT_TRUE(v.transform("").empty());
  EXPECT_TRUE(v.transform("zzz").empty());
}

TEST(Tfidf, RepeatedTrainingDocumentKeepsDirection) {
  const auto v = TfidfVectorizer::fit({"a b", "a c"}, 1, 2);
  const auto once = v.transform("a b"), twice = v.transform("a b a b");
  ASSERT_EQ(once.entries.size(), twice.entries.size());
  for (std::size_t i = 0; i < once.entries.size(); ++i) {
    EXPECT_EQ(once.entries[i].first, twice.entries[i].first);
    EXPECT_NEAR(once.entries[i].second, twice.entries[i].second, 1e-12);
  }
}

TEST(Tfidf, JsonRoundTrip) {
  const auto v = TfidfVectorizer::fit({"a b c", "b c d", "x"}, 1, 3);
  const auto w = TfidfVectorizer::from_json(nlohmann::json::parse(v.to_json().dump()));
  EXPECT_EQ(w.terms(), v.terms());
  EXPECT_EQ(w.idf(), v.idf());
  EXPECT_EQ(w.ngram_range(), v.ngram_range());
}

TEST(Tfidf, EmptyCorpusRejected) {
  EXPECT_THROW(TfidfVectorizer::fit({}, 1, 3), Error);
  EXPECT_THROW(TfidfVectorizer::fit({""}, 1, 3), Error);
}
