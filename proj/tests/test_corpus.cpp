#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace manipify;
using namespace manipify::testing;

TEST(LoadTweets, MapsFieldsOfOneLine) {
  const auto tweets = parse_tweets(
      R"({"id":"1","user_id":"u1","text":"go team #pakvsa","created_at":"2021-01-24T13:00:00Z","lang":"en","hashtags":["pakvsa"],"is_retweet":false})");
  ASSERT_EQ(tweets.size(), 1u);
  const Tweet& t = tweets[0];
  EXPECT_EQ(t.id, "1");
  EXPECT_EQ(t.user_id, "u1");
  EXPECT_EQ(t.text, "go team #pakvsa");
  EXPECT_EQ(t.created_at, at("2021-01-24T13:00:00Z"));
  EXPECT_EQ(t.lang, "en");
  EXPECT_EQ(t.hashtags, std::vector<std::string>{"pakvsa"});
  EXPECT_FALSE(t.is_retweet);
}

TEST(LoadTweets, MissingCreatedAtIsMalformedRecordOnLine1) {
  try {
    parse_tweets(R"({"id":"1","user_id":"u1","text":"x","lang":"en"})");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedRecord);
    EXPECT_EQ(e.number(), 1);
  }
}

TEST(LoadTweets, EmptyFileGivesEmptyList) {
  EXPECT_TRUE(parse_tweets("").empty());
  EXPECT_TRUE(parse_tweets("\n  \n").empty());
}

TEST(LoadTweets, ReportsLineNumberOfBadRecord) {
  const std::string good =
      R"({"id":"1","user_id":"u1","text":"x","created_at":"2021-01-24T13:00:00Z","lang":"en"})";
  try {
    parse_tweets(good + "\n{not json}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedRecord);
    EXPECT_EQ(e.number(), 2);
  }
}

TEST(LoadTweets, BadTimestampIsInvalidTimestamp) {
  try {
    parse_tweets(R"({"id":"1","user_id":"u1","text":"x","created_at":"yesterday","lang":"en"})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidTimestamp);
  }
}

TEST(LoadTweets, HashtagsFallBackToTextAndRetweetDefaultsFalse) {
  const auto tweets =
      parse_tweets(R"({"id":"1","user_id":"u1","text":"Go #PakvsSA #Cricket","created_at":"2021-01-24T13:00:00+05:00","lang":"en"})");
  ASSERT_EQ(tweets.size(), 1u);
  EXPECT_EQ(tweets[0].hashtags, (std::vector<std::string>{"pakvssa", "cricket"}));
  EXPECT_FALSE(tweets[0].is_retweet);
  EXPECT_EQ(tweets[0].created_at, at("2021-01-24T08:00:00Z"));
}

TEST(LoadTweets, DuplicateIdsRejected) {
  const std::string line = R"({"id":"1","user_id":"u1","text":"x","created_at":"2021-01-24T13:00:00Z","lang":"en"})";
  EXPECT_THROW(parse_tweets(line + "\n" + line), Error);
}

TEST(LoadUsers, NegativeCountRejected) {
  EXPECT_THROW(
      parse_users(
          R"({"id":"u","description":"","description_url":"","friends_count":-1,"followers_count":0,"geo_enabled":false,"listed_count":0,"statuses_count":0,"profile_url":"","verified":false})"),
      Error);
}

TEST(LoadTrends, FirstSeenAfterLastSeenRejected) {
  EXPECT_THROW(
      parse_trends(
          R"({"hashtag":"x","location":"Pakistan","first_seen":"2021-01-24T13:00:00Z","last_seen":"2021-01-24T12:00:00Z","first_trend_location":"Pakistan","n_other_countries":0,"trended_worldwide":false})"),
      Error);
}

TEST(LoadFiles, MissingFileIsIoError) {
  try {
    load_tweets("/nonexistent/tweets.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoError);
  }
}

TEST(OriginalOnly, DropsRetweets) {
  const Timestamp t = at("2021-01-24T00:00:00Z");
  const auto a = make_tweet("1", "u", "x", t), b = make_tweet("2", "u", "x", t, "en", {}, true),
             c = make_tweet("3", "u", "x", t);
  EXPECT_EQ(original_only({a, b, c}), (std::vector<Tweet>{a, c}));
  EXPECT_TRUE(original_only({b, b}).empty());
  EXPECT_EQ(original_only({a, c}), (std::vector<Tweet>{a, c}));
}

TEST(WindowFilter, KeepsTweetsWithinOneDayOfTheTrend) {
  const Timestamp d0 = at("2021-01-24T12:00:00Z");
  const auto trend = make_trend("h", d0, d0);
  const auto inside = make_tweet("1", "u", "x", at("2021-01-24T13:00:00Z"));
  const auto outside = make_tweet("2", "u", "x", at("2021-01-22T12:00:00Z"));
  const auto boundary = make_tweet("3", "u", "x", d0 - Seconds(86400));
  const auto past_end = make_tweet("4", "u", "x", d0 + Seconds(86401));
  EXPECT_EQ(window_filter({inside, outside, boundary, past_end}, trend), (std::vector<Tweet>{inside, boundary}));
}

TEST(LanguageProfile, Buckets) {
  const auto with_langs = [](std::vector<std::string> langs) {
    std::vector<Tweet> out;
    for (auto& l : langs) out.push_back(make_tweet("x", "u", "x", at("2021-01-24T00:00:00Z"), l));
    return out;
  };
  EXPECT_EQ(language_profile(with_langs({"en", "en"})), LanguageProfile::EnglishOnly);
  EXPECT_EQ(language_profile(with_langs({"en", "ur", "und"})), LanguageProfile::Bilingual);
  EXPECT_EQ(language_profile(with_langs({"fr", "und"})), LanguageProfile::Neither);
  EXPECT_EQ(language_profile(with_langs({"ur"})), LanguageProfile::UrduOnly);
}

TEST(HashtagCorpus, RejectsTweetsWithoutProfile) {
  const Timestamp t = at("2021-01-24T00:00:00Z");
  const auto trend = make_trend("h", t, t);
  try {
    build_hashtag_corpus(trend, {make_tweet("1", "ghost", "x", t, "en", {"h"})}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingProfile);
  }
}

TEST(HashtagCorpus, RejectsTweetsWithoutTheHashtag) {
  const Timestamp t = at("2021-01-24T00:00:00Z");
  EXPECT_THROW(HashtagCorpus::create("h", make_trend("h", t, t), {make_tweet("1", "u", "x", t, "en", {"other"})},
                                     index_users({make_user("u")})),
               Error);
}

TEST(HashtagCorpus, SelectsOriginalTweetsInWindowChronologically) {
  const Timestamp t = at("2021-01-24T12:00:00Z");
  const std::vector<Tweet> tweets = {make_tweet("2", "u", "x", t + Seconds(60), "en", {"h"}),
                                     make_tweet("1", "u", "x", t, "en", {"h"}),
                                     make_tweet("3", "v", "x", t, "en", {"h"}, true),
                                     make_tweet("4", "v", "x", t, "en", {"other"}),
                                     make_tweet("5", "w", "x", t - Seconds(3 * 86400), "en", {"h"})};
  const auto c = build_hashtag_corpus(make_trend("h", t, t), tweets, index_users({make_user("u"), make_user("v")}));
  ASSERT_EQ(c.tweets().size(), 2u);
  EXPECT_EQ(c.tweets()[0].id, "1");
  EXPECT_EQ(c.tweets()[1].id, "2");
  EXPECT_EQ(c.users().size(), 1u);
}

TEST(FindTrend, PrefersTheRequestedLocation) {
  const Timestamp t = at("2021-01-24T12:00:00Z");
  auto a = make_trend("h", t, t);
  a.location = "Japan";
  auto b = make_trend("h", t, t);
  b.location = "Pakistan";
  EXPECT_EQ(find_trend({a, b}, "h", "pakistan")->location, "Pakistan");
  EXPECT_EQ(find_trend({a, b}, "h")->location, "Japan");
  EXPECT_FALSE(find_trend({a, b}, "x").has_value());
}

TEST(Timestamps, ParseAndFormat) {
  EXPECT_EQ(format_rfc3339(at("2021-01-24T13:00:00+05:00")), "2021-01-24T08:00:00Z");
  EXPECT_FALSE(parse_rfc3339("2021-02-30T00:00:00Z").has_value());
  EXPECT_FALSE(parse_rfc3339("2021-01-24 13:00:00").has_value());
}
