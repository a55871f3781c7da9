#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/properties.hpp"

using namespace manipify;
using namespace manipify::testing;

namespace {

std::vector<std::vector<std::string>> toks(std::vector<std::string> docs) {
  std::vector<std::vector<std::string>> out;
  for (const auto& d : docs) out.push_back(tokenize(d));
  return out;
}

}  // namespace

TEST(SimScore, IdenticalTweets) {
  EXPECT_DOUBLE_EQ(sim_score(toks({"a b c", "a b c"})), 7.0);
  EXPECT_EQ(brute_sim_score(toks({"a b c", "a b c"})), (std::pair<std::int64_t, std::int64_t>{14, 2}));
}

TEST(SimScore, NoSharedNgram) { EXPECT_DOUBLE_EQ(sim_score(toks({"a b", "c d"})), 0.0); }

TEST(SimScore, SingleTweet) { EXPECT_DOUBLE_EQ(sim_score(toks({"a b c"})), 0.0); }

TEST(SimScore, RepeatsInsideATweetCount) {
  // "a b" occurs twice in the first tweet and once in the second: 3 occurrences of length 2.
  EXPECT_DOUBLE_EQ(sim_score(toks({"a b a b", "a b"})), 3.0);
}

TEST(SimScore, EmptyInputRejected) { EXPECT_THROW(sim_score({}), Error); }

TEST(ManipFeatures, MixedBeforeAndAfter) {
  const Timestamp trend = at("2021-01-24T06:00:00Z");
  const std::vector<Tweet> tweets = {make_tweet("1", "u", "one", at("2021-01-24T05:00:00Z")),
                                     make_tweet("2", "u", "two", at("2021-01-24T05:30:00Z")),
                                     make_tweet("3", "u", "three", at("2021-01-24T05:45:00Z")),
                                     make_tweet("4", "u", "four", at("2021-01-24T07:00:00Z"))};
  const auto f = manip_features(tweets, trend);
  EXPECT_EQ(f.tweets_total, 4);
  EXPECT_EQ(f.tweets_before, 3);
  EXPECT_DOUBLE_EQ(f.time_before_s, 1350.0);
  EXPECT_DOUBLE_EQ(f.time_after_s, 0.0);
  EXPECT_DOUBLE_EQ(f.sim_score, 0.0);
}

TEST(ManipFeatures, SingleTweetAfterTrend) {
  const auto f = manip_features({make_tweet("1", "u", "hello world", at("2021-01-24T07:00:00Z"))},
                                at("2021-01-24T06:00:00Z"));
  EXPECT_EQ(f.values(), (std::vector<double>{1, 0, 0, 0, 0}));
}

TEST(ManipFeatures, TweetAtTrendTimeCountsAsAfter) {
  const auto f = manip_features({make_tweet("1", "u", "x", at("2021-01-24T06:00:00Z"))}, at("2021-01-24T06:00:00Z"));
  EXPECT_EQ(f.tweets_before, 0);
}

TEST(ManipFeatures, TwoIdenticalTweetsBeforeTrend) {
  const std::string text = "Stop the rally now #Tag";
  const auto f = manip_features({make_tweet("1", "u", text, at("2021-01-24T05:00:00Z")),
                                 make_tweet("2", "u", text, at("2021-01-24T05:01:00Z"))},
                                at("2021-01-24T06:00:00Z"));
  EXPECT_EQ(f.tweets_before, 2);
  EXPECT_DOUBLE_EQ(f.time_before_s, 60.0);
  const auto [num, den] = brute_sim_score(toks({"stop the rally now", "stop the rally now"}));
  EXPECT_EQ(f.sim_score, static_cast<double>(num) / static_cast<double>(den));
  EXPECT_DOUBLE_EQ(f.sim_score, 16.0);
}

TEST(BotFeatures, ThresholdsAndCounts) {
  UserProfile u;
  u.id = "u";
  u.friends_count = 1500;
  u.followers_count = 10;
  u.statuses_count = 200;
  const auto f = bot_features(u);
  EXPECT_EQ(f.values(), (std::vector<double>{0, 0, 1, 1, 0, 0, 1, 0, 0, 10, 1500}));
}

TEST(BotFeatures, FriendsExactly1000IsNotAbove) {
  UserProfile u;
  u.friends_count = 1000;
  EXPECT_FALSE(bot_features(u).friends_gt_1000);
}

TEST(BotFeatures, VerifiedCelebrity) {
  UserProfile u;
  u.verified = true;
  u.followers_count = 1'000'000;
  const auto f = bot_features(u);
  EXPECT_TRUE(f.verified);
  EXPECT_FALSE(f.followers_lt_30);
}

TEST(FeatureRows, ManipRowsPerUserInIdOrder) {
  const Timestamp t = at("2021-01-24T06:00:00Z");
  const auto trend = make_trend("h", t, t);
  const std::vector<Tweet> tweets = {make_tweet("1", "v", "x", t - Seconds(60), "en", {"h"}),
                                     make_tweet("2", "u", "y", t + Seconds(60), "en", {"h"}),
                                     make_tweet("3", "v", "z", t + Seconds(120), "en", {"h"})};
  const auto corpus = build_hashtag_corpus(trend, tweets, index_users({make_user("u"), make_user("v")}));
  const auto rows = manip_rows(corpus);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].user_id, "u");
  EXPECT_EQ(rows[1].user_id, "v");
  EXPECT_EQ(rows[1].features.tweets_total, 2);
  EXPECT_EQ(rows[1].features.tweets_before, 1);
  const auto csv = manip_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "user_id,hashtag,tweets_total,tweets_before,time_after_s,time_before_s,sim_score");
}
