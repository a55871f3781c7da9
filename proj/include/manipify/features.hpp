#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "manipify/corpus.hpp"
#include "manipify/error.hpp"
#include "manipify/io.hpp"
#include "manipify/textproc.hpp"
#include "manipify/timeutil.hpp"

namespace manipify {

struct ManipFeatureVector {
  std::int64_t tweets_total = 0;
  std::int64_t tweets_before = 0;
  double time_after_s = 0.0;
  double time_before_s = 0.0;
  double sim_score = 0.0;

  static constexpr std::array<std::string_view, 5> kColumns = {"tweets_total", "tweets_before", "time_after_s",
                                                               "time_before_s", "sim_score"};

  std::vector<double> values() const {
    return {static_cast<double>(tweets_total), static_cast<double>(tweets_before), time_after_s, time_before_s,
            sim_score};
  }

  friend bool operator==(const ManipFeatureVector&, const ManipFeatureVector&) = default;
};

struct BotFeatureVector {
  bool has_description = false;
  bool url_in_description = false;
  bool friends_gt_1000 = false;
  bool followers_lt_30 = false;
  bool geo_enabled = false;
  bool listed_gt_0 = false;
  bool statuses_gt_0 = false;
  bool url_in_profile = false;
  bool verified = false;
  std::int64_t followers_count = 0;
  std::int64_t friends_count = 0;

  static constexpr std::array<std::string_view, 11> kColumns = {
      "has_description", "url_in_description", "friends_gt_1000", "followers_lt_30",
      "geo_enabled",     "listed_gt_0",        "statuses_gt_0",   "url_in_profile",
      "verified",        "followers_count",    "friends_count"};

  std::vector<double> values() const {
    auto b = [](bool v) { return v ? 1.0 : 0.0; };
    return {b(has_description), b(url_in_description), b(friends_gt_1000), b(followers_lt_30),
            b(geo_enabled),     b(listed_gt_0),        b(statuses_gt_0),   b(url_in_profile),
            b(verified),        static_cast<double>(followers_count), static_cast<double>(friends_count)};
  }

  friend bool operator==(const BotFeatureVector&, const BotFeatureVector&) = default;
};

/// Length-weighted frequency of the n-grams (length >= 2) that occur in at
/// least two distinct tweets of the user, divided by the number of tweets.
/// Every occurrence of a qualifying n-gram counts, including repeats inside a
/// single tweet.
inline double sim_score(const std::vector<std::vector<std::string>>& user_tweets) {
  if (user_tweets.empty()) throw Error(Errc::EmptyInput, "user_tweets");

  struct GramStat {
    std::int64_t freq = 0;
    std::size_t doc_count = 0;
    std::size_t last_doc = SIZE_MAX;
    std::int64_t length = 0;
  };
  std::unordered_map<std::string, GramStat> stats;
  for (std::size_t d = 0; d < user_tweets.size(); ++d) {
    const auto& tokens = user_tweets[d];
    for (std::size_t start = 0; start < tokens.size(); ++start) {
      std::string key = tokens[start];
      for (std::size_t end = start + 1; end < tokens.size(); ++end) {
        key += '\x1f';
        key += tokens[end];
        GramStat& s = stats[key];
        s.length = static_cast<std::int64_t>(end - start + 1);
        ++s.freq;
        if (s.last_doc != d) {
          s.last_doc = d;
          ++s.doc_count;
        }
      }
    }
  }

  std::int64_t weighted = 0;
  for (const auto& [_, s] : stats)
    if (s.doc_count >= 2) weighted += s.length * s.freq;
  return static_cast<double>(weighted) / static_cast<double>(user_tweets.size());
}

/// Token sequences used for the similarity score.
inline std::vector<std::vector<std::string>> tweet_tokens(const std::vector<Tweet>& tweets) {
  std::vector<std::vector<std::string>> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) out.push_back(tokenize(preprocess(t.text)));
  return out;
}

namespace detail {

inline double mean_gap_seconds(const std::vector<Timestamp>& times) {
  if (times.size() < 2) return 0.0;
  const auto span = (times.back() - times.front()).count();
  return static_cast<double>(span) / static_cast<double>(times.size() - 1);
}

}  // namespace detail

/// Features of one user's original tweets on one trend. Tweets must be sorted by
/// created_at. Tweets exactly at trend time count as after it.
inline ManipFeatureVector manip_features(const std::vector<Tweet>& user_tweets, Timestamp trend_first_seen) {
  if (user_tweets.empty()) throw Error(Errc::EmptyInput, "user_tweets");
  std::vector<Timestamp> before, after;
  for (const auto& t : user_tweets) (t.created_at < trend_first_seen ? before : after).push_back(t.created_at);

  ManipFeatureVector f;
  f.tweets_total = static_cast<std::int64_t>(user_tweets.size());
  f.tweets_before = static_cast<std::int64_t>(before.size());
  f.time_before_s = detail::mean_gap_seconds(before);
  f.time_after_s = detail::mean_gap_seconds(after);
  f.sim_score = sim_score(tweet_tokens(user_tweets));
  return f;
}

inline BotFeatureVector bot_features(const UserProfile& user) {
  BotFeatureVector f;
  f.has_description = !user.description.empty();
  f.url_in_description = user.description_url_present();
  f.friends_gt_1000 = user.friends_count > 1000;
  f.followers_lt_30 = user.followers_count < 30;
  f.geo_enabled = user.geo_enabled;
  f.listed_gt_0 = user.listed_count > 0;
  f.statuses_gt_0 = user.statuses_count > 0;
  f.url_in_profile = !user.profile_url.empty();
  f.verified = user.verified;
  f.followers_count = user.followers_count;
  f.friends_count = user.friends_count;
  return f;
}

struct ManipRow {
  std::string user_id;
  std::string hashtag;
  ManipFeatureVector features;
};

struct BotRow {
  std::string user_id;
  BotFeatureVector features;
};

/// One row per (user, hashtag) over the users of a hashtag corpus, ordered by user id.
inline std::vector<ManipRow> manip_rows(const HashtagCorpus& corpus) {
  std::map<std::string, std::vector<Tweet>, std::less<>> by_user;
  for (const auto& t : corpus.tweets()) by_user[t.user_id].push_back(t);
  std::vector<ManipRow> rows;
  rows.reserve(by_user.size());
  for (auto& [user, tweets] : by_user) {
    sort_chronologically(tweets);
    rows.push_back({user, corpus.hashtag(), manip_features(tweets, corpus.trend().first_seen)});
  }
  return rows;
}

inline std::string manip_csv(const std::vector<ManipRow>& rows) {
  std::vector<std::string> header = {"user_id", "hashtag"};
  for (auto c : ManipFeatureVector::kColumns) header.emplace_back(c);
  std::string out = io::csv_row(header);
  for (const auto& r : rows) {
    const auto& f = r.features;
    out += io::csv_row({r.user_id, r.hashtag, std::to_string(f.tweets_total), std::to_string(f.tweets_before),
                        io::format_double(f.time_after_s), io::format_double(f.time_before_s),
                        io::format_double(f.sim_score)});
  }
  return out;
}

inline std::string bot_csv(const std::vector<BotRow>& rows) {
  std::vector<std::string> header = {"user_id"};
  for (auto c : BotFeatureVector::kColumns) header.emplace_back(c);
  std::string out = io::csv_row(header);
  for (const auto& r : rows) {
    std::vector<std::string> fields = {r.user_id};
    const auto values = r.features.values();
    for (double v : values) fields.push_back(io::format_double(v));
    out += io::csv_row(fields);
  }
  return out;
}

}  // namespace manipify
