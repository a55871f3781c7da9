#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "manipify/error.hpp"
#include "manipify/io.hpp"
#include "manipify/timeutil.hpp"
#include "manipify/unicode.hpp"

namespace manipify {

struct Tweet {
  std::string id;
  std::string user_id;
  std::string text;
  Timestamp created_at{};
  std::string lang;
  std::vector<std::string> hashtags;  // lowercase, no '#'
  bool is_retweet = false;

  bool has_hashtag(std::string_view tag) const {
    return std::find(hashtags.begin(), hashtags.end(), tag) != hashtags.end();
  }

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

struct UserProfile {
  std::string id;
  std::string description;
  std::string description_url;
  std::int64_t friends_count = 0;
  std::int64_t followers_count = 0;
  bool geo_enabled = false;
  std::int64_t listed_count = 0;
  std::int64_t statuses_count = 0;
  std::string profile_url;
  bool verified = false;

  bool description_url_present() const { return !description_url.empty(); }

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct TrendRecord {
  std::string hashtag;
  std::string location;
  Timestamp first_seen{};
  Timestamp last_seen{};
  std::string first_trend_location;
  std::int64_t n_other_countries = 0;
  bool trended_worldwide = false;

  friend bool operator==(const TrendRecord&, const TrendRecord&) = default;
};

using UserMap = std::map<std::string, UserProfile, std::less<>>;

/// Tweets of one trending hashtag with the profiles of everyone who posted them.
/// Only obtainable through `create`, which enforces referential integrity.
class HashtagCorpus {
 public:
  static HashtagCorpus create(std::string hashtag, TrendRecord trend, std::vector<Tweet> tweets,
                              UserMap users) {
    if (hashtag.empty()) throw Error(Errc::IntegrityViolation, "hashtag", std::nullopt, "empty hashtag");
    for (const auto& t : tweets) {
      if (!t.has_hashtag(hashtag))
        throw Error(Errc::IntegrityViolation, t.id, std::nullopt, "tweet does not carry #" + hashtag);
      if (!users.contains(t.user_id)) throw Error(Errc::MissingProfile, t.user_id);
    }
    return HashtagCorpus(std::move(hashtag), std::move(trend), std::move(tweets), std::move(users));
  }

  const std::string& hashtag() const { return hashtag_; }
  const TrendRecord& trend() const { return trend_; }
  const std::vector<Tweet>& tweets() const { return tweets_; }
  const UserMap& users() const { return users_; }

 private:
  HashtagCorpus(std::string hashtag, TrendRecord trend, std::vector<Tweet> tweets, UserMap users)
      : hashtag_(std::move(hashtag)), trend_(std::move(trend)), tweets_(std::move(tweets)), users_(std::move(users)) {}

  std::string hashtag_;
  TrendRecord trend_;
  std::vector<Tweet> tweets_;
  UserMap users_;
};

enum class LanguageProfile { EnglishOnly, UrduOnly, Bilingual, Neither };

constexpr std::string_view to_string(LanguageProfile p) {
  switch (p) {
    case LanguageProfile::EnglishOnly: return "EnglishOnly";
    case LanguageProfile::UrduOnly: return "UrduOnly";
    case LanguageProfile::Bilingual: return "Bilingual";
    case LanguageProfile::Neither: return "Neither";
  }
  return "Neither";
}

namespace detail {

using nlohmann::json;

inline const json& require(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(Errc::MalformedRecord, key, static_cast<std::int64_t>(line), "missing field");
  return *it;
}

inline std::string require_string(const json& obj, const char* key, std::size_t line) {
  const json& v = require(obj, key, line);
  if (!v.is_string()) throw Error(Errc::MalformedRecord, key, static_cast<std::int64_t>(line), "expected string");
  return v.get<std::string>();
}

inline bool require_bool(const json& obj, const char* key, std::size_t line) {
  const json& v = require(obj, key, line);
  if (!v.is_boolean()) throw Error(Errc::MalformedRecord, key, static_cast<std::int64_t>(line), "expected boolean");
  return v.get<bool>();
}

inline std::int64_t require_count(const json& obj, const char* key, std::size_t line) {
  const json& v = require(obj, key, line);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw Error(Errc::MalformedRecord, key, static_cast<std::int64_t>(line), "expected non-negative integer");
  return v.get<std::int64_t>();
}

inline Timestamp require_time(const json& obj, const char* key, std::size_t line) {
  const std::string raw = require_string(obj, key, line);
  auto t = parse_rfc3339(raw);
  if (!t) throw Error(Errc::InvalidTimestamp, raw, static_cast<std::int64_t>(line));
  return *t;
}

inline bool valid_hashtag(std::string_view tag) {
  if (tag.empty()) return false;
  for (char c : tag)
    if (c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
  return true;
}

/// Parses each non-blank line as a JSON object and hands it to `fn(obj, line_no)`.
template <class Fn>
void for_each_jsonl(std::string_view text, Fn&& fn) {
  const auto lines = io::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    json obj = json::parse(line.begin(), line.end(), nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      throw Error(Errc::MalformedRecord, "", static_cast<std::int64_t>(line_no), "invalid JSON object");
    fn(obj, line_no);
  }
}

}  // namespace detail

/// Parses tweets from JSONL text. Records lacking "hashtags" get them from the
/// text; "is_retweet" defaults to false.
inline std::vector<Tweet> parse_tweets(std::string_view text) {
  std::vector<Tweet> tweets;
  std::unordered_set<std::string> ids;
  detail::for_each_jsonl(text, [&](const nlohmann::json& obj, std::size_t line) {
    Tweet t;
    t.id = detail::require_string(obj, "id", line);
    if (t.id.empty()) throw Error(Errc::MalformedRecord, "id", static_cast<std::int64_t>(line), "empty id");
    t.user_id = detail::require_string(obj, "user_id", line);
    t.text = detail::require_string(obj, "text", line);
    t.created_at = detail::require_time(obj, "created_at", line);
    t.lang = detail::require_string(obj, "lang", line);
    if (auto it = obj.find("hashtags"); it != obj.end()) {
      if (!it->is_array())
        throw Error(Errc::MalformedRecord, "hashtags", static_cast<std::int64_t>(line), "expected array");
      for (const auto& h : *it) {
        if (!h.is_string())
          throw Error(Errc::MalformedRecord, "hashtags", static_cast<std::int64_t>(line), "expected strings");
        std::string tag = unicode::lowercase(h.get<std::string>());
        if (!detail::valid_hashtag(tag))
          throw Error(Errc::MalformedRecord, "hashtags", static_cast<std::int64_t>(line), "invalid hashtag");
        if (std::find(t.hashtags.begin(), t.hashtags.end(), tag) == t.hashtags.end())
          t.hashtags.push_back(std::move(tag));
      }
    } else {
      t.hashtags = unicode::extract_hashtags(t.text);
    }
    if (auto it = obj.find("is_retweet"); it != obj.end()) {
      if (!it->is_boolean())
        throw Error(Errc::MalformedRecord, "is_retweet", static_cast<std::int64_t>(line), "expected boolean");
      t.is_retweet = it->get<bool>();
    }
    if (!ids.insert(t.id).second)
      throw Error(Errc::MalformedRecord, t.id, static_cast<std::int64_t>(line), "duplicate tweet id");
    tweets.push_back(std::move(t));
  });
  return tweets;
}

inline std::vector<Tweet> load_tweets(const std::filesystem::path& path) {
  return parse_tweets(io::read_file(path));
}

inline std::vector<UserProfile> parse_users(std::string_view text) {
  std::vector<UserProfile> users;
  std::unordered_set<std::string> ids;
  detail::for_each_jsonl(text, [&](const nlohmann::json& obj, std::size_t line) {
    UserProfile u;
    u.id = detail::require_string(obj, "id", line);
    if (u.id.empty()) throw Error(Errc::MalformedRecord, "id", static_cast<std::int64_t>(line), "empty id");
    u.description = detail::require_string(obj, "description", line);
    u.description_url = detail::require_string(obj, "description_url", line);
    u.friends_count = detail::require_count(obj, "friends_count", line);
    u.followers_count = detail::require_count(obj, "followers_count", line);
    u.geo_enabled = detail::require_bool(obj, "geo_enabled", line);
    u.listed_count = detail::require_count(obj, "listed_count", line);
    u.statuses_count = detail::require_count(obj, "statuses_count", line);
    u.profile_url = detail::require_string(obj, "profile_url", line);
    u.verified = detail::require_bool(obj, "verified", line);
    if (!ids.insert(u.id).second)
      throw Error(Errc::MalformedRecord, u.id, static_cast<std::int64_t>(line), "duplicate user id");
    users.push_back(std::move(u));
  });
  return users;
}

inline std::vector<UserProfile> load_users(const std::filesystem::path& path) {
  return parse_users(io::read_file(path));
}

inline std::vector<TrendRecord> parse_trends(std::string_view text) {
  std::vector<TrendRecord> trends;
  detail::for_each_jsonl(text, [&](const nlohmann::json& obj, std::size_t line) {
    TrendRecord r;
    r.hashtag = unicode::lowercase(detail::require_string(obj, "hashtag", line));
    if (!r.hashtag.empty() && r.hashtag.front() == '#') r.hashtag.erase(0, 1);
    if (!detail::valid_hashtag(r.hashtag))
      throw Error(Errc::MalformedRecord, "hashtag", static_cast<std::int64_t>(line), "invalid hashtag");
    r.location = detail::require_string(obj, "location", line);
    r.first_seen = detail::require_time(obj, "first_seen", line);
    r.last_seen = detail::require_time(obj, "last_seen", line);
    if (r.first_seen > r.last_seen)
      throw Error(Errc::MalformedRecord, "last_seen", static_cast<std::int64_t>(line), "first_seen after last_seen");
    r.first_trend_location = detail::require_string(obj, "first_trend_location", line);
    r.n_other_countries = detail::require_count(obj, "n_other_countries", line);
    r.trended_worldwide = detail::require_bool(obj, "trended_worldwide", line);
    trends.push_back(std::move(r));
  });
  return trends;
}

inline std::vector<TrendRecord> load_trends(const std::filesystem::path& path) {
  return parse_trends(io::read_file(path));
}

inline nlohmann::ordered_json to_json(const Tweet& t) {
  return {{"id", t.id},
          {"user_id", t.user_id},
          {"text", t.text},
          {"created_at", format_rfc3339(t.created_at)},
          {"lang", t.lang},
          {"hashtags", t.hashtags},
          {"is_retweet", t.is_retweet}};
}

inline nlohmann::ordered_json to_json(const UserProfile& u) {
  return {{"id", u.id},
          {"description", u.description},
          {"description_url", u.description_url},
          {"friends_count", u.friends_count},
          {"followers_count", u.followers_count},
          {"geo_enabled", u.geo_enabled},
          {"listed_count", u.listed_count},
          {"statuses_count", u.statuses_count},
          {"profile_url", u.profile_url},
          {"verified", u.verified}};
}

inline nlohmann::ordered_json to_json(const TrendRecord& r) {
  return {{"hashtag", r.hashtag},
          {"location", r.location},
          {"first_seen", format_rfc3339(r.first_seen)},
          {"last_seen", format_rfc3339(r.last_seen)},
          {"first_trend_location", r.first_trend_location},
          {"n_other_countries", r.n_other_countries},
          {"trended_worldwide", r.trended_worldwide}};
}

template <class Record>
std::string to_jsonl(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline std::vector<Tweet> original_only(const std::vector<Tweet>& tweets) {
  std::vector<Tweet> out;
  std::copy_if(tweets.begin(), tweets.end(), std::back_inserter(out), [](const Tweet& t) { return !t.is_retweet; });
  return out;
}

/// Keeps tweets inside [first_seen - 1 day, last_seen + 1 day], bounds inclusive.
inline std::vector<Tweet> window_filter(const std::vector<Tweet>& tweets, const TrendRecord& trend) {
  const Timestamp lo = trend.first_seen - kOneDay;
  const Timestamp hi = trend.last_seen + kOneDay;
  std::vector<Tweet> out;
  std::copy_if(tweets.begin(), tweets.end(), std::back_inserter(out),
               [&](const Tweet& t) { return t.created_at >= lo && t.created_at <= hi; });
  return out;
}

/// Only "en" and "ur" tags matter; every other tag is ignored.
inline LanguageProfile language_profile(const std::vector<Tweet>& tweets) {
  bool en = false, ur = false;
  for (const auto& t : tweets) {
    en = en || t.lang == "en";
    ur = ur || t.lang == "ur";
  }
  if (en && ur) return LanguageProfile::Bilingual;
  if (en) return LanguageProfile::EnglishOnly;
  if (ur) return LanguageProfile::UrduOnly;
  return LanguageProfile::Neither;
}

inline std::vector<Tweet> with_hashtag(const std::vector<Tweet>& tweets, std::string_view hashtag) {
  std::vector<Tweet> out;
  std::copy_if(tweets.begin(), tweets.end(), std::back_inserter(out),
               [&](const Tweet& t) { return t.has_hashtag(hashtag); });
  return out;
}

/// Orders by (created_at, id).
inline void sort_chronologically(std::vector<Tweet>& tweets) {
  std::sort(tweets.begin(), tweets.end(), [](const Tweet& a, const Tweet& b) {
    return a.created_at != b.created_at ? a.created_at < b.created_at : a.id < b.id;
  });
}

inline UserMap index_users(const std::vector<UserProfile>& users) {
  UserMap map;
  for (const auto& u : users) map.emplace(u.id, u);
  return map;
}

/// The trend record for `hashtag`, preferring one observed at `location`
/// (case-insensitive) over the first one listed.
inline std::optional<TrendRecord> find_trend(const std::vector<TrendRecord>& trends, std::string_view hashtag,
                                             std::string_view location = {}) {
  std::optional<TrendRecord> first;
  const std::string wanted = unicode::lowercase(location);
  for (const auto& r : trends) {
    if (r.hashtag != hashtag) continue;
    if (!wanted.empty() && unicode::lowercase(r.location) == wanted) return r;
    if (!first) first = r;
  }
  return first;
}

/// Applies the corpus-selection rules for one trend: original tweets carrying the
/// hashtag, inside the trend window, chronologically ordered, with their profiles.
inline HashtagCorpus build_hashtag_corpus(const TrendRecord& trend, const std::vector<Tweet>& tweets,
                                          const UserMap& users) {
  std::vector<Tweet> selected = window_filter(original_only(with_hashtag(tweets, trend.hashtag)), trend);
  sort_chronologically(selected);
  UserMap involved;
  for (const auto& t : selected) {
    auto it = users.find(t.user_id);
    if (it == users.end()) throw Error(Errc::MissingProfile, t.user_id);
    involved.emplace(it->first, it->second);
  }
  return HashtagCorpus::create(trend.hashtag, trend, std::move(selected), std::move(involved));
}

}  // namespace manipify
