#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <unistd.h>

#include "manipify/manipify.hpp"

namespace manipify::testing {

inline Timestamp at(std::string_view rfc3339) {
  auto t = parse_rfc3339(rfc3339);
  if (!t) throw Error(Errc::InvalidTimestamp, std::string(rfc3339));
  return *t;
}

inline Tweet make_tweet(std::string id, std::string user, std::string text, Timestamp time, std::string lang = "en",
                        std::vector<std::string> hashtags = {}, bool retweet = false) {
  return {std::move(id), std::move(user), std::move(text), time, std::move(lang), std::move(hashtags), retweet};
}

inline UserProfile make_user(std::string id, std::int64_t followers = 0) {
  UserProfile u;
  u.id = std::move(id);
  u.followers_count = followers;
  return u;
}

inline TrendRecord make_trend(std::string tag, Timestamp first, Timestamp last, std::string first_location = "Pakistan",
                              std::int64_t n_other = 0, bool worldwide = false) {
  return {std::move(tag), "Pakistan", first, last, std::move(first_location), n_other, worldwide};
}

/// A directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag = "manipify") {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            (std::string(tag) + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline double logit(double p) { return std::log(p / (1.0 - p)); }

/// A bundle whose category probabilities are the given constants for any input.
inline CategoryModelBundle constant_bundle(Language language, const CategoryProbabilities& probs) {
  auto vectorizer = TfidfVectorizer::fit({"x"}, 1, 3);
  std::array<ml::LogRegModel, 6> models;
  for (std::size_t c = 0; c < models.size(); ++c) {
    models[c] = ml::LogRegModel::zero({"x"});
    models[c].intercept = logit(probs[c]);
  }
  return CategoryModelBundle(language, std::move(vectorizer), std::move(models));
}

/// `n` tweets in `lang` carrying `hashtag`, one minute apart.
inline std::vector<Tweet> tweets_in(std::string_view lang, std::size_t n, std::string_view text = "word",
                                    std::string_view hashtag = "tag", std::size_t first_id = 0) {
  std::vector<Tweet> out;
  const Timestamp t0 = at("2021-01-24T00:00:00Z");
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(make_tweet("t" + std::to_string(first_id + i), "u" + std::to_string(i % 7), std::string(text),
                             t0 + Seconds(60 * static_cast<std::int64_t>(i)), std::string(lang),
                             {std::string(hashtag)}));
  return out;
}

/// Six labelled sample trends, three local and three global.
struct LocalityRow {
  std::string hashtag;
  std::string first_location;
  std::int64_t n_other;
  bool worldwide;
  bool local;
};

inline const std::vector<LocalityRow>& sample_locality_rows() {
  static const std::vector<LocalityRow> rows = {
      {"samsungpakistan", "Pakistan", 0, false, true}, {"fajr", "Pakistan", 1, false, true},
      {"motivationalquotes", "Pakistan", 2, false, true}, {"potus", "Australia", 12, false, false},
      {"ufc257", "Japan", 58, true, false},            {"t10league", "India", 2, false, false}};
  return rows;
}

inline TrendRecord trend_of(const LocalityRow& r) {
  const Timestamp t = at("2021-01-24T00:00:00Z");
  return make_trend(r.hashtag, t, t, r.first_location, r.n_other, r.worldwide);
}

inline ml::Dataset sample_locality_dataset() {
  std::vector<TrendRecord> trends;
  for (const auto& r : sample_locality_rows()) trends.push_back(trend_of(r));
  return locality_dataset(trends, kDefaultTargetCountry, [](const TrendRecord& t) -> std::optional<bool> {
    for (const auto& r : sample_locality_rows())
      if (r.hashtag == t.hashtag) return r.local;
    return std::nullopt;
  });
}

}  // namespace manipify::testing
