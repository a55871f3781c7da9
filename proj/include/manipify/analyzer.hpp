#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "manipify/corpus.hpp"
#include "manipify/error.hpp"
#include "manipify/hashcat.hpp"
#include "manipify/io.hpp"
#include "manipify/timeutil.hpp"

namespace manipify {

using ojson = nlohmann::ordered_json;

/// count / total as a percentage, kept exact until it is read.
struct Percentage {
  std::int64_t count = 0;
  std::int64_t total = 0;

  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(100 * count) / static_cast<double>(total);
  }

  friend bool operator==(const Percentage&, const Percentage&) = default;
};

struct ReachReport {
  std::string hashtag;
  std::int64_t n_unique_users = 0;
  std::int64_t total_followers = 0;
  std::int64_t reach = 0;

  ojson to_json() const {
    return {{"hashtag", hashtag},
            {"n_unique_users", n_unique_users},
            {"total_followers", total_followers},
            {"reach", reach}};
  }

  std::string to_csv() const {
    return io::csv_row({"hashtag", "n_unique_users", "total_followers", "reach"}) +
           io::csv_row({hashtag, std::to_string(n_unique_users), std::to_string(total_followers),
                        std::to_string(reach)});
  }
};

/// Unique tweeting users plus the sum of their followers, each user once.
inline ReachReport reach(std::string hashtag, const std::vector<Tweet>& tweets, const UserMap& users) {
  std::set<std::string_view> seen;
  ReachReport r{std::move(hashtag)};
  for (const auto& t : tweets) {
    if (!seen.insert(t.user_id).second) continue;
    auto it = users.find(t.user_id);
    if (it == users.end()) throw Error(Errc::MissingProfile, t.user_id);
    r.total_followers += it->second.followers_count;
  }
  r.n_unique_users = static_cast<std::int64_t>(seen.size());
  r.reach = r.n_unique_users + r.total_followers;
  return r;
}

inline ReachReport reach(const HashtagCorpus& corpus) { return reach(corpus.hashtag(), corpus.tweets(), corpus.users()); }

struct LanguageDistribution {
  std::int64_t english = 0;
  std::int64_t urdu = 0;
  std::int64_t unknown = 0;
  std::int64_t other = 0;

  std::int64_t total() const { return english + urdu + unknown + other; }

  std::array<std::pair<std::string_view, std::int64_t>, 4> entries() const {
    return {{{"english", english}, {"urdu", urdu}, {"unknown", unknown}, {"other", other}}};
  }

  ojson to_json() const {
    ojson counts = ojson::object(), percent = ojson::object();
    for (const auto& [name, n] : entries()) {
      counts[std::string(name)] = n;
      percent[std::string(name)] = Percentage{n, total()}.value();
    }
    return {{"total", total()}, {"counts", std::move(counts)}, {"percent", std::move(percent)}};
  }

  std::string to_csv() const {
    std::string out = io::csv_row({"language", "count", "percent"});
    for (const auto& [name, n] : entries())
      out += io::csv_row({std::string(name), std::to_string(n), io::format_double(Percentage{n, total()}.value())});
    return out;
  }

  friend bool operator==(const LanguageDistribution&, const LanguageDistribution&) = default;
};

inline LanguageDistribution language_distribution(const std::vector<Tweet>& tweets) {
  LanguageDistribution d;
  for (const auto& t : tweets) {
    if (t.lang == "en") ++d.english;
    else if (t.lang == "ur") ++d.urdu;
    else if (t.lang == "und") ++d.unknown;
    else ++d.other;
  }
  return d;
}

struct CategorizedHashtag {
  std::string hashtag;
  Category category = Category::Other;
  std::int64_t tweet_count = 0;
};

struct CategoryShare {
  Percentage hashtags;
  Percentage tweets;
};

struct CategoryDistribution {
  std::array<CategoryShare, 7> shares{};  // indexed by Category

  const CategoryShare& operator[](Category c) const { return shares[index_of(c)]; }

  ojson to_json() const {
    ojson out = ojson::array();
    for (Category c : kAllCategories) {
      const auto& s = (*this)[c];
      out.push_back({{"category", to_string(c)},
                     {"hashtags", s.hashtags.count},
                     {"hashtag_pct", s.hashtags.value()},
                     {"tweets", s.tweets.count},
                     {"tweet_pct", s.tweets.value()}});
    }
    return {{"categories", std::move(out)}};
  }

  std::string to_csv() const {
    std::string out = io::csv_row({"category", "hashtags", "hashtag_pct", "tweets", "tweet_pct"});
    for (Category c : kAllCategories) {
      const auto& s = (*this)[c];
      out += io::csv_row({std::string(to_string(c)), std::to_string(s.hashtags.count),
                          io::format_double(s.hashtags.value()), std::to_string(s.tweets.count),
                          io::format_double(s.tweets.value())});
    }
    return out;
  }
};

inline CategoryDistribution category_distribution(const std::vector<CategorizedHashtag>& predictions) {
  if (predictions.empty()) throw Error(Errc::EmptyInput, "predictions");
  std::int64_t total_tweets = 0;
  for (const auto& p : predictions) {
    if (p.tweet_count < 0) throw Error(Errc::InvalidArgument, p.hashtag, p.tweet_count, "negative tweet count");
    total_tweets += p.tweet_count;
  }
  CategoryDistribution d;
  for (auto& s : d.shares) {
    s.hashtags.total = static_cast<std::int64_t>(predictions.size());
    s.tweets.total = total_tweets;
  }
  for (const auto& p : predictions) {
    auto& s = d.shares[index_of(p.category)];
    ++s.hashtags.count;
    s.tweets.count += p.tweet_count;
  }
  return d;
}

template <class T>
struct TimeSeries {
  struct Bin {
    Timestamp start;
    std::vector<T> values;  // one per group, in `groups` order
  };

  Seconds bin_width{3600};
  Timestamp origin;
  std::vector<std::string> groups;
  std::vector<Bin> bins;

  T total() const {
    T sum{};
    for (const auto& b : bins)
      for (const auto& v : b.values) sum += v;
    return sum;
  }

  ojson to_json() const {
    ojson js_bins = ojson::array();
    for (const auto& b : bins) {
      ojson values = ojson::object();
      for (std::size_t g = 0; g < groups.size(); ++g) values[groups[g]] = b.values[g];
      js_bins.push_back({{"start", format_rfc3339(b.start)}, {"values", std::move(values)}});
    }
    return {{"bin_width_s", bin_width.count()},
            {"origin", format_rfc3339(origin)},
            {"groups", groups},
            {"bins", std::move(js_bins)}};
  }

  /// Wide form: bin_start followed by one column per group.
  std::string to_csv() const {
    std::vector<std::string> header = {"bin_start"};
    header.insert(header.end(), groups.begin(), groups.end());
    std::string out = io::csv_row(header);
    for (const auto& b : bins) {
      std::vector<std::string> row = {format_rfc3339(b.start)};
      for (const auto& v : b.values) row.push_back(format_value(v));
      out += io::csv_row(row);
    }
    return out;
  }

  /// Long form for plotting: one (bin_start, group, value) row per cell.
  std::string to_plot_csv() const {
    std::string out = io::csv_row({"bin_start", "group", "value"});
    for (const auto& b : bins)
      for (std::size_t g = 0; g < groups.size(); ++g)
        out += io::csv_row({format_rfc3339(b.start), groups[g], format_value(b.values[g])});
    return out;
  }

 private:
  static std::string format_value(const T& v) {
    if constexpr (std::is_integral_v<T>) return std::to_string(v);
    else return io::format_double(static_cast<double>(v));
  }
};

using GroupOf = std::function<std::string(const Tweet&)>;

namespace detail {

inline void check_binning(const std::vector<Tweet>& tweets, Seconds width) {
  if (width.count() <= 0) throw Error(Errc::InvalidArgument, "bin_width_s", width.count(), "must be positive");
  if (tweets.empty()) throw Error(Errc::EmptyInput, "tweets");
}

/// Bins are multiples of `width` counted from the Unix epoch, which sits on a
/// whole UTC hour.
template <class T>
TimeSeries<T> empty_series(const std::vector<Tweet>& tweets, Seconds width, std::vector<std::string> groups) {
  auto [lo, hi] = std::minmax_element(tweets.begin(), tweets.end(),
                                      [](const Tweet& a, const Tweet& b) { return a.created_at < b.created_at; });
  TimeSeries<T> ts;
  ts.bin_width = width;
  ts.origin = floor_to(lo->created_at, width);
  ts.groups = std::move(groups);
  const auto n_bins = static_cast<std::size_t>((floor_to(hi->created_at, width) - ts.origin) / width) + 1;
  ts.bins.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    ts.bins[i].start = ts.origin + width * static_cast<std::int64_t>(i);
    ts.bins[i].values.assign(ts.groups.size(), T{});
  }
  return ts;
}

inline std::vector<std::string> group_names(const std::vector<Tweet>& tweets, const GroupOf& group_of,
                                            std::vector<std::string>& per_tweet) {
  std::set<std::string> names;
  per_tweet.clear();
  per_tweet.reserve(tweets.size());
  for (const auto& t : tweets) names.insert(per_tweet.emplace_back(group_of(t)));
  return {names.begin(), names.end()};
}

inline std::size_t bin_index(const Timestamp& origin, Seconds width, Timestamp t) {
  return static_cast<std::size_t>((t - origin) / width);
}

}  // namespace detail

/// Tweet counts per bin and group. Groups are listed in sorted order; bins run
/// contiguously from the earliest to the latest tweet.
inline TimeSeries<std::int64_t> time_series(const std::vector<Tweet>& tweets, Seconds bin_width,
                                            const GroupOf& group_of) {
  detail::check_binning(tweets, bin_width);
  std::vector<std::string> per_tweet;
  auto groups = detail::group_names(tweets, group_of, per_tweet);
  auto ts = detail::empty_series<std::int64_t>(tweets, bin_width, groups);
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    const auto g = static_cast<std::size_t>(std::lower_bound(groups.begin(), groups.end(), per_tweet[i]) - groups.begin());
    ++ts.bins[detail::bin_index(ts.origin, bin_width, tweets[i].created_at)].values[g];
  }
  return ts;
}

/// Mean tweets per distinct user in each bin and partition; 0 for empty cells.
inline TimeSeries<double> tweets_per_user_series(const std::vector<Tweet>& tweets, Seconds bin_width,
                                                 const GroupOf& partition) {
  detail::check_binning(tweets, bin_width);
  std::vector<std::string> per_tweet;
  auto groups = detail::group_names(tweets, partition, per_tweet);
  auto ts = detail::empty_series<double>(tweets, bin_width, groups);

  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::int64_t, std::set<std::string_view>>> cells;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    const auto g = static_cast<std::size_t>(std::lower_bound(groups.begin(), groups.end(), per_tweet[i]) - groups.begin());
    auto& cell = cells[{detail::bin_index(ts.origin, bin_width, tweets[i].created_at), g}];
    ++cell.first;
    cell.second.insert(tweets[i].user_id);
  }
  for (const auto& [key, cell] : cells)
    ts.bins[key.first].values[key.second] =
        static_cast<double>(cell.first) / static_cast<double>(cell.second.size());
  return ts;
}

struct UserLabel {
  bool is_bot = false;
  bool is_manipulator = false;
};

struct UserMixReport {
  std::int64_t n_users = 0;
  std::int64_t bots = 0;
  std::int64_t humans = 0;
  std::int64_t manipulators = 0;
  std::int64_t organic = 0;
  std::int64_t bot_manipulators = 0;

  Percentage pct(std::int64_t count) const { return {count, n_users}; }

  std::array<std::pair<std::string_view, std::int64_t>, 5> entries() const {
    return {{{"bots", bots},
             {"humans", humans},
             {"manipulators", manipulators},
             {"organic", organic},
             {"bot_manipulators", bot_manipulators}}};
  }

  ojson to_json() const {
    ojson counts = ojson::object(), percent = ojson::object();
    for (const auto& [name, n] : entries()) {
      counts[std::string(name)] = n;
      percent[std::string(name)] = pct(n).value();
    }
    return {{"n_users", n_users}, {"counts", std::move(counts)}, {"percent", std::move(percent)}};
  }

  std::string to_csv() const {
    std::string out = io::csv_row({"class", "count", "percent"});
    for (const auto& [name, n] : entries())
      out += io::csv_row({std::string(name), std::to_string(n), io::format_double(pct(n).value())});
    return out;
  }
};

template <class Map>
UserMixReport user_mix(const Map& user_labels) {
  if (user_labels.empty()) throw Error(Errc::EmptyInput, "user_labels");
  UserMixReport r;
  for (const auto& [_, label] : user_labels) {
    ++r.n_users;
    const UserLabel& l = label;
    (l.is_bot ? r.bots : r.humans) += 1;
    (l.is_manipulator ? r.manipulators : r.organic) += 1;
    if (l.is_bot && l.is_manipulator) ++r.bot_manipulators;
  }
  return r;
}

struct PairReport {
  std::string orig_hashtag;
  std::string resp_hashtag;
  Timestamp orig_trend_time;
  Timestamp resp_first_tweet;
  bool resp_after_orig_trend = false;

  ojson to_json() const {
    return {{"orig_hashtag", orig_hashtag},
            {"resp_hashtag", resp_hashtag},
            {"orig_trend_time", format_rfc3339(orig_trend_time)},
            {"resp_first_tweet", format_rfc3339(resp_first_tweet)},
            {"resp_after_orig_trend", resp_after_orig_trend}};
  }

  static std::string csv_header() {
    return io::csv_row({"orig_hashtag", "resp_hashtag", "orig_trend_time", "resp_first_tweet", "resp_after_orig_trend"});
  }

  std::string csv_line() const {
    return io::csv_row({orig_hashtag, resp_hashtag, format_rfc3339(orig_trend_time), format_rfc3339(resp_first_tweet),
                        resp_after_orig_trend ? "true" : "false"});
  }
};

/// Whether the response hashtag's first tweet came strictly after the original trended.
inline PairReport response_pair_check(const TrendRecord& orig, const std::vector<Tweet>& resp_tweets,
                                      std::string resp_name) {
  if (resp_tweets.empty()) throw Error(Errc::EmptyInput, resp_name);
  const auto first = std::min_element(resp_tweets.begin(), resp_tweets.end(), [](const Tweet& a, const Tweet& b) {
                       return a.created_at < b.created_at;
                     })->created_at;
  return {orig.hashtag, std::move(resp_name), orig.first_seen, first, first > orig.first_seen};
}

}  // namespace manipify
