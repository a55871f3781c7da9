#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "manipify/analyzer.hpp"
#include "manipify/corpus.hpp"
#include "manipify/features.hpp"
#include "manipify/hashcat.hpp"
#include "manipify/labels.hpp"
#include "manipify/locality.hpp"
#include "manipify/ml.hpp"

namespace manipify {

/// The three JSONL files of a corpus directory, loaded and indexed.
struct CorpusData {
  std::vector<Tweet> tweets;
  std::vector<UserProfile> users;
  std::vector<TrendRecord> trends;
  UserMap user_map;
  std::map<std::string, std::vector<Tweet>, std::less<>> by_hashtag;  // every tweet under each of its hashtags

  static CorpusData from(std::vector<Tweet> tweets, std::vector<UserProfile> users, std::vector<TrendRecord> trends) {
    CorpusData d{std::move(tweets), std::move(users), std::move(trends), {}, {}};
    d.user_map = index_users(d.users);
    for (const auto& t : d.tweets)
      for (const auto& h : t.hashtags) d.by_hashtag[h].push_back(t);
    return d;
  }

  static CorpusData load(const std::filesystem::path& dir) {
    return from(load_tweets(dir / "tweets.jsonl"), load_users(dir / "users.jsonl"), load_trends(dir / "trends.jsonl"));
  }

  /// Hashtags that have a trend record, sorted.
  std::vector<std::string> trend_hashtags() const {
    std::set<std::string> tags;
    for (const auto& r : trends) tags.insert(r.hashtag);
    return {tags.begin(), tags.end()};
  }

  const std::vector<Tweet>& tweets_of(std::string_view tag) const {
    static const std::vector<Tweet> none;
    auto it = by_hashtag.find(tag);
    return it == by_hashtag.end() ? none : it->second;
  }

  /// The selected corpus of one trending hashtag (original tweets inside the trend window).
  HashtagCorpus hashtag_corpus(const TrendRecord& trend) const {
    return build_hashtag_corpus(trend, tweets_of(trend.hashtag), user_map);
  }

  /// Selected tweets for `tag`: the trend window applies when a trend record exists.
  std::vector<Tweet> selected_tweets(std::string_view tag, std::string_view location) const {
    if (auto trend = find_trend(trends, tag, location)) return hashtag_corpus(*trend).tweets();
    auto out = original_only(tweets_of(tag));
    sort_chronologically(out);
    return out;
  }
};

/// Manipulator feature rows for every trending hashtag, ordered by hashtag then user.
inline std::vector<ManipRow> all_manip_rows(const CorpusData& data, std::string_view location) {
  std::vector<ManipRow> rows;
  for (const auto& tag : data.trend_hashtags()) {
    const auto trend = find_trend(data.trends, tag, location);
    const HashtagCorpus corpus = data.hashtag_corpus(*trend);
    if (corpus.tweets().empty()) continue;
    auto part = manip_rows(corpus);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return rows;
}

inline std::vector<BotRow> all_bot_rows(const CorpusData& data) {
  std::vector<BotRow> rows;
  rows.reserve(data.user_map.size());
  for (const auto& [id, user] : data.user_map) rows.push_back({id, bot_features(user)});
  return rows;
}

inline std::vector<std::string> manip_feature_names() {
  return {ManipFeatureVector::kColumns.begin(), ManipFeatureVector::kColumns.end()};
}

inline std::vector<std::string> bot_feature_names() {
  return {BotFeatureVector::kColumns.begin(), BotFeatureVector::kColumns.end()};
}

/// A dataset plus, for each of its samples, the id it was built from.
struct KeyedDataset {
  ml::Dataset data;
  std::vector<std::string> keys;
};

inline KeyedDataset manip_dataset(const std::vector<ManipRow>& rows, const GroundTruth& truth) {
  KeyedDataset out{{ml::DenseMatrix(0, ManipFeatureVector::kColumns.size()), {}, manip_feature_names()}, {}};
  for (const auto& r : rows) {
    auto it = truth.users.find(r.user_id);
    if (it == truth.users.end()) continue;
    out.data.X.append_row(r.features.values());
    out.data.y.push_back(it->second.manipulator ? 1 : 0);
    out.keys.push_back(r.user_id + "/" + r.hashtag);
  }
  return out;
}

inline KeyedDataset bot_dataset(const std::vector<BotRow>& rows, const GroundTruth& truth) {
  KeyedDataset out{{ml::DenseMatrix(0, BotFeatureVector::kColumns.size()), {}, bot_feature_names()}, {}};
  for (const auto& r : rows) {
    auto it = truth.users.find(r.user_id);
    if (it == truth.users.end()) continue;
    out.data.X.append_row(r.features.values());
    out.data.y.push_back(it->second.bot ? 1 : 0);
    out.keys.push_back(r.user_id);
  }
  return out;
}

/// Labelled trends (deduplicated by hashtag, sorted) as a locality dataset.
inline KeyedDataset locality_training_set(const CorpusData& data, const GroundTruth& truth,
                                          std::string_view target_country) {
  KeyedDataset out{{ml::DenseMatrix(0, LocalityFeatures::kColumns.size()), {}, locality_feature_names()}, {}};
  for (const auto& tag : data.trend_hashtags()) {
    auto it = truth.hashtags.find(tag);
    if (it == truth.hashtags.end() || !it->second.local) continue;
    const auto trend = find_trend(data.trends, tag, target_country);
    out.data.X.append_row(locality_features(*trend, target_country).encode());
    out.data.y.push_back(*it->second.local ? 1 : 0);
    out.keys.push_back(tag);
  }
  return out;
}

struct LabelledHashtag {
  std::string hashtag;
  Category category;
  std::vector<Tweet> tweets;
};

/// Category-labelled hashtags whose language profile matches `profile`, sorted by hashtag.
inline std::vector<LabelledHashtag> labelled_hashtags(const CorpusData& data, const GroundTruth& truth,
                                                      LanguageProfile profile, std::string_view location) {
  std::vector<LabelledHashtag> out;
  for (const auto& [tag, t] : truth.hashtags) {
    if (!t.category) continue;
    auto tweets = data.selected_tweets(tag, location);
    if (language_profile(tweets) != profile) continue;
    out.push_back({tag, *t.category, std::move(tweets)});
  }
  return out;
}

inline std::vector<LabelledDocument> documents(const std::vector<LabelledHashtag>& hashtags, Language language) {
  std::vector<LabelledDocument> docs;
  docs.reserve(hashtags.size());
  for (const auto& h : hashtags) docs.push_back({hashtag_document(h.tweets, lang_code(language)), h.category});
  return docs;
}

/// Held-out evaluation of a train/test split.
template <class Model>
struct Holdout {
  Model model;
  ml::SplitIndices split;
  ml::Metrics metrics;
};

inline Holdout<ml::LogRegModel> holdout_logreg(const ml::Dataset& ds, double train_fraction, std::uint64_t seed,
                                              const ml::LogRegConfig& config = {}) {
  ds.validate();
  auto split = ml::stratified_split(ds.y, train_fraction, seed);
  const auto train = ds.select(split.train);
  const auto test = ds.select(split.test);
  auto model = ml::train_logreg(train, config);
  auto metrics = ml::evaluate(model.predict_all(test.X), test.y, 2);
  return {std::move(model), std::move(split), std::move(metrics)};
}

inline Holdout<ml::TreeModel> holdout_tree(const ml::Dataset& ds, double train_fraction, std::uint64_t seed,
                                          const ml::TreeConfig& config = {}) {
  ds.validate();
  auto split = ml::stratified_split(ds.y, train_fraction, seed);
  const auto train = ds.select(split.train);
  const auto test = ds.select(split.test);
  auto model = ml::train_tree(train, config);
  auto metrics = ml::evaluate(model.predict_all(test.X), test.y, 2);
  return {std::move(model), std::move(split), std::move(metrics)};
}

struct HashcatHoldout {
  CategoryModelBundle bundle;
  ml::SplitIndices split;
  std::vector<Category> predicted;  // for split.test, in order
  ml::Metrics metrics;
};

/// Trains a bundle on a stratified share of `hashtags` and classifies the rest.
/// Hashtags below the tweet minimum should be filtered out beforehand.
inline HashcatHoldout holdout_hashcat(const std::vector<LabelledHashtag>& hashtags, Language language,
                                      double train_fraction, std::uint64_t seed,
                                      std::size_t min_tweets = kMinHashtagTweets, const ml::LogRegConfig& config = {}) {
  std::vector<int> labels;
  for (const auto& h : hashtags) labels.push_back(static_cast<int>(index_of(h.category)));
  auto split = ml::stratified_split(labels, train_fraction, seed);
  std::vector<LabelledDocument> train;
  for (std::size_t i : split.train)
    train.push_back({hashtag_document(hashtags[i].tweets, lang_code(language)), hashtags[i].category});
  auto bundle = train_bundle(train, language, config);
  std::vector<Category> predicted;
  std::vector<int> pred, truth;
  for (std::size_t i : split.test) {
    predicted.push_back(classify_monolingual(bundle, hashtags[i].tweets, min_tweets).label);
    pred.push_back(static_cast<int>(index_of(predicted.back())));
    truth.push_back(labels[i]);
  }
  auto metrics = ml::evaluate(pred, truth, static_cast<int>(kAllCategories.size()));
  return {std::move(bundle), std::move(split), std::move(predicted), std::move(metrics)};
}

/// Per-user manipulator probability: the maximum over the user's hashtags.
inline std::map<std::string, double> manip_user_probabilities(const ml::LogRegModel& model,
                                                              const std::vector<ManipRow>& rows) {
  std::map<std::string, double> out;
  for (const auto& r : rows) {
    const double p = model.predict_proba(r.features.values());
    auto [it, inserted] = out.emplace(r.user_id, p);
    if (!inserted) it->second = std::max(it->second, p);
  }
  return out;
}

}  // namespace manipify
