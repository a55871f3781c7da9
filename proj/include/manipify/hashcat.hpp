#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "manipify/corpus.hpp"
#include "manipify/error.hpp"
#include "manipify/io.hpp"
#include "manipify/ml.hpp"
#include "manipify/textproc.hpp"

namespace manipify {

/// Order matters: it is the argmax tie-break order.
enum class Category { Political, Sports, Religious, Campaign, Entertainment, Military, Other };

inline constexpr std::array<Category, 6> kTopicalCategories = {Category::Political, Category::Sports,
                                                                Category::Religious, Category::Campaign,
                                                                Category::Entertainment, Category::Military};
inline constexpr std::array<Category, 7> kAllCategories = {Category::Political,     Category::Sports,
                                                           Category::Religious,     Category::Campaign,
                                                           Category::Entertainment, Category::Military,
                                                           Category::Other};

constexpr std::string_view to_string(Category c) {
  switch (c) {
    case Category::Political: return "Political";
    case Category::Sports: return "Sports";
    case Category::Religious: return "Religious";
    case Category::Campaign: return "Campaign";
    case Category::Entertainment: return "Entertainment";
    case Category::Military: return "Military";
    case Category::Other: return "Other";
  }
  return "Other";
}

inline std::optional<Category> parse_category(std::string_view name) {
  for (Category c : kAllCategories) {
    const std::string_view canonical = to_string(c);
    if (canonical.size() != name.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < name.size() && same; ++i)
      same = std::tolower(static_cast<unsigned char>(name[i])) == std::tolower(static_cast<unsigned char>(canonical[i]));
    if (same) return c;
  }
  return std::nullopt;
}

constexpr std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }

enum class Language { English, Urdu };

constexpr std::string_view lang_code(Language l) { return l == Language::English ? "en" : "ur"; }
constexpr std::string_view to_string(Language l) { return l == Language::English ? "English" : "Urdu"; }

inline std::optional<Language> parse_language(std::string_view s) {
  if (s == "en" || s == "English") return Language::English;
  if (s == "ur" || s == "Urdu") return Language::Urdu;
  return std::nullopt;
}

enum class LanguageUsed { English, Urdu, Both };

constexpr std::string_view to_string(LanguageUsed l) {
  switch (l) {
    case LanguageUsed::English: return "English";
    case LanguageUsed::Urdu: return "Urdu";
    case LanguageUsed::Both: return "Both";
  }
  return "Both";
}

inline constexpr std::size_t kMinHashtagTweets = 100;
inline constexpr double kCategoryThreshold = 0.5;

/// Probabilities indexed by topical category (Other has none of its own).
using CategoryProbabilities = std::array<double, 6>;

struct HashtagPrediction {
  Category label = Category::Other;
  CategoryProbabilities probabilities{};
  LanguageUsed language_used = LanguageUsed::English;

  double max_probability() const { return *std::max_element(probabilities.begin(), probabilities.end()); }
};

/// Argmax in category order; Other when the maximum is below 0.5.
inline Category decide_category(const CategoryProbabilities& p) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < p.size(); ++c)
    if (p[c] > p[best]) best = c;
  return p[best] >= kCategoryThreshold ? kTopicalCategories[best] : Category::Other;
}

/// Space-joined preprocessed text of the tweets in `lang`, in timestamp order.
inline std::string hashtag_document(const std::vector<Tweet>& tweets, std::string_view lang) {
  std::vector<Tweet> selected;
  for (const auto& t : tweets)
    if (t.lang == lang) selected.push_back(t);
  sort_chronologically(selected);
  std::string doc;
  for (const auto& t : selected) {
    const std::string clean = preprocess(t.text);
    if (clean.empty()) continue;
    if (!doc.empty()) doc += ' ';
    doc += clean;
  }
  return doc;
}

/// One-vs-all category models sharing one TF-IDF vectorizer, for one language.
class CategoryModelBundle {
 public:
  static constexpr int kSchemaVersion = 1;

  CategoryModelBundle(Language language, TfidfVectorizer vectorizer, std::array<ml::LogRegModel, 6> models)
      : language_(language), vectorizer_(std::move(vectorizer)), models_(std::move(models)) {
    for (const auto& m : models_) {
      if (m.dimension() != vectorizer_.size())
        throw Error(Errc::DimensionMismatch, "bundle", static_cast<std::int64_t>(m.dimension()),
                    "model does not match vectorizer");
      forms_.push_back(m.linear_form());
    }
  }

  Language language() const { return language_; }
  const TfidfVectorizer& vectorizer() const { return vectorizer_; }
  const ml::LogRegModel& model(Category c) const { return models_.at(index_of(c)); }

  /// Probabilities for an already assembled hashtag document.
  CategoryProbabilities probabilities(std::string_view document) const {
    const DocVector v = vectorizer_.transform(document);
    CategoryProbabilities p{};
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = ml::sigmoid(forms_[c](v));
    return p;
  }

  void save(const std::filesystem::path& dir) const {
    nlohmann::json manifest = {{"language", lang_code(language_)},
                               {"schema_version", kSchemaVersion},
                               {"categories", nlohmann::json::array()}};
    for (Category c : kTopicalCategories) manifest["categories"].push_back(model_file(c));
    io::write_file_atomic(dir / "vectorizer.json", vectorizer_.to_json().dump() + "\n");
    for (Category c : kTopicalCategories)
      io::write_file_atomic(dir / model_file(c), model(c).to_json().dump() + "\n");
    io::write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  }

  static CategoryModelBundle load(const std::filesystem::path& dir) {
    auto parse = [](const std::filesystem::path& p) {
      auto j = nlohmann::json::parse(io::read_file(p), nullptr, false);
      if (j.is_discarded()) throw Error(Errc::SchemaMismatch, p.string(), std::nullopt, "invalid JSON");
      return j;
    };
    const auto manifest = parse(dir / "manifest.json");
    if (manifest.value("schema_version", -1) != kSchemaVersion)
      throw Error(Errc::SchemaMismatch, "manifest.json", manifest.value("schema_version", -1));
    const auto language = parse_language(manifest.value("language", ""));
    if (!language) throw Error(Errc::SchemaMismatch, "manifest.json", std::nullopt, "unknown language");
    auto vectorizer = TfidfVectorizer::from_json(parse(dir / "vectorizer.json"));
    std::array<ml::LogRegModel, 6> models;
    for (Category c : kTopicalCategories) models[index_of(c)] = ml::LogRegModel::from_json(parse(dir / model_file(c)));
    return CategoryModelBundle(*language, std::move(vectorizer), std::move(models));
  }

 private:
  static std::string model_file(Category c) {
    std::string name(to_string(c));
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return name + ".json";
  }

  Language language_;
  TfidfVectorizer vectorizer_;
  std::array<ml::LogRegModel, 6> models_;
  std::vector<ml::RawLinearForm> forms_;
};

struct LabelledDocument {
  std::string document;
  Category category = Category::Other;
};

/// Fits one vectorizer on every document, then one binary model per topical
/// category with that category as positives and everything else (Other
/// included) as negatives.
inline CategoryModelBundle train_bundle(const std::vector<LabelledDocument>& labelled, Language language,
                                        const ml::LogRegConfig& config = {}) {
  std::array<std::size_t, 7> counts{};
  for (const auto& d : labelled) ++counts[index_of(d.category)];
  for (Category c : kTopicalCategories)
    if (counts[index_of(c)] < 2)
      throw Error(Errc::InsufficientClassData, std::string(to_string(c)),
                  static_cast<std::int64_t>(counts[index_of(c)]), "need at least 2 positive hashtags");

  std::vector<std::string> docs;
  docs.reserve(labelled.size());
  for (const auto& d : labelled) docs.push_back(d.document);
  TfidfVectorizer vectorizer = TfidfVectorizer::fit(docs, 1, 3);

  ml::SparseDataset ds{ml::SparseMatrix(vectorizer.size()), {}, vectorizer.terms()};
  for (const auto& d : docs) ds.X.append_row(vectorizer.transform(d));

  std::array<ml::LogRegModel, 6> models;
  for (Category c : kTopicalCategories) {
    ds.y.clear();
    for (const auto& d : labelled) ds.y.push_back(d.category == c ? 1 : 0);
    models[index_of(c)] = ml::train_logreg(ds, config);
  }
  return CategoryModelBundle(language, std::move(vectorizer), std::move(models));
}

inline std::size_t count_language(const std::vector<Tweet>& tweets, std::string_view lang) {
  return static_cast<std::size_t>(
      std::count_if(tweets.begin(), tweets.end(), [&](const Tweet& t) { return t.lang == lang; }));
}

/// Classifies a hashtag from its tweets in the bundle's language. Requires at
/// least `min_tweets` such tweets.
inline HashtagPrediction classify_monolingual(const CategoryModelBundle& bundle, const std::vector<Tweet>& tweets,
                                              std::size_t min_tweets = kMinHashtagTweets) {
  const std::string_view lang = lang_code(bundle.language());
  const std::size_t n = count_language(tweets, lang);
  if (n < min_tweets) throw Error(Errc::InsufficientTweets, std::string(lang), static_cast<std::int64_t>(n));
  HashtagPrediction p;
  p.probabilities = bundle.probabilities(hashtag_document(tweets, lang));
  p.label = decide_category(p.probabilities);
  p.language_used = bundle.language() == Language::English ? LanguageUsed::English : LanguageUsed::Urdu;
  return p;
}

/// English-Urdu hashtags: each bundle scores its own language slice and the
/// category with the single highest probability from either side wins. The
/// tweet minimum applies to the English plus Urdu total, not per slice.
inline HashtagPrediction classify_bilingual(const CategoryModelBundle& en, const CategoryModelBundle& ur,
                                            const std::vector<Tweet>& tweets,
                                            std::size_t min_tweets = kMinHashtagTweets) {
  if (en.language() != Language::English || ur.language() != Language::Urdu)
    throw Error(Errc::InvalidArgument, "bundles", std::nullopt, "expected an English and an Urdu bundle");
  const std::size_t n_en = count_language(tweets, "en");
  const std::size_t n_ur = count_language(tweets, "ur");
  if (n_en + n_ur < min_tweets) throw Error(Errc::InsufficientTweets, "en+ur", static_cast<std::int64_t>(n_en + n_ur));
  if (n_en == 0) throw Error(Errc::MissingLanguageSlice, "en");
  if (n_ur == 0) throw Error(Errc::MissingLanguageSlice, "ur");

  const auto p_en = en.probabilities(hashtag_document(tweets, "en"));
  const auto p_ur = ur.probabilities(hashtag_document(tweets, "ur"));
  HashtagPrediction p;
  for (std::size_t c = 0; c < p.probabilities.size(); ++c) p.probabilities[c] = std::max(p_en[c], p_ur[c]);
  p.label = decide_category(p.probabilities);
  p.language_used = LanguageUsed::Both;
  return p;
}

}  // namespace manipify
