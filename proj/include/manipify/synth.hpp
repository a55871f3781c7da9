#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "manipify/corpus.hpp"
#include "manipify/error.hpp"
#include "manipify/hashcat.hpp"
#include "manipify/io.hpp"
#include "manipify/labels.hpp"
#include "manipify/random.hpp"
#include "manipify/timeutil.hpp"

namespace manipify {

struct SynthConfig {
  std::uint64_t seed = 42;
  std::size_t n_manipulators = 60;
  std::size_t n_organic = 240;
  std::size_t n_bots = 100;
  std::size_t n_humans = 100;
  std::size_t n_hashtags_per_category = 10;
  std::size_t n_other_hashtags = 6;
  std::size_t tweets_per_hashtag = 120;
  std::size_t n_activity_hashtags = 6;   // hashtags carrying manipulator and organic activity
  std::size_t n_locality_trends = 60;    // trend records with local/global labels and no tweets
  std::size_t n_audience = 40;           // authors of topical tweets when there are no bots or humans
  std::string target_country = "Pakistan";
  double local_fraction = 0.73;
  double label_noise = 0.03;
  double urdu_fraction = 0.3;
  double bilingual_fraction = 0.1;
  double stealth_rate = 0.03;            // manipulators that behave like organic users
  double manipulator_bot_rate = 0.5;
  double organic_bot_rate = 0.4;

  void validate() const {
    auto fraction = [](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) throw Error(Errc::InvalidArgument, name, std::nullopt, "must lie in [0, 1]");
    };
    fraction(local_fraction, "local_fraction");
    fraction(label_noise, "label_noise");
    fraction(urdu_fraction, "urdu_fraction");
    fraction(bilingual_fraction, "bilingual_fraction");
    fraction(stealth_rate, "stealth_rate");
    fraction(manipulator_bot_rate, "manipulator_bot_rate");
    fraction(organic_bot_rate, "organic_bot_rate");
    if (urdu_fraction + bilingual_fraction > 1.0)
      throw Error(Errc::InvalidArgument, "urdu_fraction", std::nullopt, "urdu plus bilingual exceeds 1");
    if ((n_manipulators > 0 || n_organic > 0) && n_activity_hashtags == 0)
      throw Error(Errc::InvalidArgument, "n_activity_hashtags", 0, "activity users need a hashtag");
    if (target_country.empty()) throw Error(Errc::InvalidArgument, "target_country", std::nullopt, "empty");
  }

  nlohmann::ordered_json to_json() const {
    return {{"seed", seed},
            {"n_manipulators", n_manipulators},
            {"n_organic", n_organic},
            {"n_bots", n_bots},
            {"n_humans", n_humans},
            {"n_hashtags_per_category", n_hashtags_per_category},
            {"n_other_hashtags", n_other_hashtags},
            {"tweets_per_hashtag", tweets_per_hashtag},
            {"n_activity_hashtags", n_activity_hashtags},
            {"n_locality_trends", n_locality_trends},
            {"n_audience", n_audience},
            {"target_country", target_country},
            {"local_fraction", local_fraction},
            {"label_noise", label_noise},
            {"urdu_fraction", urdu_fraction},
            {"bilingual_fraction", bilingual_fraction},
            {"stealth_rate", stealth_rate},
            {"manipulator_bot_rate", manipulator_bot_rate},
            {"organic_bot_rate", organic_bot_rate}};
  }
};

struct LabelledCorpus {
  std::vector<Tweet> tweets;
  std::vector<UserProfile> users;
  std::vector<TrendRecord> trends;
  GroundTruth truth;

  friend bool operator==(const LabelledCorpus&, const LabelledCorpus&) = default;
};

namespace synth {

// Signal model constants.
inline constexpr std::int64_t kManipTweetsMin = 8, kManipTweetsMax = 30;
inline constexpr std::int64_t kManipGapMin = 10, kManipGapMax = 120;
inline constexpr std::int64_t kManipLeadMin = 1800, kManipLeadMax = 6 * 3600;  // burst start before trend time
inline constexpr double kManipOwnTemplate = 0.8;
inline constexpr std::int64_t kOrganicTweetsMin = 1, kOrganicTweetsMax = 6;
inline constexpr std::int64_t kOrganicGapMin = 600, kOrganicGapMax = 7200;
inline constexpr double kOrganicAfterTrend = 0.85;
inline constexpr double kRetweetRate = 0.1;
inline constexpr double kUndeterminedRate = 0.1;
inline constexpr double kBotTypical = 0.8;  // per-flag odds for the three planted bot signals
inline constexpr std::size_t kTemplatesPerHashtag = 3;
inline constexpr std::size_t kVocabularySize = 20;

inline const Timestamp kStart = *parse_rfc3339("2021-01-20T00:00:00Z");

inline const std::array<std::array<std::string_view, kVocabularySize>, 6> kEnglishTopics = {{
    {"assembly", "ballot", "cabinet", "coalition", "constitution", "democracy", "election", "government", "governor",
     "minister", "opposition", "parliament", "party", "policy", "premier", "reform", "senate", "speaker", "vote",
     "mandate"},
    {"batsman", "bowler", "captain", "championship", "cricket", "innings", "league", "match", "medal", "olympics",
     "overs", "pitch", "score", "series", "stadium", "striker", "team", "tournament", "umpire", "wicket"},
    {"blessing", "faith", "fasting", "heaven", "holy", "imam", "mosque", "pilgrimage", "prayer", "prophet", "quran",
     "ramadan", "saint", "scripture", "sermon", "shrine", "spiritual", "worship", "eid", "hajj"},
    {"awareness", "boycott", "cause", "demand", "donate", "drive", "justice", "movement", "petition", "protest",
     "raise", "rally", "rights", "sign", "solidarity", "support", "unite", "voice", "volunteer", "campaign"},
    {"actor", "album", "award", "celebrity", "cinema", "comedy", "concert", "drama", "episode", "fans", "film",
     "movie", "music", "premiere", "show", "singer", "song", "star", "trailer", "theatre"},
    {"army", "battalion", "border", "brigade", "commander", "defence", "drill", "forces", "general", "jets", "martyr",
     "navy", "officer", "parade", "regiment", "soldier", "troops", "veteran", "artillery", "salute"},
}};

inline const std::vector<std::string_view> kEnglishGeneral = {
    "today", "people", "good", "time", "day", "think", "really", "know", "new", "great", "love", "life", "world",
    "need", "right", "going", "best", "thanks", "happy", "look", "morning", "night", "week", "year", "city",
    "friends", "family", "home", "work", "watch", "read", "share", "hope", "news", "story", "feel", "make", "come",
    "back", "still", "never", "always", "everyone", "thing", "together", "little", "big", "long", "first", "last",
    "next", "early", "late", "here", "there", "where", "when", "why", "what", "who", "how", "all", "some", "many",
    "much", "more", "most", "other", "same", "different", "real", "true", "amazing", "beautiful", "weather", "rain",
    "sun", "coffee", "tea", "food", "lunch", "dinner", "market", "traffic", "road", "school", "college", "class",
    "teacher", "student", "phone", "internet", "video", "photo", "picture", "garden", "river", "mountain", "sea",
    "travel", "train", "bus", "car", "street", "house", "room", "window", "door", "book", "letter", "friend",
    "mother", "father", "brother", "sister", "child", "kids", "baby", "dog", "cat", "bird", "tree", "flower",
    "color", "blue", "green", "red", "yellow", "white", "black", "simple", "easy", "hard", "quick", "slow",
    "please", "thank", "sorry", "welcome", "hello", "yes", "maybe", "tonight", "tomorrow", "yesterday", "soon",
};

inline constexpr std::array<std::string_view, 16> kForeignCountries = {
    "India", "Japan", "Australia", "United States", "United Kingdom", "Canada", "Germany", "France",
    "Brazil", "Turkey", "Saudi Arabia", "United Arab Emirates", "Indonesia", "Malaysia", "Nigeria", "Kenya"};

/// Pseudo-words in Urdu script, built from a fixed alphabet with a fixed seed
/// so the vocabulary never depends on the corpus seed.
struct UrduLexicon {
  std::array<std::vector<std::string>, 6> topics;
  std::vector<std::string> general;

  static const UrduLexicon& instance() {
    static const UrduLexicon lex = build();
    return lex;
  }

 private:
  static UrduLexicon build() {
    static constexpr std::array<std::string_view, 36> kLetters = {
        "ا", "ب", "پ", "ت", "ٹ", "ث", "ج", "چ", "ح", "خ", "د", "ڈ", "ذ", "ر", "ڑ", "ز", "ژ", "س",
        "ش", "ص", "ض", "ط", "ظ", "ع", "غ", "ف", "ق", "ک", "گ", "ل", "م", "ن", "و", "ہ", "ی", "ے"};
    Rng rng(0x75726475);
    std::set<std::string> used;
    auto word = [&] {
      for (;;) {
        std::string w;
        const auto len = rng.uniform_int(3, 5);
        for (std::int64_t i = 0; i < len; ++i) w += kLetters[rng.index(kLetters.size())];
        if (used.insert(w).second) return w;
      }
    };
    UrduLexicon lex;
    for (auto& topic : lex.topics)
      for (std::size_t i = 0; i < kVocabularySize; ++i) topic.push_back(word());
    for (std::size_t i = 0; i < kEnglishGeneral.size(); ++i) lex.general.push_back(word());
    return lex;
  }
};

inline std::string numbered(std::string_view prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, i);
  return std::string(prefix) + buf;
}

inline std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

inline std::string category_prefix(Category c) {
  if (c == Category::Other) return "misc";
  std::string name(to_string(c));
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return name;
}

class Generator {
 public:
  explicit Generator(const SynthConfig& config) : cfg_(config), rng_(config.seed) {}

  LabelledCorpus run() {
    make_users();
    make_activity_hashtags();
    make_category_hashtags();
    make_locality_trends();
    finish();
    return std::move(out_);
  }

 private:
  struct PendingTweet {
    Tweet tweet;
    std::size_t seq;
  };

  UserProfile profile(const std::string& id, bool bot) {
    const double typical = bot ? kBotTypical : 1.0 - kBotTypical;
    UserProfile u;
    u.id = id;
    u.friends_count = rng_.bernoulli(typical) ? rng_.uniform_int(1001, 5000) : rng_.uniform_int(20, 1000);
    u.followers_count = rng_.bernoulli(typical) ? rng_.uniform_int(0, 29) : rng_.uniform_int(30, 20000);
    if (!rng_.bernoulli(typical)) u.description = sentence(kEnglishGeneral, 4, 9);
    if (!u.description.empty() && rng_.bernoulli(bot ? 0.2 : 0.5)) u.description_url = "https://example.org/" + id;
    u.geo_enabled = rng_.bernoulli(bot ? 0.2 : 0.5);
    u.listed_count = rng_.bernoulli(bot ? 0.2 : 0.6) ? rng_.uniform_int(1, 200) : 0;
    u.statuses_count = rng_.bernoulli(bot ? 0.9 : 0.98) ? rng_.uniform_int(1, 50000) : 0;
    if (rng_.bernoulli(bot ? 0.2 : 0.5)) u.profile_url = "https://example.com/" + id;
    u.verified = !bot && rng_.bernoulli(0.05);
    return u;
  }

  void add_user(const std::string& id, bool bot, bool manipulator) {
    out_.users.push_back(profile(id, bot));
    out_.truth.users[id] = {manipulator, bot};
  }

  void make_users() {
    for (std::size_t i = 0; i < cfg_.n_manipulators; ++i) {
      manipulators_.push_back(numbered("m", i + 1, 4));
      add_user(manipulators_.back(), rng_.bernoulli(cfg_.manipulator_bot_rate), true);
    }
    for (std::size_t i = 0; i < cfg_.n_organic; ++i) {
      organic_.push_back(numbered("o", i + 1, 4));
      add_user(organic_.back(), rng_.bernoulli(cfg_.organic_bot_rate), false);
    }
    for (std::size_t i = 0; i < cfg_.n_bots; ++i) {
      authors_.push_back(numbered("b", i + 1, 4));
      add_user(authors_.back(), true, false);
    }
    for (std::size_t i = 0; i < cfg_.n_humans; ++i) {
      authors_.push_back(numbered("h", i + 1, 4));
      add_user(authors_.back(), false, false);
    }
    const bool topical = cfg_.n_hashtags_per_category > 0 || cfg_.n_other_hashtags > 0;
    if (authors_.empty() && topical)
      for (std::size_t i = 0; i < std::max<std::size_t>(cfg_.n_audience, 1); ++i) {
        authors_.push_back(numbered("a", i + 1, 4));
        add_user(authors_.back(), false, false);
      }
  }

  template <class Words>
  std::string sentence(const Words& words, std::int64_t lo, std::int64_t hi) {
    std::string s;
    const auto n = rng_.uniform_int(lo, hi);
    for (std::int64_t i = 0; i < n; ++i) {
      if (i) s += ' ';
      s += words[rng_.index(words.size())];
    }
    return s;
  }

  TrendRecord local_trend(const std::string& tag, Timestamp first_seen) {
    TrendRecord r;
    r.hashtag = tag;
    r.location = cfg_.target_country;
    r.first_seen = first_seen;
    r.last_seen = first_seen + Seconds(rng_.uniform_int(1, 10) * 3600);
    r.first_trend_location = cfg_.target_country;
    r.n_other_countries = rng_.uniform_int(0, 2);
    r.trended_worldwide = false;
    return r;
  }

  TrendRecord global_trend(const std::string& tag, Timestamp first_seen) {
    TrendRecord r = local_trend(tag, first_seen);
    if (rng_.bernoulli(0.75)) {
      r.first_trend_location = kForeignCountries[rng_.index(kForeignCountries.size())];
      r.n_other_countries = rng_.uniform_int(0, 60);
      r.trended_worldwide = rng_.bernoulli(0.3);
    } else {
      r.n_other_countries = rng_.uniform_int(5, 60);
      r.trended_worldwide = true;
    }
    return r;
  }

  Timestamp random_day_time() { return kStart + Seconds(rng_.uniform_int(0, 10 * 86400 - 1)); }

  void emit(std::string user, std::string text, Timestamp at, std::string lang, const std::string& tag,
            bool retweet = false) {
    Tweet t;
    t.user_id = std::move(user);
    t.text = std::move(text);
    t.created_at = at;
    t.lang = std::move(lang);
    t.hashtags = {tag};
    t.is_retweet = retweet;
    pending_.push_back({std::move(t), pending_.size()});
  }

  void organic_activity(const std::string& user, const std::string& tag, const TrendRecord& trend) {
    const std::string display = "#" + capitalized(tag);
    const auto n = rng_.uniform_int(kOrganicTweetsMin, kOrganicTweetsMax);
    Timestamp at = rng_.bernoulli(kOrganicAfterTrend)
                       ? trend.first_seen + Seconds(rng_.uniform_int(0, (trend.last_seen - trend.first_seen).count() + 4 * 3600))
                       : trend.first_seen - Seconds(rng_.uniform_int(600, 4 * 3600));
    for (std::int64_t i = 0; i < n; ++i) {
      if (i) at += Seconds(rng_.uniform_int(kOrganicGapMin, kOrganicGapMax));
      emit(user, sentence(kEnglishGeneral, 5, 10) + " " + display, at,
           rng_.bernoulli(kUndeterminedRate) ? "und" : "en", tag);
    }
  }

  void manipulator_activity(const std::string& user, const std::string& tag, const TrendRecord& trend,
                            const std::vector<std::string>& templates, std::vector<std::pair<std::string, Timestamp>>& posted) {
    const std::string display = "#" + capitalized(tag);
    const std::size_t own = rng_.index(templates.size());
    const auto n = rng_.uniform_int(kManipTweetsMin, kManipTweetsMax);
    Timestamp at = trend.first_seen - Seconds(rng_.uniform_int(kManipLeadMin, kManipLeadMax));
    for (std::int64_t i = 0; i < n; ++i) {
      if (i) at += Seconds(rng_.uniform_int(kManipGapMin, kManipGapMax));
      const auto& base = templates[rng_.bernoulli(kManipOwnTemplate) ? own : rng_.index(templates.size())];
      std::string text = base;
      const auto fillers = rng_.uniform_int(0, 2);
      for (std::int64_t k = 0; k < fillers; ++k) text += " " + std::string(kEnglishGeneral[rng_.index(kEnglishGeneral.size())]);
      text += " " + display;
      posted.emplace_back(text, at);
      emit(user, std::move(text), at, "en", tag);
    }
  }

  void make_activity_hashtags() {
    if (manipulators_.empty() && organic_.empty()) return;
    for (std::size_t h = 0; h < cfg_.n_activity_hashtags; ++h) {
      const std::string tag = numbered("trend", h + 1, 2);
      const TrendRecord trend =
          local_trend(tag, kStart + Seconds(static_cast<std::int64_t>(h) * 8 * 3600 + rng_.uniform_int(0, 3599)));
      out_.trends.push_back(trend);
      out_.truth.hashtags[tag] = {std::nullopt, true};

      std::vector<std::string> templates;
      for (std::size_t k = 0; k < kTemplatesPerHashtag; ++k) templates.push_back(sentence(kEnglishGeneral, 3, 6));

      std::vector<std::string> organic_here;
      for (std::size_t i = h; i < organic_.size(); i += cfg_.n_activity_hashtags) organic_here.push_back(organic_[i]);

      std::vector<std::pair<std::string, Timestamp>> posted;
      for (std::size_t i = h; i < manipulators_.size(); i += cfg_.n_activity_hashtags) {
        if (rng_.bernoulli(cfg_.stealth_rate)) organic_activity(manipulators_[i], tag, trend);
        else manipulator_activity(manipulators_[i], tag, trend, templates, posted);
      }
      for (const auto& user : organic_here) organic_activity(user, tag, trend);

      if (organic_here.empty()) continue;
      for (const auto& [text, at] : posted)
        if (rng_.bernoulli(kRetweetRate))
          emit(organic_here[rng_.index(organic_here.size())], "RT " + text, at + Seconds(rng_.uniform_int(60, 1800)),
               "en", tag, true);
    }
  }

  void topical_hashtag(const std::string& tag, std::optional<Category> topic, Category label, std::size_t i,
                       std::size_t n) {
    const auto n_ur = static_cast<std::size_t>(std::llround(cfg_.urdu_fraction * static_cast<double>(n)));
    const auto n_bi = static_cast<std::size_t>(std::llround(cfg_.bilingual_fraction * static_cast<double>(n)));
    const bool urdu = i < n_ur;
    const bool bilingual = !urdu && i < n_ur + n_bi;

    const TrendRecord trend = local_trend(tag, random_day_time());
    out_.trends.push_back(trend);
    out_.truth.hashtags[tag] = {label, true};

    const auto& lex = UrduLexicon::instance();
    const std::string display = "#" + capitalized(tag);
    const auto span = (trend.last_seen - trend.first_seen).count() + 8 * 3600;
    for (std::size_t k = 0; k < cfg_.tweets_per_hashtag; ++k) {
      const bool in_urdu = urdu || (bilingual && k % 2 == 1);
      std::string text;
      if (in_urdu) text = topic ? sentence(lex.topics[index_of(*topic)], 6, 10) : sentence(lex.general, 6, 10);
      else text = topic ? sentence(kEnglishTopics[index_of(*topic)], 6, 10) : sentence(kEnglishGeneral, 6, 10);
      text = rng_.bernoulli(0.5) ? display + " " + text : text + " " + display;
      const Timestamp at = trend.first_seen - Seconds(2 * 3600) + Seconds(rng_.uniform_int(0, span));
      emit(authors_[rng_.index(authors_.size())], std::move(text), at, in_urdu ? "ur" : "en", tag);
    }
  }

  void make_category_hashtags() {
    for (Category c : kTopicalCategories)
      for (std::size_t i = 0; i < cfg_.n_hashtags_per_category; ++i)
        topical_hashtag(numbered(category_prefix(c), i + 1, 2), c, c, i, cfg_.n_hashtags_per_category);
    for (std::size_t i = 0; i < cfg_.n_other_hashtags; ++i)
      topical_hashtag(numbered(category_prefix(Category::Other), i + 1, 2), std::nullopt, Category::Other, i,
                      cfg_.n_other_hashtags);
  }

  void make_locality_trends() {
    const std::size_t n = cfg_.n_locality_trends;
    if (n == 0) return;
    const auto n_local = static_cast<std::size_t>(std::llround(cfg_.local_fraction * static_cast<double>(n)));
    std::vector<char> local(n, 0);
    std::fill(local.begin(), local.begin() + static_cast<std::ptrdiff_t>(std::min(n_local, n)), 1);
    rng_.shuffle(local);

    std::vector<char> label = local;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng_.shuffle(order);
    const auto n_noisy = static_cast<std::size_t>(std::llround(cfg_.label_noise * static_cast<double>(n)));
    for (std::size_t k = 0; k < n_noisy && k < n; ++k) label[order[k]] = !label[order[k]];

    for (std::size_t i = 0; i < n; ++i) {
      const std::string tag = numbered("loc", i + 1, 3);
      out_.trends.push_back(local[i] ? local_trend(tag, random_day_time()) : global_trend(tag, random_day_time()));
      out_.truth.hashtags[tag] = {std::nullopt, static_cast<bool>(label[i])};
    }
  }

  void finish() {
    std::sort(pending_.begin(), pending_.end(), [](const PendingTweet& a, const PendingTweet& b) {
      return a.tweet.created_at != b.tweet.created_at ? a.tweet.created_at < b.tweet.created_at : a.seq < b.seq;
    });
    out_.tweets.reserve(pending_.size());
    for (auto& p : pending_) {
      p.tweet.id = numbered("t", out_.tweets.size() + 1, 7);
      out_.tweets.push_back(std::move(p.tweet));
    }
    std::sort(out_.users.begin(), out_.users.end(),
              [](const UserProfile& a, const UserProfile& b) { return a.id < b.id; });
  }

  const SynthConfig& cfg_;
  Rng rng_;
  LabelledCorpus out_;
  std::vector<std::string> manipulators_, organic_, authors_;
  std::vector<PendingTweet> pending_;
};

}  // namespace synth

/// Deterministic in (config, seed): the same config always yields the same corpus.
inline LabelledCorpus generate(const SynthConfig& config) {
  config.validate();
  return synth::Generator(config).run();
}

/// Writes tweets.jsonl, users.jsonl, trends.jsonl and truth.json into `dir`.
inline void write_corpus(const LabelledCorpus& corpus, const std::filesystem::path& dir) {
  io::write_file_atomic(dir / "tweets.jsonl", to_jsonl(corpus.tweets));
  io::write_file_atomic(dir / "users.jsonl", to_jsonl(corpus.users));
  io::write_file_atomic(dir / "trends.jsonl", to_jsonl(corpus.trends));
  io::write_file_atomic(dir / "truth.json", corpus.truth.to_json().dump(2) + "\n");
}

}  // namespace manipify
