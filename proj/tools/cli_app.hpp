#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "manipify/manipify.hpp"

namespace manipify::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct RunConfig {
  std::string target_country{kDefaultTargetCountry};
  std::int64_t bin_width_s = 3600;
  double train_fraction = 0.7;
  std::uint64_t seed = 42;
  std::size_t min_hashtag_tweets = kMinHashtagTweets;
  bool csv = false;

  void validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
      throw Error(Errc::InvalidArgument, "train-fraction", std::nullopt, "must lie in (0, 1)");
    if (min_hashtag_tweets < 1) throw Error(Errc::InvalidArgument, "min-hashtag-tweets", 0, "must be at least 1");
    if (bin_width_s <= 0) throw Error(Errc::InvalidArgument, "bin-width", bin_width_s, "must be positive");
  }
};

/// A report destination: the file given by --out, or stdout.
class Sink {
 public:
  Sink(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}

  void write(std::string_view content) const {
    if (path_.empty()) out_ << content;
    else io::write_file_atomic(path_, content);
  }

 private:
  std::ostream& out_;
  std::string path_;
};

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

inline fs::path model_file(const fs::path& p) { return fs::is_directory(p) ? p / "model.json" : p; }

inline nlohmann::json read_json(const fs::path& path) {
  auto j = nlohmann::json::parse(io::read_file(path), nullptr, false);
  if (j.is_discarded()) throw Error(Errc::SchemaMismatch, path.string(), std::nullopt, "invalid JSON");
  return j;
}

/// Rows of a CSV file with a header, as name -> value maps.
inline std::vector<std::map<std::string, std::string>> read_table(const fs::path& path) {
  const auto rows = io::parse_csv(io::read_file(path));
  std::vector<std::map<std::string, std::string>> out;
  if (rows.empty()) return out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw Error(Errc::MalformedRecord, path.string(), static_cast<std::int64_t>(i + 1), "column count differs from header");
    std::map<std::string, std::string> row;
    for (std::size_t c = 0; c < rows[0].size(); ++c) row[rows[0][c]] = rows[i][c];
    out.push_back(std::move(row));
  }
  return out;
}

inline const std::string& column(const std::map<std::string, std::string>& row, const std::string& name,
                                 const fs::path& path) {
  auto it = row.find(name);
  if (it == row.end()) throw Error(Errc::MalformedRecord, path.string(), std::nullopt, "missing column " + name);
  return it->second;
}

/// Per-user flags from truth.json (field "manipulator" or "bot") or from a
/// predictions CSV with user_id and label columns.
inline std::map<std::string, bool> load_user_flags(const fs::path& path, std::string_view field) {
  std::map<std::string, bool> out;
  if (path.extension() == ".json") {
    const auto truth = GroundTruth::load(path);
    for (const auto& [id, t] : truth.users) out[id] = field == "bot" ? t.bot : t.manipulator;
    return out;
  }
  for (const auto& row : read_table(path)) out[column(row, "user_id", path)] = column(row, "label", path) == "1";
  return out;
}

inline std::string format_probability(double p) { return io::format_double(p); }

class App {
 public:
  App(std::ostream& out, std::ostream& err) : out_(out), err_(err) { build(); }

  int run(std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    try {
      app_.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
      out_ << app_.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app_.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::CallForVersion&) {
      out_ << version_string() << "\n";
      return 0;
    } catch (const CLI::ParseError& e) {
      err_ << "usage error: " << e.what() << "\n\n" << usage_for_error();
      return 2;
    }
    try {
      cfg_.validate();
      action_();
      return 0;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      err_ << "error: IoError: " << e.what() << "\n";
      return 1;
    }
  }

  static std::string version_string() {
    return std::string("manipify ") + kVersion + " (schema_version " + std::to_string(kSchemaVersion) + ")";
  }

 private:
  std::string usage_for_error() {
    for (auto* sub : app_.get_subcommands())
      for (auto* leaf : sub->get_subcommands()) return leaf->help();
    for (auto* sub : app_.get_subcommands()) return sub->help();
    return app_.help();
  }

  CLI::App* command(CLI::App* parent, const std::string& name, const std::string& about, std::function<void()> fn) {
    auto* sub = parent->add_subcommand(name, about);
    sub->fallthrough();
    sub->callback([this, fn = std::move(fn)] { action_ = fn; });
    return sub;
  }

  CLI::App* group(const std::string& name, const std::string& about) {
    auto* sub = app_.add_subcommand(name, about);
    sub->fallthrough();
    sub->require_subcommand(1);
    return sub;
  }

  void add_corpus(CLI::App* sub) {
    sub->add_option("--corpus", corpus_, "corpus directory with tweets.jsonl, users.jsonl, trends.jsonl")
        ->required();
  }

  void add_out(CLI::App* sub, bool required, const std::string& what = "output file (default stdout)") {
    auto* opt = sub->add_option("--out", out_path_, what);
    if (required) opt->required();
  }

  void build() {
    app_.description("Trend manipulation, bot and hashtag analysis over tweet corpora.");
    app_.name("manipify");
    app_.set_version_flag("--version", version_string());
    app_.set_config("--config", "", "key=value file with default flag values; flags given on the command line win");
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--seed", cfg_.seed, "random seed for splits and synthesis")->capture_default_str();
    app_.add_option("--train-fraction", cfg_.train_fraction, "share of samples used for training")
        ->capture_default_str();
    app_.add_option("--target-country", cfg_.target_country, "country whose trends are local")->capture_default_str();
    app_.add_option("--bin-width", cfg_.bin_width_s, "time-series bin width in seconds")->capture_default_str();
    app_.add_option("--min-hashtag-tweets", cfg_.min_hashtag_tweets, "minimum tweets to classify a hashtag")
        ->capture_default_str();
    app_.add_flag("--csv", cfg_.csv, "write tabular reports as CSV instead of JSON");

    build_synth();
    build_ingest();
    build_features();
    build_train();
    build_classify();
    build_analyze();
    build_evaluate();
  }

  void build_synth() {
    auto* sub = command(&app_, "synth", "generate a labelled synthetic corpus", [this] { do_synth(); });
    sub->add_option("--out", out_path_, "output directory")->required();
    sub->add_option("--n-manipulators", synth_.n_manipulators)->capture_default_str();
    sub->add_option("--n-organic", synth_.n_organic)->capture_default_str();
    sub->add_option("--n-bots", synth_.n_bots)->capture_default_str();
    sub->add_option("--n-humans", synth_.n_humans)->capture_default_str();
    sub->add_option("--n-hashtags-per-category", synth_.n_hashtags_per_category)->capture_default_str();
    sub->add_option("--n-other-hashtags", synth_.n_other_hashtags)->capture_default_str();
    sub->add_option("--tweets-per-hashtag", synth_.tweets_per_hashtag)->capture_default_str();
    sub->add_option("--n-activity-hashtags", synth_.n_activity_hashtags)->capture_default_str();
    sub->add_option("--n-locality-trends", synth_.n_locality_trends)->capture_default_str();
    sub->add_option("--n-audience", synth_.n_audience)->capture_default_str();
    sub->add_option("--local-fraction", synth_.local_fraction)->capture_default_str();
    sub->add_option("--label-noise", synth_.label_noise)->capture_default_str();
    sub->add_option("--urdu-fraction", synth_.urdu_fraction)->capture_default_str();
    sub->add_option("--bilingual-fraction", synth_.bilingual_fraction)->capture_default_str();
    sub->add_option("--stealth-rate", synth_.stealth_rate)->capture_default_str();
  }

  void build_ingest() {
    auto* sub = command(&app_, "ingest-validate", "load and validate a corpus directory", [this] { do_ingest(); });
    add_corpus(sub);
    add_out(sub, false);
  }

  void build_features() {
    auto* g = group("features", "export feature matrices as CSV");
    auto* manip = command(g, "manip", "manipulator features per user and hashtag", [this] { do_features_manip(); });
    add_corpus(manip);
    add_out(manip, false);
    auto* bot = command(g, "bot", "bot features per user", [this] { do_features_bot(); });
    add_corpus(bot);
    add_out(bot, false);
  }

  void build_train() {
    auto* g = group("train", "train a model and report held-out metrics");
    for (const auto& [name, about, fn] : std::vector<std::tuple<std::string, std::string, std::function<void()>>>{
             {"manip", "manipulator logistic regression", [this] { do_train_manip(); }},
             {"bot", "bot logistic regression", [this] { do_train_bot(); }},
             {"hashcat", "English and Urdu hashtag category bundles", [this] { do_train_hashcat(); }},
             {"locality", "local/global decision tree", [this] { do_train_locality(); }}}) {
      auto* sub = command(g, name, about, fn);
      add_corpus(sub);
      sub->add_option("--truth", truth_path_, "ground-truth labels (default CORPUS/truth.json)");
      sub->add_option("--out", out_path_, "model directory")->required();
    }
  }

  void build_classify() {
    auto* g = group("classify", "apply a trained model and write predictions as CSV");
    for (const auto& [name, about, fn] : std::vector<std::tuple<std::string, std::string, std::function<void()>>>{
             {"manip", "one row per user", [this] { do_classify_manip(); }},
             {"bot", "one row per user", [this] { do_classify_bot(); }},
             {"hashcat", "one row per hashtag", [this] { do_classify_hashcat(); }},
             {"locality", "one row per trending hashtag", [this] { do_classify_locality(); }}}) {
      auto* sub = command(g, name, about, fn);
      add_corpus(sub);
      sub->add_option("--model", model_path_, "model directory or file")->required();
      add_out(sub, false);
    }
  }

  void build_analyze() {
    auto* g = group("analyze", "trend analysis reports");
    auto* reach_cmd = command(g, "reach", "unique users plus their followers", [this] { do_reach(); });
    add_corpus(reach_cmd);
    reach_cmd->add_option("--hashtag", hashtags_, "hashtag (repeatable; default every trending hashtag)");
    add_out(reach_cmd, false);

    auto* lang = command(g, "langdist", "tweet language distribution", [this] { do_langdist(); });
    add_corpus(lang);
    lang->add_option("--hashtag", hashtags_, "restrict to these hashtags");
    add_out(lang, false);

    auto* cat = command(g, "catdist", "category shares of hashtags and tweets", [this] { do_catdist(); });
    cat->add_option("--predictions", predictions_path_, "output of classify hashcat")
        ->required();
    add_out(cat, false);

    for (const auto& [name, about, fn] : std::vector<std::tuple<std::string, std::string, std::function<void()>>>{
             {"timeseries", "tweet counts per time bin and user group", [this] { do_timeseries(false); }},
             {"tweets-per-user", "mean tweets per user per bin and partition", [this] { do_timeseries(true); }}}) {
      auto* sub = command(g, name, about, fn);
      add_corpus(sub);
      sub->add_option("--hashtag", hashtags_, "hashtag")->required();
      sub->add_option("--labels", labels_path_, "truth.json or a classify manip/bot CSV");
      sub->add_option("--group-by", group_by_, "manipulator or bot")
          ->check(CLI::IsMember({"manipulator", "bot"}))
          ->capture_default_str();
      sub->add_option("--plot-csv", plot_path_, "also write (bin_start, group, value) rows here");
      add_out(sub, false);
    }

    auto* mix = command(g, "usermix", "bot, human, manipulator and organic shares", [this] { do_usermix(); });
    mix->add_option("--truth", truth_path_, "truth.json supplying both labels");
    mix->add_option("--manip-labels", manip_labels_path_, "classify manip CSV");
    mix->add_option("--bot-labels", bot_labels_path_, "classify bot CSV");
    mix->add_option("--corpus", corpus_, "restrict to users tweeting --hashtag in this corpus");
    mix->add_option("--hashtag", hashtags_, "hashtag whose users are counted");
    add_out(mix, false);

    auto* pairs = command(g, "pairs", "ORIG/RESP hashtag-war timing check", [this] { do_pairs(); });
    add_corpus(pairs);
    pairs->add_option("--pair", pairs_, "ORIG,RESP hashtag pair (repeatable)")->required();
    add_out(pairs, false);
  }

  void build_evaluate() {
    auto* sub = command(&app_, "evaluate", "score predictions against ground truth", [this] { do_evaluate(); });
    sub->add_option("--predictions", predictions_path_, "classify output")->required();
    sub->add_option("--truth", truth_path_, "truth.json")->required();
    sub->add_option("--task", task_, "manip, bot, hashcat or locality")
        ->required()
        ->check(CLI::IsMember({"manip", "bot", "hashcat", "locality"}));
    add_out(sub, false);
  }

  Sink sink() const { return Sink(out_, out_path_); }
  CorpusData load_corpus() const { return CorpusData::load(corpus_); }
  GroundTruth load_truth() const {
    return GroundTruth::load(truth_path_.empty() ? fs::path(corpus_) / "truth.json" : fs::path(truth_path_));
  }

  void do_synth() {
    synth_.seed = cfg_.seed;
    synth_.target_country = cfg_.target_country;
    const auto corpus = generate(synth_);
    write_corpus(corpus, out_path_);
    io::write_file_atomic(fs::path(out_path_) / "synth_config.json", dump(synth_.to_json()));
  }

  void do_ingest() {
    const auto data = load_corpus();
    std::size_t retweets = 0;
    for (const auto& t : data.tweets) retweets += t.is_retweet;
    ojson hashtags = ojson::array();
    for (const auto& tag : data.trend_hashtags()) {
      const auto corpus = data.hashtag_corpus(*find_trend(data.trends, tag, cfg_.target_country));
      hashtags.push_back({{"hashtag", tag},
                          {"selected_tweets", corpus.tweets().size()},
                          {"users", corpus.users().size()},
                          {"language_profile", to_string(language_profile(corpus.tweets()))}});
    }
    sink().write(dump({{"tweets", data.tweets.size()},
                       {"retweets", retweets},
                       {"users", data.users.size()},
                       {"trends", data.trends.size()},
                       {"hashtags", std::move(hashtags)}}));
  }

  void do_features_manip() {
    const auto data = load_corpus();
    sink().write(manip_csv(all_manip_rows(data, cfg_.target_country)));
  }

  void do_features_bot() { sink().write(bot_csv(all_bot_rows(load_corpus()))); }

  ojson split_json(const KeyedDataset& ds, const ml::SplitIndices& split) const {
    auto keys = [&](const std::vector<std::size_t>& idx) {
      std::vector<std::string> out;
      for (std::size_t i : idx) out.push_back(ds.keys[i]);
      std::sort(out.begin(), out.end());
      return out;
    };
    return {{"seed", cfg_.seed}, {"train_fraction", cfg_.train_fraction}, {"train", keys(split.train)},
            {"test", keys(split.test)}};
  }

  void write_model(const nlohmann::json& model, const ojson& metrics, const ojson& split) const {
    const fs::path dir(out_path_);
    io::write_file_atomic(dir / "model.json", model.dump() + "\n");
    io::write_file_atomic(dir / "metrics.json", dump(metrics));
    io::write_file_atomic(dir / "split.json", dump(split));
  }

  void train_logreg_task(const KeyedDataset& ds, const std::vector<std::string>& class_names) {
    auto h = holdout_logreg(ds.data, cfg_.train_fraction, cfg_.seed);
    ojson metrics = h.metrics.to_json(class_names);
    metrics["final_gradient_norm"] = h.model.final_gradient_norm;
    write_model(h.model.to_json(), metrics, split_json(ds, h.split));
  }

  void do_train_manip() {
    const auto data = load_corpus();
    train_logreg_task(manip_dataset(all_manip_rows(data, cfg_.target_country), load_truth()), {"organic", "manipulator"});
  }

  void do_train_bot() {
    const auto data = load_corpus();
    train_logreg_task(bot_dataset(all_bot_rows(data), load_truth()), {"human", "bot"});
  }

  void do_train_locality() {
    const auto data = load_corpus();
    const auto ds = locality_training_set(data, load_truth(), cfg_.target_country);
    auto h = holdout_tree(ds.data, cfg_.train_fraction, cfg_.seed);
    ojson metrics = h.metrics.to_json({"global", "local"});
    metrics["target_country"] = cfg_.target_country;
    write_model(h.model.to_json(), metrics, split_json(ds, h.split));
  }

  void do_train_hashcat() {
    const auto data = load_corpus();
    const auto truth = load_truth();
    ojson metrics = ojson::object();
    for (Language lang : {Language::English, Language::Urdu}) {
      const auto profile = lang == Language::English ? LanguageProfile::EnglishOnly : LanguageProfile::UrduOnly;
      auto hashtags = labelled_hashtags(data, truth, profile, cfg_.target_country);
      std::erase_if(hashtags, [&](const LabelledHashtag& h) {
        return count_language(h.tweets, lang_code(lang)) < cfg_.min_hashtag_tweets;
      });
      auto h = holdout_hashcat(hashtags, lang, cfg_.train_fraction, cfg_.seed, cfg_.min_hashtag_tweets);
      h.bundle.save(fs::path(out_path_) / std::string(lang_code(lang)));
      std::vector<std::string> names;
      for (Category c : kAllCategories) names.emplace_back(to_string(c));
      ojson m = h.metrics.to_json(names);
      m["hashtags"] = hashtags.size();
      std::vector<std::string> test;
      for (std::size_t i : h.split.test) test.push_back(hashtags[i].hashtag);
      std::sort(test.begin(), test.end());
      m["test_hashtags"] = test;
      metrics[std::string(lang_code(lang))] = std::move(m);
    }
    io::write_file_atomic(fs::path(out_path_) / "metrics.json", dump(metrics));
  }

  static std::string probability_csv(const std::map<std::string, double>& probs, const std::string& key) {
    std::string out = io::csv_row({key, "probability", "label"});
    for (const auto& [id, p] : probs) out += io::csv_row({id, format_probability(p), p >= 0.5 ? "1" : "0"});
    return out;
  }

  void do_classify_manip() {
    const auto model = ml::LogRegModel::from_json(read_json(model_file(model_path_)));
    const auto data = load_corpus();
    sink().write(probability_csv(manip_user_probabilities(model, all_manip_rows(data, cfg_.target_country)), "user_id"));
  }

  void do_classify_bot() {
    const auto model = ml::LogRegModel::from_json(read_json(model_file(model_path_)));
    std::map<std::string, double> probs;
    for (const auto& r : all_bot_rows(load_corpus())) probs[r.user_id] = model.predict_proba(r.features.values());
    sink().write(probability_csv(probs, "user_id"));
  }

  void do_classify_locality() {
    const auto model = ml::TreeModel::from_json(read_json(model_file(model_path_)));
    const auto data = load_corpus();
    std::string out = io::csv_row({"hashtag", "label"});
    for (const auto& tag : data.trend_hashtags()) {
      const auto f = locality_features(*find_trend(data.trends, tag, cfg_.target_country), cfg_.target_country);
      out += io::csv_row({tag, classify_local(model, f) ? "1" : "0"});
    }
    sink().write(out);
  }

  void do_classify_hashcat() {
    const fs::path dir(model_path_);
    const auto en = CategoryModelBundle::load(dir / "en");
    const auto ur = CategoryModelBundle::load(dir / "ur");
    const auto data = load_corpus();

    std::vector<std::string> header = {"hashtag", "status", "language_used", "label", "probability", "tweets"};
    for (Category c : kTopicalCategories) header.push_back("p_" + category_prefix_name(c));
    std::string out = io::csv_row(header);

    std::set<std::string> tags;
    for (const auto& [tag, _] : data.by_hashtag) tags.insert(tag);
    for (const auto& tag : tags) {
      const auto tweets = data.selected_tweets(tag, cfg_.target_country);
      std::vector<std::string> row = {tag};
      std::optional<HashtagPrediction> p;
      std::string status = "ok";
      try {
        switch (language_profile(tweets)) {
          case LanguageProfile::EnglishOnly: p = classify_monolingual(en, tweets, cfg_.min_hashtag_tweets); break;
          case LanguageProfile::UrduOnly: p = classify_monolingual(ur, tweets, cfg_.min_hashtag_tweets); break;
          case LanguageProfile::Bilingual: p = classify_bilingual(en, ur, tweets, cfg_.min_hashtag_tweets); break;
          case LanguageProfile::Neither: status = "unsupported_language"; break;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::InsufficientTweets) throw;
        status = "insufficient_tweets";
      }
      row.push_back(status);
      if (p) {
        row.emplace_back(to_string(p->language_used));
        row.emplace_back(to_string(p->label));
        row.push_back(format_probability(p->max_probability()));
      } else {
        row.insert(row.end(), {"", "", ""});
      }
      row.push_back(std::to_string(tweets.size()));
      for (std::size_t c = 0; c < kTopicalCategories.size(); ++c)
        row.push_back(p ? format_probability(p->probabilities[c]) : "");
      out += io::csv_row(row);
    }
    sink().write(out);
  }

  static std::string category_prefix_name(Category c) {
    std::string s(to_string(c));
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return s;
  }

  std::vector<std::string> report_hashtags(const CorpusData& data) const {
    return hashtags_.empty() ? data.trend_hashtags() : hashtags_;
  }

  void do_reach() {
    const auto data = load_corpus();
    std::vector<ReachReport> reports;
    for (const auto& tag : report_hashtags(data)) {
      auto trend = find_trend(data.trends, tag, cfg_.target_country);
      if (!trend) throw Error(Errc::InvalidArgument, tag, std::nullopt, "no trend record");
      reports.push_back(reach(data.hashtag_corpus(*trend)));
    }
    if (cfg_.csv) {
      std::string out = io::csv_row({"hashtag", "n_unique_users", "total_followers", "reach"});
      for (const auto& r : reports) out += r.to_csv().substr(r.to_csv().find('\n') + 1);
      sink().write(out);
    } else if (reports.size() == 1 && !hashtags_.empty()) {
      sink().write(dump(reports.front().to_json()));
    } else {
      ojson arr = ojson::array();
      for (const auto& r : reports) arr.push_back(r.to_json());
      sink().write(dump(arr));
    }
  }

  void do_langdist() {
    const auto data = load_corpus();
    std::vector<Tweet> tweets;
    if (hashtags_.empty()) {
      tweets = original_only(data.tweets);
    } else {
      for (const auto& tag : hashtags_) {
        auto sel = data.selected_tweets(tag, cfg_.target_country);
        tweets.insert(tweets.end(), sel.begin(), sel.end());
      }
    }
    const auto d = language_distribution(tweets);
    sink().write(cfg_.csv ? d.to_csv() : dump(d.to_json()));
  }

  void do_catdist() {
    std::vector<CategorizedHashtag> preds;
    const fs::path path(predictions_path_);
    for (const auto& row : read_table(path)) {
      if (column(row, "status", path) != "ok") continue;
      const auto cat = parse_category(column(row, "label", path));
      if (!cat) throw Error(Errc::MalformedRecord, path.string(), std::nullopt, "unknown category");
      preds.push_back({column(row, "hashtag", path), *cat, std::stoll(column(row, "tweets", path))});
    }
    const auto d = category_distribution(preds);
    sink().write(cfg_.csv ? d.to_csv() : dump(d.to_json()));
  }

  GroupOf user_grouping() const {
    const bool bot = group_by_ == "bot";
    const std::string yes = bot ? "bot" : "manipulator";
    const std::string no = bot ? "human" : "organic";
    if (labels_path_.empty()) return [](const Tweet&) { return std::string("all"); };
    auto flags = std::make_shared<std::map<std::string, bool>>(load_user_flags(labels_path_, group_by_));
    return [flags, yes, no](const Tweet& t) {
      auto it = flags->find(t.user_id);
      if (it == flags->end()) return std::string("unlabelled");
      return it->second ? yes : no;
    };
  }

  void do_timeseries(bool per_user) {
    const auto data = load_corpus();
    std::vector<Tweet> tweets;
    for (const auto& tag : hashtags_) {
      auto sel = data.selected_tweets(tag, cfg_.target_country);
      tweets.insert(tweets.end(), sel.begin(), sel.end());
    }
    const auto grouping = user_grouping();
    const Seconds width(cfg_.bin_width_s);
    auto emit = [&](const auto& ts) {
      sink().write(cfg_.csv ? ts.to_csv() : dump(ts.to_json()));
      if (!plot_path_.empty()) io::write_file_atomic(plot_path_, ts.to_plot_csv());
    };
    if (per_user) emit(tweets_per_user_series(tweets, width, grouping));
    else emit(time_series(tweets, width, grouping));
  }

  void do_usermix() {
    std::map<std::string, UserLabel> labels;
    if (!truth_path_.empty()) {
      for (const auto& [id, t] : GroundTruth::load(truth_path_).users) labels[id] = {t.bot, t.manipulator};
    } else {
      if (manip_labels_path_.empty() || bot_labels_path_.empty())
        throw Error(Errc::InvalidArgument, "usermix", std::nullopt, "give --truth or both --manip-labels and --bot-labels");
      const auto manip = load_user_flags(manip_labels_path_, "manipulator");
      const auto bot = load_user_flags(bot_labels_path_, "bot");
      for (const auto& [id, m] : manip) {
        auto it = bot.find(id);
        if (it != bot.end()) labels[id] = {it->second, m};
      }
    }
    if (!corpus_.empty() && !hashtags_.empty()) {
      const auto data = load_corpus();
      std::set<std::string> users;
      for (const auto& tag : hashtags_)
        for (const auto& t : data.selected_tweets(tag, cfg_.target_country)) users.insert(t.user_id);
      std::erase_if(labels, [&](const auto& kv) { return !users.count(kv.first); });
    }
    const auto r = user_mix(labels);
    sink().write(cfg_.csv ? r.to_csv() : dump(r.to_json()));
  }

  void do_pairs() {
    const auto data = load_corpus();
    std::vector<PairReport> reports;
    for (const auto& pair : pairs_) {
      const auto comma = pair.find(',');
      if (comma == std::string::npos)
        throw Error(Errc::InvalidArgument, pair, std::nullopt, "expected ORIG,RESP");
      const std::string orig = unicode::lowercase(pair.substr(0, comma));
      const std::string resp = unicode::lowercase(pair.substr(comma + 1));
      const auto trend = find_trend(data.trends, orig, cfg_.target_country);
      if (!trend) throw Error(Errc::InvalidArgument, orig, std::nullopt, "no trend record");
      reports.push_back(response_pair_check(*trend, original_only(data.tweets_of(resp)), resp));
    }
    if (cfg_.csv) {
      std::string out = PairReport::csv_header();
      for (const auto& r : reports) out += r.csv_line();
      sink().write(out);
    } else {
      ojson arr = ojson::array();
      for (const auto& r : reports) arr.push_back(r.to_json());
      sink().write(dump(arr));
    }
  }

  void do_evaluate() {
    const auto truth = GroundTruth::load(truth_path_);
    const fs::path path(predictions_path_);
    std::vector<int> pred, gold;
    std::vector<std::string> names;
    int n_classes = 2;
    for (const auto& row : read_table(path)) {
      if (task_ == "manip" || task_ == "bot") {
        auto it = truth.users.find(column(row, "user_id", path));
        if (it == truth.users.end()) continue;
        pred.push_back(column(row, "label", path) == "1");
        gold.push_back(task_ == "bot" ? it->second.bot : it->second.manipulator);
      } else if (task_ == "locality") {
        auto it = truth.hashtags.find(column(row, "hashtag", path));
        if (it == truth.hashtags.end() || !it->second.local) continue;
        pred.push_back(column(row, "label", path) == "1");
        gold.push_back(*it->second.local);
      } else {
        auto it = truth.hashtags.find(column(row, "hashtag", path));
        if (it == truth.hashtags.end() || !it->second.category || column(row, "status", path) != "ok") continue;
        const auto cat = parse_category(column(row, "label", path));
        if (!cat) throw Error(Errc::MalformedRecord, path.string(), std::nullopt, "unknown category");
        pred.push_back(static_cast<int>(index_of(*cat)));
        gold.push_back(static_cast<int>(index_of(*it->second.category)));
      }
    }
    if (task_ == "manip") names = {"organic", "manipulator"};
    else if (task_ == "bot") names = {"human", "bot"};
    else if (task_ == "locality") names = {"global", "local"};
    else {
      n_classes = static_cast<int>(kAllCategories.size());
      for (Category c : kAllCategories) names.emplace_back(to_string(c));
    }
    const auto m = ml::evaluate(pred, gold, n_classes);
    ojson j = m.to_json(names);
    j["task"] = task_;
    j["samples"] = pred.size();
    sink().write(dump(j));
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_;
  RunConfig cfg_;
  SynthConfig synth_;
  std::function<void()> action_;

  std::string corpus_, out_path_, truth_path_, model_path_, predictions_path_, labels_path_, plot_path_;
  std::string manip_labels_path_, bot_labels_path_, task_;
  std::string group_by_ = "manipulator";
  std::vector<std::string> hashtags_, pairs_;
};

/// Runs one command line (without the program name). Returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  App app(out, err);
  return app.run(args);
}

}  // namespace manipify::cli
