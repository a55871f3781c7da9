#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "support/analyzer_fixture.hpp"
#include "support/properties.hpp"

using namespace manipify;
using namespace manipify::testing;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double time_limit_s;  // 0 = none
  std::function<Verdict()> check;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

SynthConfig empty_config(std::uint64_t seed = 42) {
  SynthConfig c;
  c.seed = seed;
  c.n_manipulators = 0;
  c.n_organic = 0;
  c.n_bots = 0;
  c.n_humans = 0;
  c.n_hashtags_per_category = 0;
  c.n_other_hashtags = 0;
  c.n_locality_trends = 0;
  return c;
}

Verdict sim_score_oracle() {
  Rng rng(1);
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto corpus = random_token_corpus(rng, 5, 8, 3);
    const auto [num, den] = brute_sim_score(corpus);
    if (std::abs(sim_score(corpus) - static_cast<double>(num) / static_cast<double>(den)) >= 1e-12) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " of 1000 corpora differ from the oracle"};
}

Verdict gradient_check() {
  Rng rng(2);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, gradient_check_error(rng));
  return {worst < 1e-5, fmt("max relative error %.3g over 100 draws", worst)};
}

Verdict manipulator_detection() {
  auto c = empty_config();
  c.n_manipulators = 510;
  c.n_organic = 500;
  const auto corpus = generate(c);
  const auto data = CorpusData::from(corpus.tweets, corpus.users, corpus.trends);
  const auto ds = manip_dataset(all_manip_rows(data, c.target_country), corpus.truth);
  const auto h = holdout_logreg(ds.data, 0.7, 42);
  return {h.metrics.accuracy >= 0.90, fmt("held-out accuracy %.4f", h.metrics.accuracy) + " on " +
                                          std::to_string(h.split.test.size()) + " rows"};
}

Verdict bot_detection() {
  auto c = empty_config();
  c.n_bots = 1000;
  c.n_humans = 1000;
  const auto corpus = generate(c);
  const auto data = CorpusData::from(corpus.tweets, corpus.users, corpus.trends);
  const auto ds = bot_dataset(all_bot_rows(data), corpus.truth);
  const auto h = holdout_logreg(ds.data, 0.7, 42);
  return {h.metrics.accuracy >= 0.85, fmt("held-out accuracy %.4f", h.metrics.accuracy) + " on " +
                                          std::to_string(h.split.test.size()) + " profiles"};
}

double locality_accuracy(std::uint64_t seed) {
  auto c = empty_config(seed);
  c.n_locality_trends = 193;
  const auto corpus = generate(c);
  const auto data = CorpusData::from(corpus.tweets, corpus.users, corpus.trends);
  const auto ds = locality_training_set(data, corpus.truth, c.target_country);
  return holdout_tree(ds.data, 0.7, seed).metrics.accuracy;
}

Verdict locality() {
  const auto tree = ml::train_tree(sample_locality_dataset());
  std::size_t table_errors = 0;
  for (const auto& r : sample_locality_rows())
    if (classify_local(tree, locality_features(trend_of(r), kDefaultTargetCountry)) != r.local) ++table_errors;
  double sum = 0.0;
  const int n_seeds = 50;
  for (int s = 1; s <= n_seeds; ++s) sum += locality_accuracy(static_cast<std::uint64_t>(s));
  const double mean = sum / n_seeds;
  const double seed42 = locality_accuracy(42);
  return {table_errors == 0 && mean >= 0.95,
          std::to_string(table_errors) + " table rows wrong; " + fmt("mean held-out accuracy %.4f", mean) +
              " over seeds 1..50" + fmt(" (seed 42: %.4f)", seed42)};
}

Verdict hashtag_classification() {
  auto c = empty_config();
  c.n_hashtags_per_category = 60;
  c.urdu_fraction = 0.0;
  c.bilingual_fraction = 0.0;
  const auto corpus = generate(c);
  const auto data = CorpusData::from(corpus.tweets, corpus.users, corpus.trends);
  auto hashtags = labelled_hashtags(data, corpus.truth, LanguageProfile::EnglishOnly, c.target_country);
  std::erase_if(hashtags, [](const LabelledHashtag& h) { return count_language(h.tweets, "en") < kMinHashtagTweets; });
  const auto h = holdout_hashcat(hashtags, Language::English, 0.7, 42);
  const double f1 = h.metrics.macro_f1();

  const auto oov = classify_monolingual(h.bundle, tweets_in("en", 120, "qzxv wjkq plmzz", "unseen"));
  bool insufficient = false;
  try {
    classify_monolingual(h.bundle, tweets_in("en", 99));
  } catch (const Error& e) {
    insufficient = e.code() == Errc::InsufficientTweets && e.number() == 99;
  }
  return {f1 >= 0.9 && oov.label == Category::Other && insufficient,
          std::to_string(hashtags.size()) + " hashtags; " + fmt("held-out macro-F1 %.4f", f1) +
              "; out-of-vocabulary hashtag -> " + std::string(to_string(oov.label)) +
              "; 99 tweets -> " + (insufficient ? "InsufficientTweets" : "no error")};
}

Verdict analyzer_exactness() {
  const auto bad = analyzer_fixture_mismatches();
  std::string detail = bad.empty() ? "all fixture values match" : std::to_string(bad.size()) + " mismatches:";
  for (const auto& b : bad) detail += " " + b + ";";
  return {bad.empty(), detail};
}

std::map<std::string, std::string> pipeline_run(const std::filesystem::path& root) {
  auto run = [&](std::vector<std::string> args) {
    std::ostringstream out, err;
    if (cli::run(args, out, err) != 0) throw std::runtime_error("command failed: " + err.str());
  };
  const auto corpus = (root / "corpus").string();
  const auto path = [&](const char* name) { return (root / name).string(); };
  run({"synth", "--seed", "42", "--out", corpus});
  for (const char* task : {"manip", "bot", "locality", "hashcat"}) {
    const std::string model = path((std::string("model-") + task).c_str());
    run({"train", task, "--corpus", corpus, "--out", model});
    run({"classify", task, "--corpus", corpus, "--model", model, "--out",
         path((std::string("pred-") + task + ".csv").c_str())});
  }
  run({"analyze", "reach", "--corpus", corpus, "--out", path("reach.json")});
  run({"analyze", "langdist", "--corpus", corpus, "--out", path("langdist.json")});
  run({"analyze", "catdist", "--predictions", path("pred-hashcat.csv"), "--out", path("catdist.json")});
  run({"analyze", "usermix", "--truth", (root / "corpus" / "truth.json").string(), "--out", path("usermix.json")});
  return snapshot(root);
}

Verdict determinism() {
  TempDir a("accept-a"), b("accept-b");
  const auto first = pipeline_run(a.path());
  const auto second = pipeline_run(b.path());
  std::size_t differing = 0;
  for (const auto& [name, bytes] : first) {
    auto it = second.find(name);
    if (it == second.end() || it->second != bytes) ++differing;
  }
  if (first.size() != second.size()) ++differing;
  return {differing == 0 && !first.empty(),
          std::to_string(first.size()) + " files compared, " + std::to_string(differing) + " differ"};
}

Verdict invariant_suite() {
  const auto props = all_properties();
  std::size_t failing = 0;
  std::string detail;
  for (const auto& p : props) {
    const auto outcome = run_property(p, kPropertyCases);
    if (outcome.failures != 0) {
      ++failing;
      detail += " " + outcome.name + " (" + outcome.first_failure + ");";
    }
  }
  return {failing == 0, std::to_string(props.size()) + " properties x " + std::to_string(kPropertyCases) +
                            " cases, " + std::to_string(failing) + " failing" + detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "sim_score equals the brute-force n-gram oracle", 10, sim_score_oracle},
      {2, "logistic regression gradient check", 5, gradient_check},
      {3, "manipulator detection on synthetic data (510/500), accuracy >= 0.90", 60, manipulator_detection},
      {4, "bot detection on synthetic data (1000/1000), accuracy >= 0.85", 30, bot_detection},
      {5, "locality: six table rows exact, 193-trend accuracy >= 0.95", 10, locality},
      {6, "hashtag classification macro-F1 >= 0.9, Other fallback, InsufficientTweets", 60, hashtag_classification},
      {7, "analyzer values match hand-computed fixtures", 0, analyzer_exactness},
      {8, "two seeded pipeline runs are byte-identical", 0, determinism},
      {9, "invariant suite at 1000 cases per property", 0, invariant_suite},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s == 0 || seconds < c.time_limit_s;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::string limit = c.time_limit_s == 0 ? "" : fmt(" limit %.0f s", c.time_limit_s);
    std::printf("%s criterion %d: %s | %s | %.2f s%s\n", pass ? "PASS" : "FAIL", c.number, c.title.c_str(),
                v.detail.c_str(), seconds, limit.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
