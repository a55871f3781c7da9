#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "manipify/error.hpp"
#include "manipify/sparse.hpp"
#include "manipify/unicode.hpp"

namespace manipify {

/// Cleans tweet text for lexical features: drops URLs (http://, https://, www.),
/// hashtags and @mentions, turns every remaining character that is not a
/// letter, digit or combining mark into a space, lowercases, NFC-normalizes and
/// collapses runs of whitespace.
inline std::string preprocess(std::string_view text) {
  using unicode::is_word;
  const icu::UnicodeString in = unicode::nfc(unicode::from_utf8(text));
  const int32_t n = in.length();

  auto starts_with_ci = [&](int32_t pos, std::u16string_view prefix) {
    if (pos + static_cast<int32_t>(prefix.size()) > n) return false;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      char16_t c = in.charAt(pos + static_cast<int32_t>(k));
      if (c >= u'A' && c <= u'Z') c = static_cast<char16_t>(c - u'A' + u'a');
      if (c != prefix[k]) return false;
    }
    return true;
  };

  icu::UnicodeString out;
  bool pending_space = false;
  auto emit = [&](UChar32 c) {
    if (pending_space && out.length() > 0) out.append(static_cast<UChar>(u' '));
    pending_space = false;
    out.append(c);
  };

  int32_t i = 0;
  bool after_alnum = false;
  while (i < n) {
    if (!after_alnum && (starts_with_ci(i, u"http://") || starts_with_ci(i, u"https://") || starts_with_ci(i, u"www."))) {
      while (i < n && !unicode::is_space(in.char32At(i))) i = in.moveIndex32(i, 1);
      pending_space = true;
      continue;
    }
    const UChar32 c = in.char32At(i);
    const int32_t next = in.moveIndex32(i, 1);
    if ((c == U'#' || c == U'@') && next < n && is_word(in.char32At(next))) {
      i = next;
      while (i < n && is_word(in.char32At(i))) i = in.moveIndex32(i, 1);
      pending_space = true;
      continue;
    }
    after_alnum = unicode::is_alnum(c);
    if (after_alnum) {
      emit(c);
    } else {
      pending_space = true;
    }
    i = next;
  }
  out.toLower(icu::Locale::getRoot());
  return unicode::to_utf8(unicode::nfc(out));
}

/// Whitespace tokenization. Output tokens are nonempty and contain no whitespace.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < text.size()) {
    while (i < text.size() && is_ws(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ws(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

/// All contiguous n-grams of lengths low..high, ordered by (length, position),
/// tokens joined by a single space.
inline std::vector<std::string> ngrams(const std::vector<std::string>& tokens, std::size_t low, std::size_t high) {
  if (low < 1 || low > high) throw Error(Errc::InvalidArgument, "ngram_range", std::nullopt, "need 1 <= low <= high");
  std::vector<std::string> out;
  for (std::size_t w = low; w <= high && w <= tokens.size(); ++w) {
    for (std::size_t p = 0; p + w <= tokens.size(); ++p) {
      std::string g = tokens[p];
      for (std::size_t k = 1; k < w; ++k) {
        g += ' ';
        g += tokens[p + k];
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

/// TF-IDF document representation.
using DocVector = SparseVector;

/// TF-IDF over word n-grams. Documents are expected to be preprocessed; the
/// vectorizer only splits on whitespace. idf uses the smoothed form
/// ln((1 + N) / (1 + df)) + 1, term weights are raw counts times idf and
/// every vector is L2-normalized.
class TfidfVectorizer {
 public:
  static constexpr int kSchemaVersion = 1;

  TfidfVectorizer() = default;

  static TfidfVectorizer fit(const std::vector<std::string>& docs, std::size_t low = 1, std::size_t high = 3) {
    if (docs.empty()) throw Error(Errc::EmptyCorpus, "docs", std::nullopt, "no documents");
    std::map<std::string, std::int64_t> df;
    for (const auto& doc : docs) {
      auto grams = ngrams(tokenize(doc), low, high);
      std::sort(grams.begin(), grams.end());
      grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
      for (auto& g : grams) ++df[std::move(g)];
    }
    if (df.empty()) throw Error(Errc::EmptyCorpus, "docs", std::nullopt, "no n-grams extracted");

    TfidfVectorizer v;
    v.low_ = low;
    v.high_ = high;
    const double n_docs = static_cast<double>(docs.size());
    v.idf_.reserve(df.size());
    std::uint32_t column = 0;
    for (const auto& [gram, count] : df) {
      v.vocabulary_.emplace(gram, column++);
      v.idf_.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) + 1.0);
    }
    return v;
  }

  DocVector transform(std::string_view doc) const {
    std::unordered_map<std::uint32_t, double> counts;
    for (const auto& g : ngrams(tokenize(doc), low_, high_)) {
      if (auto it = vocabulary_.find(g); it != vocabulary_.end()) counts[it->second] += 1.0;
    }
    DocVector out;
    out.entries.reserve(counts.size());
    for (const auto& [col, tf] : counts) out.entries.emplace_back(col, tf * idf_[col]);
    std::sort(out.entries.begin(), out.entries.end());
    const double norm = out.norm();
    if (norm > 0.0)
      for (auto& [_, w] : out.entries) w /= norm;
    return out;
  }

  std::size_t size() const { return idf_.size(); }
  std::pair<std::size_t, std::size_t> ngram_range() const { return {low_, high_}; }
  const std::vector<double>& idf() const { return idf_; }

  /// N-gram of every column, in column order.
  std::vector<std::string> terms() const {
    std::vector<std::string> out(idf_.size());
    for (const auto& [g, c] : vocabulary_) out[c] = g;
    return out;
  }

  std::optional<std::uint32_t> column(std::string_view gram) const {
    auto it = vocabulary_.find(std::string(gram));
    if (it == vocabulary_.end()) return std::nullopt;
    return it->second;
  }

  double idf(std::string_view gram) const {
    auto c = column(gram);
    return c ? idf_[*c] : 0.0;
  }

  /// {"ngram_range":[low,high],"vocabulary":{gram:index},"idf":[...]}
  nlohmann::json to_json() const {
    nlohmann::json vocab = nlohmann::json::object();
    for (const auto& [g, c] : vocabulary_) vocab[g] = c;
    return {{"ngram_range", {low_, high_}}, {"vocabulary", std::move(vocab)}, {"idf", idf_}};
  }

  static TfidfVectorizer from_json(const nlohmann::json& j) {
    TfidfVectorizer v;
    try {
      const auto& range = j.at("ngram_range");
      v.low_ = range.at(0).get<std::size_t>();
      v.high_ = range.at(1).get<std::size_t>();
      v.idf_ = j.at("idf").get<std::vector<double>>();
      for (const auto& [g, c] : j.at("vocabulary").items()) v.vocabulary_.emplace(g, c.get<std::uint32_t>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::SchemaMismatch, "vectorizer", std::nullopt, e.what());
    }
    if (v.low_ < 1 || v.low_ > v.high_ || v.vocabulary_.size() != v.idf_.size())
      throw Error(Errc::SchemaMismatch, "vectorizer", std::nullopt, "inconsistent vocabulary");
    std::vector<bool> seen(v.idf_.size(), false);
    for (const auto& [_, c] : v.vocabulary_) {
      if (c >= seen.size() || seen[c])
        throw Error(Errc::SchemaMismatch, "vectorizer", std::nullopt, "vocabulary indices are not a bijection");
      seen[c] = true;
    }
    for (double x : v.idf_)
      if (!(x > 0.0)) throw Error(Errc::SchemaMismatch, "vectorizer", std::nullopt, "non-positive idf");
    return v;
  }

 private:
  std::size_t low_ = 1;
  std::size_t high_ = 3;
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
};

}  // namespace manipify
