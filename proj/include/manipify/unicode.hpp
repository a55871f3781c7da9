#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>

namespace manipify::unicode {

inline icu::UnicodeString from_utf8(std::string_view s) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

inline std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

inline bool is_mark(UChar32 c) {
  const int8_t type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK || type == U_ENCLOSING_MARK;
}

/// Letters (any script), digits, and combining marks.
inline bool is_alnum(UChar32 c) { return u_isalpha(c) || u_isdigit(c) || is_mark(c); }

/// Characters that may continue a hashtag or mention.
inline bool is_word(UChar32 c) { return is_alnum(c) || c == U'_'; }

inline bool is_space(UChar32 c) { return u_isUWhiteSpace(c); }

inline icu::UnicodeString nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return s;
  icu::UnicodeString out = norm->normalize(s, status);
  return U_FAILURE(status) ? s : out;
}

inline std::string lowercase(std::string_view s) {
  icu::UnicodeString u = from_utf8(s);
  u.toLower(icu::Locale::getRoot());
  return to_utf8(u);
}

/// Hashtags in `text`: '#' followed by at least one word character, lowercased,
/// without the '#', in order of appearance (duplicates kept once).
inline std::vector<std::string> extract_hashtags(std::string_view text) {
  const icu::UnicodeString u = from_utf8(text);
  std::vector<std::string> tags;
  int32_t i = 0;
  const int32_t n = u.length();
  while (i < n) {
    const UChar32 c = u.char32At(i);
    const int32_t next = u.moveIndex32(i, 1);
    if (c == U'#') {
      int32_t j = next;
      while (j < n && is_word(u.char32At(j))) j = u.moveIndex32(j, 1);
      if (j > next) {
        icu::UnicodeString tag = u.tempSubStringBetween(next, j);
        tag.toLower(icu::Locale::getRoot());
        std::string t = to_utf8(nfc(tag));
        bool seen = false;
        for (const auto& existing : tags) seen = seen || existing == t;
        if (!seen) tags.push_back(std::move(t));
        i = j;
        continue;
      }
    }
    i = next;
  }
  return tags;
}

}  // namespace manipify::unicode
