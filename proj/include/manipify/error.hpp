#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace manipify {

enum class Errc {
  MalformedRecord,
  InvalidTimestamp,
  MissingProfile,
  IntegrityViolation,
  EmptyCorpus,
  EmptyInput,
  DegenerateData,
  DimensionMismatch,
  LengthMismatch,
  TooFewSamples,
  InsufficientClassData,
  InsufficientTweets,
  MissingLanguageSlice,
  SchemaMismatch,
  InvalidArgument,
  IoError,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::InvalidTimestamp: return "InvalidTimestamp";
    case Errc::MissingProfile: return "MissingProfile";
    case Errc::IntegrityViolation: return "IntegrityViolation";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DegenerateData: return "DegenerateData";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::InsufficientClassData: return "InsufficientClassData";
    case Errc::InsufficientTweets: return "InsufficientTweets";
    case Errc::MissingLanguageSlice: return "MissingLanguageSlice";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `what()` starts with the error name so
/// diagnostics printed by the CLI carry it verbatim. `number()` holds the
/// numeric payload where one exists (line number, tweet count) and `subject()`
/// the textual one (user id, category, field name).
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string subject, std::optional<std::int64_t> number = std::nullopt,
        std::string_view detail = {})
      : std::runtime_error(format(code, subject, number, detail)),
        code_(code),
        subject_(std::move(subject)),
        number_(number) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }
  const std::string& subject() const noexcept { return subject_; }
  std::optional<std::int64_t> number() const noexcept { return number_; }

 private:
  static std::string format(Errc code, const std::string& subject,
                            std::optional<std::int64_t> number, std::string_view detail) {
    std::string msg(errc_name(code));
    msg += '(';
    if (number) {
      msg += std::to_string(*number);
      if (!subject.empty()) msg += ", ";
    }
    msg += subject;
    msg += ')';
    if (!detail.empty()) {
      msg += ": ";
      msg += detail;
    }
    return msg;
  }

  Errc code_;
  std::string subject_;
  std::optional<std::int64_t> number_;
};

}  // namespace manipify
