#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace noisecrypt {

/// Coarse failure class. The CLI maps each one to an exit code and to the
/// `error:<category>:` stderr prefix.
enum class ErrorCategory {
  parameter,   // value outside its mathematical domain
  validation,  // structurally inconsistent inputs (dimensions, divisibility)
  format,      // malformed PGM / S-box file
  key_file,    // malformed or unsupported key file
  io,          // filesystem failure
  integrity,   // decrypted plaintext does not match the stored hash prefix
  undefined,   // statistic undefined for this input (zero variance)
};

inline constexpr std::string_view to_string(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::parameter: return "parameter";
    case ErrorCategory::validation: return "validation";
    case ErrorCategory::format: return "format";
    case ErrorCategory::key_file: return "keyfile";
    case ErrorCategory::io: return "io";
    case ErrorCategory::integrity: return "integrity";
    case ErrorCategory::undefined: return "undefined";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorCategory::parameter, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorCategory::validation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what) : Error(ErrorCategory::integrity, what) {}
};

class UndefinedCorrelationError : public Error {
 public:
  explicit UndefinedCorrelationError(const std::string& what)
      : Error(ErrorCategory::undefined, what) {}
};

enum class PgmErrorKind { bad_magic, bad_header, oversized, unsupported_depth, truncated, trailing_data };

class PgmError : public Error {
 public:
  PgmError(PgmErrorKind kind, const std::string& what)
      : Error(ErrorCategory::format, what), kind_(kind) {}

  PgmErrorKind kind() const noexcept { return kind_; }

 private:
  PgmErrorKind kind_;
};

class SBoxFileError : public Error {
 public:
  explicit SBoxFileError(const std::string& what) : Error(ErrorCategory::format, what) {}
};

enum class KeyFileErrorKind { malformed, version_mismatch };

class KeyFileError : public Error {
 public:
  KeyFileError(KeyFileErrorKind kind, const std::string& what)
      : Error(ErrorCategory::key_file, what), kind_(kind) {}

  KeyFileErrorKind kind() const noexcept { return kind_; }

 private:
  KeyFileErrorKind kind_;
};

}  // namespace noisecrypt
