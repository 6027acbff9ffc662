#pragma once

#include <stdexcept>
#include <string>

namespace hvd {

/// Base of all library errors. `kind()` drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  enum class Kind { kIo, kData, kValidation, kUsage };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Unreadable/unwritable file.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(Kind::kIo, what) {}
};

/// Malformed or inconsistent input records.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(Kind::kData, what) {}
};

/// A loaded resource violates one of its invariants (e.g. dictionary shape).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(Kind::kValidation, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(Kind::kUsage, what) {}
};

}  // namespace hvd
