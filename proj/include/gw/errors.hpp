#pragma once

#include <stdexcept>
#include <string>

namespace gw {

/// Base class of every error raised by the library. `kind()` is a short
/// machine-readable tag used by the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Bad input: violated precondition, malformed data, unparsable file.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error("range", what) {}
};

class NonUnitError : public Error {
 public:
  explicit NonUnitError(const std::string& what) : Error("non-unit", what) {}
};

class MalformedCharacterError : public Error {
 public:
  explicit MalformedCharacterError(const std::string& what)
      : Error("malformed-character", what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

// A search that is guaranteed to terminate ran past its cap.
class SearchCapError : public Error {
 public:
  explicit SearchCapError(const std::string& what) : Error("search-cap", what) {}
};

// Exhaustive search found nothing up to the cap. Distinct from SearchCapError:
// in the obstructed special case this is the expected answer.
class NotFoundBelowCap : public Error {
 public:
  explicit NotFoundBelowCap(const std::string& what)
      : Error("not-found-below-cap", what) {}
};

class NoWitnessError : public Error {
 public:
  explicit NoWitnessError(const std::string& what) : Error("no-witness", what) {}
};

// A proven statement failed to hold. Always a bug.
class InternalContradiction : public Error {
 public:
  explicit InternalContradiction(const std::string& what)
      : Error("internal-contradiction", what) {}
};

}  // namespace gw
