#pragma once

#include <stdexcept>
#include <string>

namespace wiretap {

enum class ErrorCategory {
  validation,   // a type invariant is violated
  domain,       // parameter outside its mathematical domain
  size,         // dimension beyond the configured cap
  parse,        // malformed channel description
  unsupported,  // request outside the implemented scope
  solver,       // root bracket or consistency check failed
  io,           // file output failed
  internal,     // should not happen
};

const char* error_category_name(ErrorCategory c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error(ErrorCategory::validation, m) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error(ErrorCategory::domain, m) {}
};
struct SizeError : Error {
  explicit SizeError(const std::string& m) : Error(ErrorCategory::size, m) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorCategory::parse, m) {}
};
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& m) : Error(ErrorCategory::unsupported, m) {}
};
struct SolverError : Error {
  explicit SolverError(const std::string& m) : Error(ErrorCategory::solver, m) {}
};
struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorCategory::io, m) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& m) : Error(ErrorCategory::internal, m) {}
};

}  // namespace wiretap
