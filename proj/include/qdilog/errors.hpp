#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qdilog {

/// A mathematical precondition failed (pole, 2-cycle at the mutation vertex,
/// mixed-sign c-vector, ...).  `code` is a stable machine-readable tag.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Brute-force enumeration would exceed its configured size guard.
class GuardError : public DomainError {
 public:
  explicit GuardError(const std::string& what) : DomainError("guard_exceeded", what) {}
};

/// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdilog
