#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace deltaring {

enum class ErrorKind {
  PrimeMismatch,
  NotAUnit,
  NotDivisible,
  PrecisionExhausted,
  NotIrreducible,
  GroupMismatch,
  ContextMismatch,
  GroupNotFinite,
  GroupNotPPower,
  RingTooLarge,
  SearchTooLarge,
  NotSquareZero,
  PreconditionViolated,
  UnsupportedContext,
  InvalidSpec,
  SyntaxError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Resource-limit kinds map to a distinct CLI exit code.
constexpr bool is_resource_limit(ErrorKind kind) {
  return kind == ErrorKind::RingTooLarge || kind == ErrorKind::SearchTooLarge;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Parser diagnostic carrying the byte offset of the failure.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& expected)
      : Error(ErrorKind::SyntaxError,
              "at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace deltaring
