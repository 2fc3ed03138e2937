#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thoma {

enum class ErrorCode {
  level_mismatch,
  unknown_generator,
  empty_truncation,
  non_adjacent_levels,
  degeneration_failure,
  invalid_point,
  invalid_argument,
  coinciding_atoms,
  parse_error,
  unknown_name,
  substep_limit,
  io_error,
};

/// Library error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a source position (0-based offset, 1-based line/column).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset, std::size_t line, std::size_t column)
      : Error(ErrorCode::parse_error, "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + msg),
        message_(msg), offset_(offset), line_(line), column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t offset_, line_, column_;
};

}  // namespace thoma
