#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace deplog {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `position` is a byte offset into the parsed text.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          position_(position), line_(line), column_(column) {}

    std::size_t position() const noexcept { return position_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t position_;
    std::size_t line_;
    std::size_t column_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// An ESO sentence does not have the argument shape a transform requires.
class ShapeError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

/// An exhaustive search would exceed its configured cap.
class BudgetExceeded : public Error {
  public:
    BudgetExceeded(const std::string& what, std::uint64_t requested, std::uint64_t cap)
        : Error(what + " (requested " + std::to_string(requested) + ", cap " + std::to_string(cap) + ")"),
          requested_(requested), cap_(cap) {}

    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t cap() const noexcept { return cap_; }

  private:
    std::uint64_t requested_;
    std::uint64_t cap_;
};

} // namespace deplog
