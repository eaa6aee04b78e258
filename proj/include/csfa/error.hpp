#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csfa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed automaton text. `line()` is 1-based; 0 means end of input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An operation was called on an input outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size or attempt limit would be exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A proven structural statement failed on a concrete automaton. This always
/// indicates a defect in the implementation; `automaton_text()` holds the
/// offending automaton in the text format.
class TheoremViolation : public Error {
 public:
  TheoremViolation(const std::string& what, std::string automaton_text)
      : Error(what), automaton_text_(std::move(automaton_text)) {}

  const std::string& automaton_text() const noexcept { return automaton_text_; }

 private:
  std::string automaton_text_;
};

}  // namespace csfa
