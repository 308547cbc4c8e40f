#pragma once

#include <stdexcept>
#include <string>

namespace trajcost {

/// Error while parsing a cost expression, scenario or trajectory file.
/// `position` is a byte offset (expressions) or line number (files).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position = 0)
      : std::runtime_error(std::move(message)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A requested partial cost needs data the evaluation context does not carry.
class MissingContextError : public std::runtime_error {
 public:
  MissingContextError(std::string term, std::string message)
      : std::runtime_error(std::move(message)), term_(std::move(term)) {}

  const std::string& term() const { return term_; }

 private:
  std::string term_;
};

/// Two trajectories share no base-path arc-length interval.
class NoOverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trajcost
