#pragma once

#include <stdexcept>
#include <string>

namespace symdet {

/// Raised for problems caused by the caller's input: unreadable files,
/// malformed records, invalid geometry, out-of-range parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure with file/line context.
class ParseError : public InputError {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : InputError(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Geometry that violates a shape invariant (open mesh, self-intersection, zero mass).
class GeometryError : public InputError {
 public:
  using InputError::InputError;
};

/// A split whose one side carries no mass.
class DegenerateSplit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symdet
