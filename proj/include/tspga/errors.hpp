#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tspga {

/// Precondition violated by an argument (index out of range, bad probability, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Instance too small or too large for the requested exact method.
class SizeError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Invalid run or sweep configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed TSPLIB document. line() is 1-based; 0 means "end of document".
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Well-formed TSPLIB document using a feature this library does not handle.
class UnsupportedFormatError : public ParseError {
  public:
    using ParseError::ParseError;
};

class IoError : public std::runtime_error {
  public:
    IoError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

} // namespace tspga
