#ifndef ANX_ERROR_HPP
#define ANX_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anx {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration or invocation. The CLI maps this to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad or unusable input data. The CLI maps this to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class LexiconParseError : public DataError {
 public:
  LexiconParseError(std::size_t line, const std::string& what)
      : DataError("lexicon line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateTermError : public DataError {
 public:
  explicit DuplicateTermError(std::string term)
      : DataError("duplicate lexicon term '" + term + "'"), term_(std::move(term)) {}

  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

class EmptyLexiconError : public DataError {
 public:
  EmptyLexiconError() : DataError("lexicon contains no entries") {}
};

}  // namespace anx

#endif  // ANX_ERROR_HPP
