#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idxminer {

// Base for every error raised by the advisor pipeline.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed catalog, context or parameter files.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Invalid numeric or strategy parameters.
class ParamError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string token, const std::string& what)
      : Error(what), position_(position), token_(std::move(token)) {}

  std::size_t position() const { return position_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t position_;
  std::string token_;
};

// Recognized SQL that lies outside the supported dialect.
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(std::string construct)
      : Error("unsupported construct: " + construct),
        construct_(std::move(construct)) {}

  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

class ResolveError : public Error {
 public:
  enum class Reason { kUnknownColumn, kAmbiguousColumn, kUnknownTable };

  ResolveError(Reason reason, const std::string& what)
      : Error(what), reason_(reason) {}

  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

}  // namespace idxminer
