#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace planrec {

/// Line/column of a source position, both 1-based.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

std::string to_string(const SourcePos& pos);

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed concrete syntax (s-expression level), or unreadable input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourcePos pos);
  explicit ParseError(const std::string& what);

  const SourcePos& pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
  ValidationError(const std::string& what, SourcePos pos);
};

/// Inference failed, e.g. the evidence has zero probability.
class InferenceError : public Error {
 public:
  using Error::Error;
};

class InconsistentEvidence : public InferenceError {
 public:
  using InferenceError::InferenceError;
};

}  // namespace planrec
