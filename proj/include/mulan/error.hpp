#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mulan {

/// Process exit codes used by the CLI. Every exception below maps onto one.
enum class ExitCode : int {
  kOk = 0,
  kIo = 1,
  kValidation = 2,
  kInternal = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ExitCode::kIo, what) {}
};

/// Malformed row in one of the TSV formats. `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ExitCode::kIo, "line " + std::to_string(line) + ": " + reason), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ExitCode::kValidation, what) {}
};

class UnknownNode : public ValidationError {
 public:
  explicit UnknownNode(const std::string& what) : ValidationError("unknown node: " + what) {}
};

class DuplicateSeed : public ValidationError {
 public:
  explicit DuplicateSeed(const std::string& what) : ValidationError("duplicate seed: " + what) {}
};

class LayerMismatch : public ValidationError {
 public:
  explicit LayerMismatch(const std::string& what) : ValidationError("layer mismatch: " + what) {}
};

class InvalidSpec : public ValidationError {
 public:
  explicit InvalidSpec(const std::string& what) : ValidationError("invalid spec: " + what) {}
};

class EmptyGraph : public ValidationError {
 public:
  EmptyGraph() : ValidationError("graph has zero total edge weight") {}
};

class EmptyTruth : public ValidationError {
 public:
  explicit EmptyTruth(const std::string& what) : ValidationError("empty true mapping: " + what) {}
};

class SingleLayer : public ValidationError {
 public:
  SingleLayer() : ValidationError("inter-layer metric needs at least two layers") {}
};

/// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ExitCode::kInternal, what) {}
};

}  // namespace mulan
