#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gips {

struct SourceLoc {
  int line = 0;
  int column = 0;

  bool valid() const { return line > 0; }
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model document or nonconforming graph.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Lexical or syntactic error in a document, with position and the set of
// tokens that would have been accepted.
class ParseError : public Error {
 public:
  ParseError(SourceLoc loc, const std::string& message,
             std::vector<std::string> expected = {});

  SourceLoc loc() const { return loc_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceLoc loc_;
  std::vector<std::string> expected_;
};

struct Diagnostic {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  SourceLoc loc;
  std::string message;

  std::string str() const;
};

// Semantic errors found while typechecking a specification.
class SpecError : public Error {
 public:
  explicit SpecError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Raised while turning a specification into an ILP problem.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// A match is no longer valid on the current graph; the caller must rematch.
class StaleMatchError : public Error {
 public:
  using Error::Error;
};

class SolveError : public Error {
 public:
  using Error::Error;
};

}  // namespace gips
