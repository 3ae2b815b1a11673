#ifndef KAOS2B_DIAG_HPP
#define KAOS2B_DIAG_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace kaos2b {

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Parse failure with exact source position.
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(SourcePos pos, const std::string& what)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                           ": " + what),
        pos_(pos) {}

  SourcePos pos() const { return pos_; }

private:
  SourcePos pos_;
};

enum class ScopeErrorCode { UnknownParent, DuplicateName, CyclicParentChain };

class ScopeError : public std::runtime_error {
public:
  ScopeError(ScopeErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ScopeErrorCode code() const { return code_; }

private:
  ScopeErrorCode code_;
};

/// A well-formedness breach found by validation. Violations are data, not failures.
struct Violation {
  std::string element;  // qualified name of the offending element
  std::string rule;     // stable rule identifier
  std::string message;

  bool operator==(const Violation&) const = default;
};

class TranslateError : public std::runtime_error {
public:
  explicit TranslateError(const std::string& what) : std::runtime_error(what) {}
};

class ValidationFailed : public TranslateError {
public:
  explicit ValidationFailed(std::vector<Violation> violations)
      : TranslateError("domain model validation failed"), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

private:
  std::vector<Violation> violations_;
};

enum class BackpropErrorCode { UnsupportedEdit, NameClash, NoMatchingRule, AmbiguousPattern };

class BackpropError : public std::runtime_error {
public:
  BackpropError(BackpropErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  BackpropErrorCode code() const { return code_; }

private:
  BackpropErrorCode code_;
};

class GoalEngineError : public std::runtime_error {
public:
  explicit GoalEngineError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kaos2b

#endif
