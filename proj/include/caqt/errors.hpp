#pragma once

#include <stdexcept>
#include <string>

namespace caqt {

/// Position of a node in DSL source text; the end column is one past the
/// last character. A zero line means "no source".
struct SourceSpan {
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;

  bool known() const { return line > 0; }
  std::string to_string() const;
};

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class SetupErrorKind {
  JunctionMismatch,
  NotOrComposable,
  OverlappingHoles,
  InvalidSetup,
  UnboundSite,
};

const char* to_string(SetupErrorKind kind);

class SetupError : public std::runtime_error {
 public:
  SetupError(SetupErrorKind kind, const std::string& what, SourceSpan span = {});

  SetupErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }

  /// Same error, attributed to `span` unless a span is already attached.
  SetupError located(const SourceSpan& span) const;

 private:
  SetupErrorKind kind_;
  SourceSpan span_;
  std::string detail_;
};

class LatticeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FilterOutsideWindow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PathExplosion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EnsembleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace caqt
