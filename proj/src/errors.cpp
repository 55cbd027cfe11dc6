#include "caqt/errors.hpp"

namespace caqt {

std::string SourceSpan::to_string() const {
  if (!known()) return "<no source>";
  std::string out = "line " + std::to_string(line) + ", column " + std::to_string(column);
  if (end_line > 0 && (end_line != line || end_column > column + 1)) {
    out += " to line " + std::to_string(end_line) + ", column " + std::to_string(end_column - 1);
  }
  return out;
}

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

const char* to_string(SetupErrorKind kind) {
  switch (kind) {
    case SetupErrorKind::JunctionMismatch: return "JunctionMismatch";
    case SetupErrorKind::NotOrComposable: return "NotOrComposable";
    case SetupErrorKind::OverlappingHoles: return "OverlappingHoles";
    case SetupErrorKind::InvalidSetup: return "InvalidSetup";
    case SetupErrorKind::UnboundSite: return "UnboundSite";
  }
  return "SetupError";
}

namespace {

std::string format_setup_error(SetupErrorKind kind, const std::string& what,
                               const SourceSpan& span) {
  std::string msg = std::string(to_string(kind)) + ": " + what;
  if (span.known()) msg += " (at " + span.to_string() + ")";
  return msg;
}

}  // namespace

SetupError::SetupError(SetupErrorKind kind, const std::string& what, SourceSpan span)
    : std::runtime_error(format_setup_error(kind, what, span)),
      kind_(kind),
      span_(span),
      detail_(what) {}

SetupError SetupError::located(const SourceSpan& span) const {
  if (span_.known()) return *this;
  return SetupError(kind_, detail_, span);
}

}  // namespace caqt
