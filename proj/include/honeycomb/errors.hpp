#pragma once

#include <stdexcept>
#include <string>

namespace honeycomb {

enum class ErrorKind {
  EmptyGrid,
  NotConnected,
  NotConvex,
  DanglingEdge,
  NotACocirculation,
  NotConcave,
  NotPreHoneycomb,
  InvalidHoneycomb,
  EpsilonOutOfRange,
  NoNonintegralEdge,
  FNotSubsetOfEdges,
  NonIntegerTruncationPoint,
  InvalidArgument,
  Malformed,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::DanglingEdge: return "DanglingEdge";
    case ErrorKind::NotACocirculation: return "NotACocirculation";
    case ErrorKind::NotConcave: return "NotConcave";
    case ErrorKind::NotPreHoneycomb: return "NotPreHoneycomb";
    case ErrorKind::InvalidHoneycomb: return "InvalidHoneycomb";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::NoNonintegralEdge: return "NoNonintegralEdge";
    case ErrorKind::FNotSubsetOfEdges: return "FNotSubsetOfEdges";
    case ErrorKind::NonIntegerTruncationPoint: return "NonIntegerTruncationPoint";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

/// Single exception type for all domain failures; `kind()` tells them apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace honeycomb
