#pragma once

#include <stdexcept>
#include <string>

namespace steinerlab {

/// Failure categories raised by library operations.
enum class ErrorKind {
  DegenerateInput,
  RejectionExhausted,
  EmptyIntersection,
  NotABody,
  NonpositiveScale,
  InfeasibleHalfplanes,
  EmptyProjection,
  ProjectionMismatch,
  CurvatureAssumptionViolated,
  PoleAtMinusN,
  NonConvergent,
  NotPSD,
  Render3DUnsupported,
  InvalidArgument,
  Unsupported,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::RejectionExhausted: return "RejectionExhausted";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::NotABody: return "NotABody";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::InfeasibleHalfplanes: return "InfeasibleHalfplanes";
    case ErrorKind::EmptyProjection: return "EmptyProjection";
    case ErrorKind::ProjectionMismatch: return "ProjectionMismatch";
    case ErrorKind::CurvatureAssumptionViolated: return "CurvatureAssumptionViolated";
    case ErrorKind::PoleAtMinusN: return "PoleAtMinusN";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::Render3DUnsupported: return "Render3DUnsupported";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

/// Exception carrying an ErrorKind; every precondition failure uses it.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw GeometryError(kind, what);
}

}  // namespace steinerlab
