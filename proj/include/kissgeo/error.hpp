#pragma once

#include <stdexcept>
#include <string>

namespace kissgeo {

enum class ErrorKind {
  ZeroVector,
  AmbiguousAntiparallel,
  DegenerateTriangle,
  NonFinite,
  Overlap,
  DuplicateCenter,
  BadIndex,
  RadiusTooLarge,
  Orphan,
  EmptyTree,
  TooFewTwoDisks,
  AtOrigin,
  InvalidRegion,
  AllCollinear,
  NotConvex,
  TreeEdgeNotInDelaunay,
  NotSimplyConnected,
  InvolvementMismatch,
  CoverageViolation,
  NotUnitRadiusChain,
  ClockwiseArc,
  CentersTooClose,
  NoIntersection,
  EndpointMismatch,
  DegenerateAngle,
  InequalityViolation,
  CentersInvalid,
  CenterNotOnCurve,
  GenerationTimeout,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Single exception type for every failure the library reports. The kind
/// drives CLI exit codes; the message carries the offending indices/values.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kissgeo
