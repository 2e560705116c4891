#pragma once

#include <stdexcept>
#include <string>

namespace tropocone {

// Every failure the library reports carries one of these codes so that
// callers (and the CLI) can dispatch without parsing message text.
enum class ErrorCode {
  ZeroVector,
  NotSublattice,
  DimensionMismatch,
  EmptyCone,
  NotFullDimensional,
  NotIntoCodomain,
  MissingFace,
  NotFaceEmbedding,
  NonFunctorial,
  NotThin,
  NotPolyhedralComplex,
  NotConvex,
  BadCodimension,
  NotSubcomplex,
  NotPure,
  RayNotInterior,
  AmbientMismatch,
  NotPFine,
  IncomparableSubdivisions,
  InvalidSubdivision,
  BadInvolution,
  BadRootCompatibility,
  MarkingNotBijective,
  LoopContraction,
  UnstableParameters,
  TooFewMarks,
  NotCompatible,
  InvalidFibration,
  UnstableAfterForgetting,
  BadLabelIntersection,
  SchemaError,
  ParseError,
  Unsupported,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tropocone
