#include "tropocone/error.hpp"

namespace tropocone {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyCone: return "EmptyCone";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotIntoCodomain: return "NotIntoCodomain";
    case ErrorCode::MissingFace: return "MissingFace";
    case ErrorCode::NotFaceEmbedding: return "NotFaceEmbedding";
    case ErrorCode::NonFunctorial: return "NonFunctorial";
    case ErrorCode::NotThin: return "NotThin";
    case ErrorCode::NotPolyhedralComplex: return "NotPolyhedralComplex";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::BadCodimension: return "BadCodimension";
    case ErrorCode::NotSubcomplex: return "NotSubcomplex";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::RayNotInterior: return "RayNotInterior";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotPFine: return "NotPFine";
    case ErrorCode::IncomparableSubdivisions: return "IncomparableSubdivisions";
    case ErrorCode::InvalidSubdivision: return "InvalidSubdivision";
    case ErrorCode::BadInvolution: return "BadInvolution";
    case ErrorCode::BadRootCompatibility: return "BadRootCompatibility";
    case ErrorCode::MarkingNotBijective: return "MarkingNotBijective";
    case ErrorCode::LoopContraction: return "LoopContraction";
    case ErrorCode::UnstableParameters: return "UnstableParameters";
    case ErrorCode::TooFewMarks: return "TooFewMarks";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::InvalidFibration: return "InvalidFibration";
    case ErrorCode::UnstableAfterForgetting: return "UnstableAfterForgetting";
    case ErrorCode::BadLabelIntersection: return "BadLabelIntersection";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

}  // namespace tropocone
