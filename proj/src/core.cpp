#include "periodflow/core.hpp"

namespace pflow {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::OrientationMismatch: return "OrientationMismatch";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::GenusZero: return "GenusZero";
    case ErrorCode::OpenPath: return "OpenPath";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::MetricMeshMismatch: return "MetricMeshMismatch";
    case ErrorCode::SingularPiZero: return "SingularPiZero";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::MeshMismatch: return "MeshMismatch";
    case ErrorCode::UnsupportedGenus: return "UnsupportedGenus";
    case ErrorCode::NotConformalChart: return "NotConformalChart";
    case ErrorCode::NonZeroDegreeSeed: return "NonZeroDegreeSeed";
    case ErrorCode::FrameMissing: return "FrameMissing";
    case ErrorCode::FrameResidualTooLarge: return "FrameResidualTooLarge";
    case ErrorCode::LineSearchFailure: return "LineSearchFailure";
    case ErrorCode::NewtonCorrectionFailure: return "NewtonCorrectionFailure";
    case ErrorCode::RankAmbiguity: return "RankAmbiguity";
    case ErrorCode::NotIsothermic: return "NotIsothermic";
    case ErrorCode::ChartUnavailable: return "ChartUnavailable";
    case ErrorCode::NotIndefinite: return "NotIndefinite";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::FileNotFound: return "FileNotFound";
  }
  return "Unknown";
}

}  // namespace pflow
