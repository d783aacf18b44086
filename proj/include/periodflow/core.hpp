#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pflow {

using Scalar = double;
using Complex = std::complex<double>;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using IVec = Eigen::VectorXi;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using SparseMat = Eigen::SparseMatrix<double>;

// Error taxonomy shared across modules. Codes are stable strings so the CLI
// can render structured reports.
enum class ErrorCode {
  NonManifold,
  OrientationMismatch,
  DegenerateFace,
  GenusZero,
  OpenPath,
  SolverFailure,
  MetricMeshMismatch,
  SingularPiZero,
  SupportViolation,
  MeshMismatch,
  UnsupportedGenus,
  NotConformalChart,
  NonZeroDegreeSeed,
  FrameMissing,
  FrameResidualTooLarge,
  LineSearchFailure,
  NewtonCorrectionFailure,
  RankAmbiguity,
  NotIsothermic,
  ChartUnavailable,
  NotIndefinite,
  BadConfig,
  FileNotFound,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace pflow
