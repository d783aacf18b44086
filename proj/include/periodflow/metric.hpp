#pragma once

#include "periodflow/core.hpp"
#include "periodflow/mesh.hpp"

namespace pflow {

// Discrete metric on a triangle mesh: either per-edge lengths or per-face
// 2x2 symmetric positive definite tensors expressed in the face's reference
// frame (the orthonormal frame spanned by the first edge, from positions).
struct DiscreteMetric {
  enum class Rep { EdgeLengths, FaceTensors };
  Rep rep = Rep::EdgeLengths;
  Vec edge_lengths;                // E (EdgeLengths)
  std::vector<Mat2> face_tensors;  // F (FaceTensors)
};

// Orthonormal tangent frames per face and the frame coordinates of the two
// spanning edges p0->p1, p0->p2.
struct FaceFrames {
  Mat t1, t2;  // F x m
  Mat e01, e02;  // F x 2: e01 = (|p1-p0|, 0)
};

FaceFrames face_frames(const TriangleMesh& mesh);

DiscreteMetric metric_from_positions(const TriangleMesh& mesh);
DiscreteMetric metric_from_edge_lengths(const TriangleMesh& mesh, const Vec& lengths);
DiscreteMetric metric_from_face_tensors(const TriangleMesh& mesh,
                                        const std::vector<Mat2>& tensors);

// Unified accessors (convert between representations when needed).
Vec metric_edge_lengths(const TriangleMesh& mesh, const DiscreteMetric& metric);
std::vector<Mat2> metric_face_tensors(const TriangleMesh& mesh,
                                      const DiscreteMetric& metric);

Vec face_areas(const TriangleMesh& mesh, const DiscreteMetric& metric);
Vec vertex_areas(const TriangleMesh& mesh, const DiscreteMetric& metric);
// Edge weight w_e = (cot alpha + cot beta)/2; sum_e w_e a_e b_e equals the
// L2 pairing of the face-wise constant interpolants of closed cochains.
Vec cotan_weights(const TriangleMesh& mesh, const DiscreteMetric& metric);
SparseMat cotan_laplacian(const TriangleMesh& mesh, const DiscreteMetric& metric);

// Solves the pinned Poisson problem L x = rhs on the mean-zero subspace.
// Relative residual beyond `tol` raises SolverFailure.
class PoissonSolver {
 public:
  PoissonSolver(const TriangleMesh& mesh, const DiscreteMetric& metric,
                double tol = 1e-10);
  Vec solve(const Vec& rhs) const;

 private:
  SparseMat laplacian_;
  Eigen::SimplicialLDLT<SparseMat> factor_;
  int n_ = 0;
  double tol_;
};

}  // namespace pflow
