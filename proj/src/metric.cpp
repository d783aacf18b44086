#include "periodflow/metric.hpp"

#include <cmath>

namespace pflow {

namespace {

// Corner cotangents of a triangle with side lengths a = |p1p2|, b = |p0p2|,
// c = |p0p1|; returns (cot at p0, cot at p1, cot at p2) and the area.
struct TriangleTrig {
  double cot0, cot1, cot2, area;
};

TriangleTrig triangle_trig(double a, double b, double c, int face) {
  const double s = 0.5 * (a + b + c);
  const double area2 = s * (s - a) * (s - b) * (s - c);
  require(area2 > 0, ErrorCode::DegenerateFace,
          "triangle inequality violated on face " + std::to_string(face));
  const double area = std::sqrt(area2);
  TriangleTrig t;
  t.area = area;
  t.cot0 = (b * b + c * c - a * a) / (4.0 * area);
  t.cot1 = (a * a + c * c - b * b) / (4.0 * area);
  t.cot2 = (a * a + b * b - c * c) / (4.0 * area);
  return t;
}

}  // namespace

FaceFrames face_frames(const TriangleMesh& mesh) {
  const int F = mesh.num_faces();
  const int m = mesh.ambient_dim();
  FaceFrames fr;
  fr.t1.resize(F, m);
  fr.t2.resize(F, m);
  fr.e01.resize(F, 2);
  fr.e02.resize(F, 2);
  for (int f = 0; f < F; ++f) {
    Eigen::VectorXd d1 = mesh.positions().row(mesh.faces()(f, 1)) -
                         mesh.positions().row(mesh.faces()(f, 0));
    Eigen::VectorXd d2 = mesh.positions().row(mesh.faces()(f, 2)) -
                         mesh.positions().row(mesh.faces()(f, 0));
    const double l1 = d1.norm();
    require(l1 > 0, ErrorCode::DegenerateFace, "zero-length edge");
    Eigen::VectorXd t1 = d1 / l1;
    Eigen::VectorXd t2 = d2 - t1 * t1.dot(d2);
    const double l2 = t2.norm();
    require(l2 > 0, ErrorCode::DegenerateFace, "collinear face");
    t2 /= l2;
    fr.t1.row(f) = t1;
    fr.t2.row(f) = t2;
    fr.e01(f, 0) = l1;
    fr.e01(f, 1) = 0.0;
    fr.e02(f, 0) = t1.dot(d2);
    fr.e02(f, 1) = l2;
  }
  return fr;
}

DiscreteMetric metric_from_positions(const TriangleMesh& mesh) {
  Vec lengths(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    Eigen::VectorXd d = mesh.positions().row(mesh.edges()(e, 1)) -
                        mesh.positions().row(mesh.edges()(e, 0));
    lengths[e] = d.norm();
  }
  return metric_from_edge_lengths(mesh, lengths);
}

DiscreteMetric metric_from_edge_lengths(const TriangleMesh& mesh, const Vec& lengths) {
  require(lengths.size() == mesh.num_edges(), ErrorCode::MetricMeshMismatch,
          "edge length count mismatch");
  require((lengths.array() > 0).all(), ErrorCode::MetricMeshMismatch,
          "edge lengths must be positive");
  DiscreteMetric metric;
  metric.rep = DiscreteMetric::Rep::EdgeLengths;
  metric.edge_lengths = lengths;
  // Validate triangle inequalities.
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const double c = lengths[mesh.edge_of(3 * f + 0)];
    const double a = lengths[mesh.edge_of(3 * f + 1)];
    const double b = lengths[mesh.edge_of(3 * f + 2)];
    triangle_trig(a, b, c, f);
  }
  return metric;
}

DiscreteMetric metric_from_face_tensors(const TriangleMesh& mesh,
                                        const std::vector<Mat2>& tensors) {
  require(int(tensors.size()) == mesh.num_faces(), ErrorCode::MetricMeshMismatch,
          "face tensor count mismatch");
  for (size_t f = 0; f < tensors.size(); ++f) {
    const Mat2& G = tensors[f];
    require(std::abs(G(0, 1) - G(1, 0)) <= 1e-12 * (1.0 + G.norm()),
            ErrorCode::MetricMeshMismatch, "face tensor not symmetric");
    require(G(0, 0) > 0 && G.determinant() > 0, ErrorCode::MetricMeshMismatch,
            "face tensor not positive definite");
  }
  DiscreteMetric metric;
  metric.rep = DiscreteMetric::Rep::FaceTensors;
  metric.face_tensors = tensors;
  return metric;
}

Vec metric_edge_lengths(const TriangleMesh& mesh, const DiscreteMetric& metric) {
  if (metric.rep == DiscreteMetric::Rep::EdgeLengths) return metric.edge_lengths;
  const FaceFrames fr = face_frames(mesh);
  Vec lengths = Vec::Zero(mesh.num_edges());
  Vec counts = Vec::Zero(mesh.num_edges());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Mat2& G = metric.face_tensors[size_t(f)];
    Vec2 E01 = fr.e01.row(f), E02 = fr.e02.row(f);
    Vec2 E12 = E02 - E01;
    const double l01 = std::sqrt(E01.dot(G * E01));
    const double l12 = std::sqrt(E12.dot(G * E12));
    const double l20 = std::sqrt(E02.dot(G * E02));
    const int e01 = mesh.edge_of(3 * f + 0);
    const int e12 = mesh.edge_of(3 * f + 1);
    const int e20 = mesh.edge_of(3 * f + 2);
    lengths[e01] += l01; counts[e01] += 1;
    lengths[e12] += l12; counts[e12] += 1;
    lengths[e20] += l20; counts[e20] += 1;
  }
  return lengths.array() / counts.array();
}

std::vector<Mat2> metric_face_tensors(const TriangleMesh& mesh,
                                      const DiscreteMetric& metric) {
  if (metric.rep == DiscreteMetric::Rep::FaceTensors) return metric.face_tensors;
  const FaceFrames fr = face_frames(mesh);
  std::vector<Mat2> tensors(size_t(mesh.num_faces()));
  for (int f = 0; f < mesh.num_faces(); ++f) {
    // Solve the 3x3 linear system matching the squared lengths of the three
    // edges in frame coordinates.
    Vec2 E01 = fr.e01.row(f), E02 = fr.e02.row(f);
    Vec2 E12 = E02 - E01;
    Eigen::Matrix3d A;
    Eigen::Vector3d rhs;
    const Vec2 es[3] = {E01, E12, E02};
    const double ls[3] = {metric.edge_lengths[mesh.edge_of(3 * f + 0)],
                          metric.edge_lengths[mesh.edge_of(3 * f + 1)],
                          metric.edge_lengths[mesh.edge_of(3 * f + 2)]};
    for (int r = 0; r < 3; ++r) {
      A(r, 0) = es[r].x() * es[r].x();
      A(r, 1) = 2.0 * es[r].x() * es[r].y();
      A(r, 2) = es[r].y() * es[r].y();
      rhs[r] = ls[r] * ls[r];
    }
    Eigen::Vector3d g = A.fullPivLu().solve(rhs);
    Mat2 G;
    G << g[0], g[1], g[1], g[2];
    tensors[size_t(f)] = G;
  }
  return tensors;
}

Vec face_areas(const TriangleMesh& mesh, const DiscreteMetric& metric) {
  const Vec lengths = metric_edge_lengths(mesh, metric);
  Vec areas(mesh.num_faces());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const double c = lengths[mesh.edge_of(3 * f + 0)];
    const double a = lengths[mesh.edge_of(3 * f + 1)];
    const double b = lengths[mesh.edge_of(3 * f + 2)];
    areas[f] = triangle_trig(a, b, c, f).area;
  }
  return areas;
}

Vec vertex_areas(const TriangleMesh& mesh, const DiscreteMetric& metric) {
  const Vec fa = face_areas(mesh, metric);
  Vec va = Vec::Zero(mesh.num_vertices());
  for (int f = 0; f < mesh.num_faces(); ++f)
    for (int c = 0; c < 3; ++c) va[mesh.faces()(f, c)] += fa[f] / 3.0;
  return va;
}

Vec cotan_weights(const TriangleMesh& mesh, const DiscreteMetric& metric) {
  const Vec lengths = metric_edge_lengths(mesh, metric);
  Vec w = Vec::Zero(mesh.num_edges());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const double c = lengths[mesh.edge_of(3 * f + 0)];  // edge 0-1
    const double a = lengths[mesh.edge_of(3 * f + 1)];  // edge 1-2
    const double b = lengths[mesh.edge_of(3 * f + 2)];  // edge 2-0
    const TriangleTrig t = triangle_trig(a, b, c, f);
    w[mesh.edge_of(3 * f + 0)] += 0.5 * t.cot2;  // opposite vertex 2
    w[mesh.edge_of(3 * f + 1)] += 0.5 * t.cot0;
    w[mesh.edge_of(3 * f + 2)] += 0.5 * t.cot1;
  }
  return w;
}

SparseMat cotan_laplacian(const TriangleMesh& mesh, const DiscreteMetric& metric) {
  const Vec w = cotan_weights(mesh, metric);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(size_t(mesh.num_edges()) * 4);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int u = mesh.edges()(e, 0), v = mesh.edges()(e, 1);
    trip.emplace_back(u, u, w[e]);
    trip.emplace_back(v, v, w[e]);
    trip.emplace_back(u, v, -w[e]);
    trip.emplace_back(v, u, -w[e]);
  }
  SparseMat L(mesh.num_vertices(), mesh.num_vertices());
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

PoissonSolver::PoissonSolver(const TriangleMesh& mesh, const DiscreteMetric& metric,
                             double tol)
    : tol_(tol) {
  laplacian_ = cotan_laplacian(mesh, metric);
  n_ = int(laplacian_.rows());
  // Pin vertex 0 to remove the constant kernel, keeping symmetry.
  SparseMat pinned = laplacian_;
  for (SparseMat::InnerIterator it(pinned, 0); it; ++it) it.valueRef() = 0.0;
  pinned = pinned.transpose();
  for (SparseMat::InnerIterator it(pinned, 0); it; ++it) it.valueRef() = 0.0;
  pinned.coeffRef(0, 0) = 1.0;
  pinned.makeCompressed();
  factor_.compute(pinned);
  require(factor_.info() == Eigen::Success, ErrorCode::SolverFailure,
          "Laplacian factorization failed");
}

Vec PoissonSolver::solve(const Vec& rhs) const {
  Vec r = rhs;
  r.array() -= r.mean();
  Vec rp = r;
  rp[0] = 0.0;
  Vec x = factor_.solve(rp);
  require(factor_.info() == Eigen::Success, ErrorCode::SolverFailure,
          "Laplacian solve failed");
  x.array() -= x.mean();
  const double res = (laplacian_ * x - r).norm();
  const double scale = std::max(r.norm(), 1e-300);
  require(res <= tol_ * std::max(1.0, scale) || res <= tol_, ErrorCode::SolverFailure,
          "Poisson solve exceeded tolerance: relative residual " +
              std::to_string(res / scale));
  return x;
}

}  // namespace pflow
