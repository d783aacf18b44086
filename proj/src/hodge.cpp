#include "periodflow/hodge.hpp"

#include <cmath>

namespace pflow {

Mat whitney_vectors(const TriangleMesh& mesh, const Vec& cochain) {
  require(cochain.size() == mesh.num_edges(), ErrorCode::MetricMeshMismatch,
          "cochain size mismatch");
  const FaceFrames fr = face_frames(mesh);
  Mat out(mesh.num_faces(), 2);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    // Least squares for the covector u with u.E_ab = c_ab over the three
    // edges; exact when the cochain sums to zero around the face.
    Vec2 E01 = fr.e01.row(f), E02 = fr.e02.row(f);
    Vec2 E12 = E02 - E01;
    Eigen::Matrix<double, 3, 2> A;
    A.row(0) = E01.transpose();
    A.row(1) = E12.transpose();
    A.row(2) = E02.transpose();
    Eigen::Vector3d rhs;
    rhs[0] = mesh.orientation_sign(3 * f + 0) * cochain[mesh.edge_of(3 * f + 0)];
    rhs[1] = mesh.orientation_sign(3 * f + 1) * cochain[mesh.edge_of(3 * f + 1)];
    // Edge 2 runs 2 -> 0 in the face; flip to get the 0 -> 2 value.
    rhs[2] = -mesh.orientation_sign(3 * f + 2) * cochain[mesh.edge_of(3 * f + 2)];
    out.row(f) = (A.transpose() * A).ldlt().solve(A.transpose() * rhs).transpose();
  }
  return out;
}

Mat2 star_rotation(const Mat2& G) {
  Mat2 J0;
  J0 << 0, -1, 1, 0;
  return J0 * std::sqrt(G.determinant()) * G.inverse();
}

Mat hodge_star_face_vectors(const TriangleMesh& mesh, const DiscreteMetric& metric,
                            const Vec& cochain) {
  const Mat u = whitney_vectors(mesh, cochain);
  const std::vector<Mat2> tensors = metric_face_tensors(mesh, metric);
  Mat out(mesh.num_faces(), 2);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Mat2 J = star_rotation(tensors[size_t(f)]);
    out.row(f) = (J * u.row(f).transpose()).transpose();
  }
  return out;
}

Vec hodge_star(const TriangleMesh& mesh, const DiscreteMetric& metric,
               const Vec& cochain) {
  const Mat sv = hodge_star_face_vectors(mesh, metric, cochain);
  const FaceFrames fr = face_frames(mesh);
  Vec out = Vec::Zero(mesh.num_edges());
  Vec count = Vec::Zero(mesh.num_edges());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Vec2 corners[3] = {Vec2(0, 0), Vec2(fr.e01(f, 0), fr.e01(f, 1)),
                             Vec2(fr.e02(f, 0), fr.e02(f, 1))};
    for (int c = 0; c < 3; ++c) {
      const int h = 3 * f + c;
      const Vec2 d = corners[(c + 1) % 3] - corners[c];
      const double val = sv.row(f).dot(d);
      out[mesh.edge_of(h)] += mesh.orientation_sign(h) * val;
      count[mesh.edge_of(h)] += 1.0;
    }
  }
  return out.array() / count.array();
}

double star_pairing(const TriangleMesh& mesh, const Vec& weights, const Vec& a,
                    const Vec& b) {
  require(a.size() == mesh.num_edges() && b.size() == mesh.num_edges(),
          ErrorCode::MetricMeshMismatch, "cochain size mismatch");
  return (weights.array() * a.array() * b.array()).sum();
}

namespace {

// Divergence d0^t W applied to a 1-cochain.
Vec codifferential_rhs(const TriangleMesh& mesh, const Vec& w, const Vec& cochain) {
  Vec rhs = Vec::Zero(mesh.num_vertices());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const double q = w[e] * cochain[e];
    rhs[mesh.edges()(e, 0)] -= q;
    rhs[mesh.edges()(e, 1)] += q;
  }
  return rhs;
}

// Subtract the exact part: returns cochain - d phi with phi solving
// L phi = d0^t W cochain, making the result co-closed for the metric.
Mat harmonic_projection(const TriangleMesh& mesh, const PoissonSolver& solver,
                        const Vec& w, const Mat& cochains) {
  Mat out(cochains.rows(), cochains.cols());
  for (int k = 0; k < cochains.cols(); ++k) {
    const Vec rhs = codifferential_rhs(mesh, w, cochains.col(k));
    const Vec phi = solver.solve(rhs);
    Vec corrected = cochains.col(k);
    for (int e = 0; e < mesh.num_edges(); ++e)
      corrected[e] -= phi[mesh.edges()(e, 1)] - phi[mesh.edges()(e, 0)];
    out.col(k) = corrected;
  }
  return out;
}

}  // namespace

HolomorphicBasis harmonic_basis(const TriangleMesh& mesh, const DiscreteMetric& metric,
                                const HomologyBasis& homology) {
  require(mesh.genus() >= 1, ErrorCode::GenusZero, "harmonic basis requires genus >= 1");
  const int g = homology.genus();
  const Vec w = cotan_weights(mesh, metric);
  PoissonSolver solver(mesh, metric);

  HolomorphicBasis basis;
  basis.weights = w;
  basis.cross_a.resize(mesh.num_edges(), g);
  basis.cross_b.resize(mesh.num_edges(), g);
  for (int k = 0; k < g; ++k) {
    basis.cross_a.col(k) = crossing_cochain(mesh, homology.loops_a[size_t(k)]);
    basis.cross_b.col(k) = crossing_cochain(mesh, homology.loops_b[size_t(k)]);
  }

  // Harmonic representatives.  The dual of b_k has a-periods delta_jk (it is
  // the alpha seed); the dual of a_k has vanishing a-periods.
  basis.dual_b = harmonic_projection(mesh, solver, w, basis.cross_b);
  basis.dual_a = harmonic_projection(mesh, solver, w, basis.cross_a);

  // Enforce int_{a_j} *alpha^k = 0 by mixing in dual_a columns (their
  // a-periods vanish, so the unit a-periods of the seeds are untouched).
  // N solves T N = -S with S_jl = int_{a_j} *u_l, T_jl = int_{a_j} *v_l.
  Mat S(g, g), T(g, g);
  for (int j = 0; j < g; ++j)
    for (int l = 0; l < g; ++l) {
      S(j, l) = star_pairing(mesh, w, basis.cross_a.col(j), basis.dual_b.col(l));
      T(j, l) = star_pairing(mesh, w, basis.cross_a.col(j), basis.dual_a.col(l));
    }
  Eigen::FullPivLU<Mat> lu(T);
  require(lu.isInvertible(), ErrorCode::SolverFailure,
          "harmonic normalization system is singular");
  const Mat N = lu.solve(-S);
  basis.alpha = basis.dual_b + basis.dual_a * N;

  basis.C.resize(g, g);
  basis.D.resize(g, g);
  for (int j = 0; j < g; ++j)
    for (int k = 0; k < g; ++k) {
      basis.C(j, k) =
          loop_integral(mesh, basis.alpha.col(k), homology.loops_b[size_t(j)]);
      basis.D(j, k) = star_pairing(mesh, w, basis.cross_b.col(j), basis.alpha.col(k));
    }
  return basis;
}

std::pair<Mat, Mat> poincare_duals(const TriangleMesh& mesh,
                                   const DiscreteMetric& metric,
                                   const HomologyBasis& homology) {
  require(mesh.genus() >= 1, ErrorCode::GenusZero, "duals require genus >= 1");
  const int g = homology.genus();
  const Vec w = cotan_weights(mesh, metric);
  PoissonSolver solver(mesh, metric);
  Mat ca(mesh.num_edges(), g), cb(mesh.num_edges(), g);
  for (int k = 0; k < g; ++k) {
    ca.col(k) = crossing_cochain(mesh, homology.loops_a[size_t(k)]);
    cb.col(k) = crossing_cochain(mesh, homology.loops_b[size_t(k)]);
  }
  return {harmonic_projection(mesh, solver, w, ca),
          harmonic_projection(mesh, solver, w, cb)};
}

PeriodMatrix period_matrix(const TriangleMesh& mesh, const DiscreteMetric& metric,
                           const HolomorphicBasis& holo,
                           const HomologyBasis& homology) {
  const int g = holo.genus();
  const Vec w = cotan_weights(mesh, metric);
  PeriodMatrix pm;
  pm.pi0.resize(g, g);
  pm.pi1.resize(g, g);
  for (int j = 0; j < g; ++j)
    for (int k = 0; k < g; ++k) {
      const double re0 =
          loop_integral(mesh, holo.alpha.col(k), homology.loops_a[size_t(j)]);
      const double im0 = star_pairing(mesh, w, holo.cross_a.col(j), holo.alpha.col(k));
      const double re1 =
          loop_integral(mesh, holo.alpha.col(k), homology.loops_b[size_t(j)]);
      const double im1 = star_pairing(mesh, w, holo.cross_b.col(j), holo.alpha.col(k));
      pm.pi0(j, k) = Complex(re0, im0);
      pm.pi1(j, k) = Complex(re1, im1);
    }
  Eigen::JacobiSVD<CMat> svd(pm.pi0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  require(smin > 1e-8 * smax, ErrorCode::SingularPiZero,
          "Pi0 is numerically singular; metric too far from the base");
  pm.pi1_normalized = pm.pi0.fullPivLu().solve(pm.pi1);
  return pm;
}

HolomorphicBasis corrected_harmonic(const TriangleMesh& mesh,
                                    const HolomorphicBasis& h0_basis,
                                    const DiscreteMetric& h) {
  HolomorphicBasis out = h0_basis;
  const Vec w = cotan_weights(mesh, h);
  PoissonSolver solver(mesh, h);
  out.weights = w;
  out.alpha = harmonic_projection(mesh, solver, w, h0_basis.alpha);
  // dual_a / dual_b stay those of the base metric; periods only need the
  // crossing cochains, which are metric-free.  C is exact under the exact
  // correction; D follows the new star.
  const int g = out.genus();
  for (int j = 0; j < g; ++j)
    for (int k = 0; k < g; ++k)
      out.D(j, k) = star_pairing(mesh, w, out.cross_b.col(j), out.alpha.col(k));
  return out;
}

}  // namespace pflow
