#pragma once

#include "periodflow/core.hpp"
#include "periodflow/homology.hpp"
#include "periodflow/metric.hpp"

namespace pflow {

// Piecewise-constant face vectors of a 1-cochain, components in face frames.
// For face-closed cochains the representation is exact.
Mat whitney_vectors(const TriangleMesh& mesh, const Vec& cochain);

// Face-based Hodge star on 1-forms.  The rotation matrix J(G) per face obeys
// X^t J0^t J(G) G Y = X^t Y sqrt(det G) and squares to -Id exactly.
Mat2 star_rotation(const Mat2& G);
// Star of a cochain resampled to edges (two-face average).
Vec hodge_star(const TriangleMesh& mesh, const DiscreteMetric& metric,
               const Vec& cochain);
// Star applied in face-vector form: returns F x 2 covector components.
Mat hodge_star_face_vectors(const TriangleMesh& mesh, const DiscreteMetric& metric,
                            const Vec& cochain);

// Metric L2 pairing of 1-cochains: sum_e w_e a_e b_e = integral of a wedge *b.
double star_pairing(const TriangleMesh& mesh, const Vec& weights, const Vec& a,
                    const Vec& b);

// Harmonic 1-forms with the normalization
//   int_{a_j} alpha^k = delta_jk   and   int_{a_j} *alpha^k = 0,
// induced b-period matrices C = int_{b_j} alpha^k (symmetric) and
// D = int_{b_j} *alpha^k (symmetric positive definite), and the harmonic
// Poincare duals of the homology loops.  a-periods of alpha are exact
// integers by construction: the basis is assembled from integer crossing
// cochains plus exact corrections.
struct HolomorphicBasis {
  Mat alpha;            // E x g
  Mat dual_a, dual_b;   // E x g harmonic Poincare duals
  Mat cross_a, cross_b; // E x g integer crossing cochains of the loops
  Mat C, D;             // g x g
  Vec weights;          // cotan weights of the metric the basis was built for
  int genus() const { return int(alpha.cols()); }
};

HolomorphicBasis harmonic_basis(const TriangleMesh& mesh, const DiscreteMetric& metric,
                                const HomologyBasis& homology);

// Harmonic representatives of the Poincare duals eta_{a_j}, eta_{b_j} for the
// given metric.
std::pair<Mat, Mat> poincare_duals(const TriangleMesh& mesh,
                                   const DiscreteMetric& metric,
                                   const HomologyBasis& homology);

struct PeriodMatrix {
  CMat pi0, pi1;        // g x g
  CMat pi1_normalized;  // (pi0)^{-1} pi1
};

// Periods of omega^k = alpha^k + i *alpha^k over the homology loops; exact
// cochain sums along the stored loops, star-periods via the crossing-cochain
// pairing.  Raises SingularPiZero when pi0 is numerically singular.
PeriodMatrix period_matrix(const TriangleMesh& mesh, const DiscreteMetric& metric,
                           const HolomorphicBasis& holo, const HomologyBasis& homology);

// Corrected basis alpha^k(h) = alpha^k_0 + d phi^k with phi^k the mean-zero
// solution of the metric-h Poisson problem; co-closed for h, a-periods kept
// exactly (Re Pi0 = Id, Re Pi1 = C).
HolomorphicBasis corrected_harmonic(const TriangleMesh& mesh,
                                    const HolomorphicBasis& h0_basis,
                                    const DiscreteMetric& h);

}  // namespace pflow
