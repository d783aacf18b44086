#pragma once

#include "periodflow/core.hpp"
#include "periodflow/mesh.hpp"

namespace pflow {

// Closed walk along mesh edges, stored as a halfedge sequence with
// head(h_i) == origin(h_{i+1}) cyclically.
struct Loop {
  std::vector<int> halfedges;
  int start_vertex(const TriangleMesh& mesh) const {
    return mesh.origin(halfedges.front());
  }
};

Loop loop_from_vertices(const TriangleMesh& mesh, const std::vector<int>& vertices);
Loop reversed(const TriangleMesh& mesh, const Loop& loop);
void check_closed(const TriangleMesh& mesh, const Loop& loop);

// Exact line integral of a 1-cochain along a closed walk.
double loop_integral(const TriangleMesh& mesh, const Vec& cochain, const Loop& loop);

// Closed integer 1-cochain c with loop_integral(c, gamma') = gamma' . gamma
// for every closed walk gamma'.  Built by pushing gamma off itself to its
// left and recording the signed edge crossings of the pushed curve; this is
// a simplicial representative of the Poincare dual of gamma.
Vec crossing_cochain(const TriangleMesh& mesh, const Loop& loop);

// Signed transverse intersection count, invariant under homotopy of either
// walk (spurs and shared segments are fine).
long intersection_number(const TriangleMesh& mesh, const Loop& a, const Loop& b);

// Evaluates integral over the fundamental class of u cup v for closed real
// 1-cochains; equals the wedge-pairing of the corresponding cohomology
// classes.
double cup_pairing(const TriangleMesh& mesh, const Vec& u, const Vec& v);

struct HomologyBasis {
  std::vector<Loop> loops_a, loops_b;           // g each
  Eigen::MatrixXi intersection_matrix;          // 2g x 2g, the symplectic form
  int genus() const { return int(loops_a.size()); }
};

// Tree-cotree generators followed by integer symplectic reduction to the
// canonical form a_j.b_k = delta_jk, a_j.a_k = b_j.b_k = 0.  Deterministic:
// BFS roots are vertex 0 / face 0 and ties break by index.
HomologyBasis canonical_homology_basis(const TriangleMesh& mesh);

}  // namespace pflow
