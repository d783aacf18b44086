#include "periodflow/homology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace pflow {

Loop loop_from_vertices(const TriangleMesh& mesh, const std::vector<int>& vertices) {
  Loop loop;
  const size_t n = vertices.size();
  require(n >= 2, ErrorCode::OpenPath, "loop needs at least two vertices");
  for (size_t i = 0; i < n; ++i) {
    const int u = vertices[i], v = vertices[(i + 1) % n];
    const int h = mesh.find_halfedge(u, v);
    require(h >= 0, ErrorCode::OpenPath,
            "consecutive loop vertices are not connected by an edge");
    loop.halfedges.push_back(h);
  }
  return loop;
}

Loop reversed(const TriangleMesh& mesh, const Loop& loop) {
  Loop r;
  r.halfedges.reserve(loop.halfedges.size());
  for (auto it = loop.halfedges.rbegin(); it != loop.halfedges.rend(); ++it)
    r.halfedges.push_back(mesh.twin(*it));
  return r;
}

void check_closed(const TriangleMesh& mesh, const Loop& loop) {
  require(!loop.halfedges.empty(), ErrorCode::OpenPath, "empty loop");
  const size_t n = loop.halfedges.size();
  for (size_t i = 0; i < n; ++i) {
    const int h = loop.halfedges[i], g = loop.halfedges[(i + 1) % n];
    require(mesh.head(h) == mesh.origin(g), ErrorCode::OpenPath,
            "walk is not closed/contiguous");
  }
}

double loop_integral(const TriangleMesh& mesh, const Vec& cochain, const Loop& loop) {
  require(cochain.size() == mesh.num_edges(), ErrorCode::MeshMismatch,
          "cochain size mismatch");
  double s = 0.0;
  for (int h : loop.halfedges) s += mesh.orientation_sign(h) * cochain[mesh.edge_of(h)];
  return s;
}

Vec crossing_cochain(const TriangleMesh& mesh, const Loop& loop) {
  check_closed(mesh, loop);
  Vec c = Vec::Zero(mesh.num_edges());
  const size_t n = loop.halfedges.size();
  for (size_t i = 0; i < n; ++i) {
    const int h_in = loop.halfedges[i];
    const int h_out = loop.halfedges[(i + 1) % n];
    const int stop = mesh.twin(h_in);  // points back along the incoming edge
    // The left-pushed curve rounds the corner clockwise and crosses every
    // outgoing edge strictly between h_out and twin(h_in) in ccw order.
    // Each crossing of an outgoing edge contributes -1 against that edge's
    // outgoing direction.
    int g = mesh.ccw_next_outgoing(h_out);
    while (g != stop) {
      c[mesh.edge_of(g)] -= mesh.orientation_sign(g);
      g = mesh.ccw_next_outgoing(g);
    }
  }
  return c;
}

long intersection_number(const TriangleMesh& mesh, const Loop& a, const Loop& b) {
  check_closed(mesh, a);
  const Vec cb = crossing_cochain(mesh, b);
  return std::lround(loop_integral(mesh, cb, a));
}

double cup_pairing(const TriangleMesh& mesh, const Vec& u, const Vec& v) {
  double s = 0.0;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    int vid[3] = {mesh.faces()(f, 0), mesh.faces()(f, 1), mesh.faces()(f, 2)};
    // Sort by global index; sign tracks whether the sorted order agrees with
    // the face orientation.
    int order[3] = {0, 1, 2};
    double sign = 1.0;
    if (vid[order[0]] > vid[order[1]]) { std::swap(order[0], order[1]); sign = -sign; }
    if (vid[order[1]] > vid[order[2]]) { std::swap(order[1], order[2]); sign = -sign; }
    if (vid[order[0]] > vid[order[1]]) { std::swap(order[0], order[1]); sign = -sign; }
    const int v0 = vid[order[0]], v1 = vid[order[1]], v2 = vid[order[2]];
    const int h01 = mesh.find_halfedge(v0, v1);
    const int h12 = mesh.find_halfedge(v1, v2);
    const double u01 = mesh.orientation_sign(h01) * u[mesh.edge_of(h01)];
    const double v12 = mesh.orientation_sign(h12) * v[mesh.edge_of(h12)];
    s += sign * u01 * v12;
  }
  return s;
}

namespace {

// BFS spanning tree of the vertex graph; parent_half[v] points from parent(v)
// to v.  Root is vertex 0.
std::vector<int> primal_tree(const TriangleMesh& mesh) {
  std::vector<int> parent_half(size_t(mesh.num_vertices()), -1);
  std::vector<char> seen(size_t(mesh.num_vertices()), 0);
  std::deque<int> queue;
  seen[0] = 1;
  queue.push_back(0);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    // Deterministic order: collect outgoing halfedges, sort by head index.
    std::vector<int> out;
    const int start = mesh.halfedge_of_vertex(v);
    int h = start;
    do {
      out.push_back(h);
      h = mesh.ccw_next_outgoing(h);
    } while (h != start);
    std::sort(out.begin(), out.end(),
              [&](int x, int y) { return mesh.head(x) < mesh.head(y); });
    for (int oh : out) {
      const int w = mesh.head(oh);
      if (!seen[size_t(w)]) {
        seen[size_t(w)] = 1;
        parent_half[size_t(w)] = oh;
        queue.push_back(w);
      }
    }
  }
  return parent_half;
}

std::vector<int> path_to_root(const TriangleMesh& mesh,
                              const std::vector<int>& parent_half, int v) {
  std::vector<int> verts;
  int cur = v;
  verts.push_back(cur);
  while (parent_half[size_t(cur)] >= 0) {
    cur = mesh.origin(parent_half[size_t(cur)]);
    verts.push_back(cur);
  }
  return verts;  // v, ..., root
}

// Halfedge walk from u to v through the tree (via the LCA).
std::vector<int> tree_walk(const TriangleMesh& mesh,
                           const std::vector<int>& parent_half, int u, int v) {
  std::vector<int> pu = path_to_root(mesh, parent_half, u);
  std::vector<int> pv = path_to_root(mesh, parent_half, v);
  // Trim the common tail above the LCA.
  while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
    pu.pop_back();
    pv.pop_back();
  }
  std::vector<int> walk;
  for (size_t i = 0; i + 1 < pu.size(); ++i)
    walk.push_back(mesh.twin(parent_half[size_t(pu[i])]));  // step toward root
  for (size_t i = pv.size() - 1; i > 0; --i)
    walk.push_back(parent_half[size_t(pv[i - 1])]);  // descend to v
  return walk;
}

// Closed walk representing c1 * loop_a + connector + c2 * loop_b (integer
// multiples; negative multiples reverse).  The connector runs through the
// tree and is retraced, so it does not change the homology class.
Loop combine(const TriangleMesh& mesh, const std::vector<int>& parent_half,
             const Loop& a, long ca, const Loop& b, long cb) {
  Loop a_use = ca >= 0 ? a : reversed(mesh, a);
  Loop b_use = cb >= 0 ? b : reversed(mesh, b);
  const long na = std::labs(ca), nb = std::labs(cb);
  Loop out;
  if (na == 0 && nb == 0) fail(ErrorCode::SolverFailure, "empty loop combination");
  if (na == 0) {
    for (long r = 0; r < nb; ++r)
      out.halfedges.insert(out.halfedges.end(), b_use.halfedges.begin(),
                           b_use.halfedges.end());
    return out;
  }
  for (long r = 0; r < na; ++r)
    out.halfedges.insert(out.halfedges.end(), a_use.halfedges.begin(),
                         a_use.halfedges.end());
  if (nb > 0) {
    const int va = a_use.start_vertex(mesh);
    const int vb = b_use.start_vertex(mesh);
    std::vector<int> go = tree_walk(mesh, parent_half, va, vb);
    out.halfedges.insert(out.halfedges.end(), go.begin(), go.end());
    for (long r = 0; r < nb; ++r)
      out.halfedges.insert(out.halfedges.end(), b_use.halfedges.begin(),
                           b_use.halfedges.end());
    std::vector<int> back = tree_walk(mesh, parent_half, vb, va);
    out.halfedges.insert(out.halfedges.end(), back.begin(), back.end());
  }
  return out;
}

Eigen::MatrixXi pairwise_intersections(const TriangleMesh& mesh,
                                       const std::vector<Loop>& loops) {
  const int n = int(loops.size());
  Eigen::MatrixXi M(n, n);
  for (int j = 0; j < n; ++j) {
    const Vec cj = crossing_cochain(mesh, loops[size_t(j)]);
    for (int i = 0; i < n; ++i)
      M(i, j) = int(std::lround(loop_integral(mesh, cj, loops[size_t(i)])));
  }
  return M;
}

}  // namespace

HomologyBasis canonical_homology_basis(const TriangleMesh& mesh) {
  require(mesh.genus() >= 1, ErrorCode::GenusZero,
          "homology basis requires genus >= 1");
  const std::vector<int> parent_half = primal_tree(mesh);

  std::vector<char> in_tree(size_t(mesh.num_edges()), 0);
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (parent_half[size_t(v)] >= 0) in_tree[size_t(mesh.edge_of(parent_half[size_t(v)]))] = 1;

  // Dual spanning tree (cotree) over faces, avoiding primal tree edges.
  std::vector<char> in_cotree(size_t(mesh.num_edges()), 0);
  std::vector<char> face_seen(size_t(mesh.num_faces()), 0);
  std::deque<int> fq;
  face_seen[0] = 1;
  fq.push_back(0);
  while (!fq.empty()) {
    const int f = fq.front();
    fq.pop_front();
    for (int c = 0; c < 3; ++c) {
      const int h = 3 * f + c;
      const int e = mesh.edge_of(h);
      if (in_tree[size_t(e)]) continue;
      const int fo = mesh.face_of(mesh.twin(h));
      if (!face_seen[size_t(fo)]) {
        face_seen[size_t(fo)] = 1;
        in_cotree[size_t(e)] = 1;
        fq.push_back(fo);
      }
    }
  }

  std::vector<Loop> gens;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (in_tree[size_t(e)] || in_cotree[size_t(e)]) continue;
    const int h = mesh.halfedge_of_edge(e);
    Loop loop;
    loop.halfedges.push_back(h);
    std::vector<int> back = tree_walk(mesh, parent_half, mesh.head(h), mesh.origin(h));
    loop.halfedges.insert(loop.halfedges.end(), back.begin(), back.end());
    gens.push_back(std::move(loop));
  }
  require(int(gens.size()) == 2 * mesh.genus(), ErrorCode::SolverFailure,
          "tree-cotree generator count disagrees with the Euler characteristic");

  // Integer symplectic reduction.  The intersection form is unimodular, so
  // Euclid steps on loop combinations always reach a +-1 pivot.
  HomologyBasis basis;
  std::vector<Loop> work = std::move(gens);
  while (!work.empty()) {
    Eigen::MatrixXi M = pairwise_intersections(mesh, work);
    const int n = int(work.size());
    int bi = -1, bj = -1, best = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (M(i, j) != 0 && (best == 0 || std::abs(M(i, j)) < best)) {
          best = std::abs(M(i, j));
          bi = i;
          bj = j;
        }
    require(best > 0, ErrorCode::SolverFailure, "degenerate intersection form");
    if (best > 1) {
      // Reduce some entry of row bi modulo the pivot.
      bool reduced = false;
      for (int k = 0; k < n && !reduced; ++k) {
        if (k == bi || k == bj) continue;
        if (M(bi, k) % M(bi, bj) != 0) {
          const long q = std::lround(double(M(bi, k)) / double(M(bi, bj)));
          work[size_t(k)] =
              combine(mesh, parent_half, work[size_t(k)], 1, work[size_t(bj)], -q);
          reduced = true;
        }
      }
      require(reduced, ErrorCode::SolverFailure,
              "symplectic reduction stalled on a non-unit pivot");
      continue;
    }
    Loop a = work[size_t(bi)];
    Loop b = work[size_t(bj)];
    if (M(bi, bj) < 0) b = reversed(mesh, b);
    // Symplectic complement of the remaining generators.
    std::vector<Loop> rest;
    const Vec ca = crossing_cochain(mesh, a);
    const Vec cb = crossing_cochain(mesh, b);
    for (int k = 0; k < n; ++k) {
      if (k == bi || k == bj) continue;
      const long xa = std::lround(loop_integral(mesh, ca, work[size_t(k)]));
      const long xb = std::lround(loop_integral(mesh, cb, work[size_t(k)]));
      Loop nk = work[size_t(k)];
      // x  ->  x - (x.b) a + (x.a) b
      if (xb != 0) nk = combine(mesh, parent_half, nk, 1, a, -xb);
      if (xa != 0) nk = combine(mesh, parent_half, nk, 1, b, xa);
      rest.push_back(std::move(nk));
    }
    basis.loops_a.push_back(std::move(a));
    basis.loops_b.push_back(std::move(b));
    work = std::move(rest);
  }

  std::vector<Loop> all;
  for (const Loop& l : basis.loops_a) all.push_back(l);
  for (const Loop& l : basis.loops_b) all.push_back(l);
  basis.intersection_matrix = pairwise_intersections(mesh, all);
  const int g = basis.genus();
  for (int i = 0; i < 2 * g; ++i)
    for (int j = 0; j < 2 * g; ++j) {
      int expect = 0;
      if (j == i + g) expect = 1;
      if (i == j + g) expect = -1;
      require(basis.intersection_matrix(i, j) == expect, ErrorCode::SolverFailure,
              "canonical basis reduction failed");
    }
  return basis;
}

}  // namespace pflow
