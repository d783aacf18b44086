#pragma once

#include "periodflow/core.hpp"

#include <string>

namespace pflow {

// Closed oriented triangle mesh with positions in R^m (m >= 3), halfedge
// connectivity and topological invariants.  Halfedge h belongs to face h/3;
// next(h) cycles the face, twin(h) is the oppositely oriented copy in the
// neighboring face.  Immutable after build_mesh.
class TriangleMesh {
 public:
  int num_vertices() const { return int(positions_.rows()); }
  int num_faces() const { return int(faces_.rows()); }
  int num_edges() const { return int(edges_.rows()); }
  int num_halfedges() const { return 3 * num_faces(); }
  int ambient_dim() const { return int(positions_.cols()); }
  int genus() const { return genus_; }
  int euler_characteristic() const { return euler_char_; }

  const Mat& positions() const { return positions_; }
  const Eigen::MatrixX3i& faces() const { return faces_; }
  // Edge e connects edges()(e,0) -> edges()(e,1); that direction is the
  // canonical orientation carried by 1-cochains.
  const Eigen::Matrix<int, Eigen::Dynamic, 2>& edges() const { return edges_; }

  int face_of(int h) const { return h / 3; }
  int next(int h) const { return 3 * (h / 3) + (h % 3 + 1) % 3; }
  int prev(int h) const { return 3 * (h / 3) + (h % 3 + 2) % 3; }
  int twin(int h) const { return twin_[size_t(h)]; }
  int origin(int h) const { return faces_(h / 3, h % 3); }
  int head(int h) const { return origin(next(h)); }
  int edge_of(int h) const { return edge_of_half_[size_t(h)]; }
  // +1 when halfedge h runs along its edge's canonical orientation.
  int orientation_sign(int h) const { return half_sign_[size_t(h)]; }
  // The canonical halfedge of edge e (runs tail -> head).
  int halfedge_of_edge(int e) const { return edge_half_[size_t(e)]; }
  // Some outgoing halfedge at vertex v.
  int halfedge_of_vertex(int v) const { return vertex_half_[size_t(v)]; }

  // Next outgoing halfedge counterclockwise around origin(h).
  int ccw_next_outgoing(int h) const { return twin(prev(h)); }

  // Directed halfedge u -> v, or -1.
  int find_halfedge(int u, int v) const;

  Vec3 position3(int v) const { return positions_.row(v).head<3>(); }

  friend TriangleMesh build_mesh(const Mat& positions, const Eigen::MatrixX3i& faces);

 private:
  Mat positions_;
  Eigen::MatrixX3i faces_;
  Eigen::Matrix<int, Eigen::Dynamic, 2> edges_;
  std::vector<int> twin_, edge_of_half_, half_sign_, edge_half_, vertex_half_;
  int genus_ = 0, euler_char_ = 0;
};

// Builds connectivity and validates that the input is a closed oriented
// manifold with non-degenerate faces.
TriangleMesh build_mesh(const Mat& positions, const Eigen::MatrixX3i& faces);

// Mesh ingestion.  OFF and OBJ carry positions in the first 3 coordinates;
// the extended plain-text format ("PFMESH m", then V F counts, one line of m
// floats per vertex, one "i j k" line per face) supports m > 3.
TriangleMesh load_mesh(const std::string& path);
void save_mesh(const TriangleMesh& mesh, const std::string& path);

}  // namespace pflow
