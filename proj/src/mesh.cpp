#include "periodflow/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace pflow {

int TriangleMesh::find_halfedge(int u, int v) const {
  const int start = vertex_half_[size_t(u)];
  int h = start;
  do {
    if (head(h) == v) return h;
    h = ccw_next_outgoing(h);
  } while (h != start);
  return -1;
}

TriangleMesh build_mesh(const Mat& positions, const Eigen::MatrixX3i& faces) {
  TriangleMesh mesh;
  const int V = int(positions.rows());
  const int F = int(faces.rows());
  require(positions.cols() >= 3, ErrorCode::BadConfig, "positions need m >= 3");
  require(V >= 3 && F >= 2, ErrorCode::BadConfig, "mesh too small");

  for (int f = 0; f < F; ++f) {
    for (int c = 0; c < 3; ++c) {
      const int v = faces(f, c);
      require(v >= 0 && v < V, ErrorCode::BadConfig, "face references invalid vertex");
    }
    if (faces(f, 0) == faces(f, 1) || faces(f, 1) == faces(f, 2) ||
        faces(f, 0) == faces(f, 2))
      fail(ErrorCode::DegenerateFace, "face with repeated vertex");
  }

  mesh.positions_ = positions;
  mesh.faces_ = faces;
  mesh.twin_.assign(size_t(3 * F), -1);
  mesh.edge_of_half_.assign(size_t(3 * F), -1);
  mesh.half_sign_.assign(size_t(3 * F), 0);
  mesh.vertex_half_.assign(size_t(V), -1);

  std::map<std::pair<int, int>, int> directed;  // (u,v) -> halfedge
  for (int h = 0; h < 3 * F; ++h) {
    const int u = mesh.origin(h), v = mesh.head(h);
    auto ins = directed.emplace(std::make_pair(u, v), h);
    if (!ins.second)
      fail(ErrorCode::OrientationMismatch,
           "directed edge (" + std::to_string(u) + "," + std::to_string(v) +
               ") appears twice; face orientations disagree");
    if (mesh.vertex_half_[size_t(u)] < 0) mesh.vertex_half_[size_t(u)] = h;
  }

  std::vector<std::array<int, 2>> edge_list;
  std::vector<int> edge_half;
  for (int h = 0; h < 3 * F; ++h) {
    const int u = mesh.origin(h), v = mesh.head(h);
    auto it = directed.find(std::make_pair(v, u));
    if (it == directed.end())
      fail(ErrorCode::NonManifold, "edge (" + std::to_string(u) + "," +
                                       std::to_string(v) +
                                       ") has only one incident face");
    mesh.twin_[size_t(h)] = it->second;
    if (u < v) {
      const int e = int(edge_list.size());
      edge_list.push_back({u, v});
      edge_half.push_back(h);
      mesh.edge_of_half_[size_t(h)] = e;
      mesh.edge_of_half_[size_t(it->second)] = e;
      mesh.half_sign_[size_t(h)] = 1;
      mesh.half_sign_[size_t(it->second)] = -1;
    }
  }
  const int E = int(edge_list.size());
  mesh.edges_.resize(E, 2);
  for (int e = 0; e < E; ++e) {
    mesh.edges_(e, 0) = edge_list[size_t(e)][0];
    mesh.edges_(e, 1) = edge_list[size_t(e)][1];
  }
  mesh.edge_half_ = std::move(edge_half);

  // Vertex links must be single cycles (no pinch points).
  std::vector<int> star_count(size_t(V), 0);
  for (int h = 0; h < 3 * F; ++h) star_count[size_t(mesh.origin(h))]++;
  for (int v = 0; v < V; ++v) {
    require(star_count[size_t(v)] > 0, ErrorCode::NonManifold, "isolated vertex");
    int seen = 0;
    const int start = mesh.vertex_half_[size_t(v)];
    int h = start;
    do {
      ++seen;
      h = mesh.ccw_next_outgoing(h);
    } while (h != start && seen <= star_count[size_t(v)]);
    if (seen != star_count[size_t(v)])
      fail(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " star is not a disk");
  }

  // Positive area under the induced metric.
  for (int f = 0; f < F; ++f) {
    Eigen::VectorXd e1 = positions.row(faces(f, 1)) - positions.row(faces(f, 0));
    Eigen::VectorXd e2 = positions.row(faces(f, 2)) - positions.row(faces(f, 0));
    const double g11 = e1.squaredNorm(), g22 = e2.squaredNorm(), g12 = e1.dot(e2);
    const double det = g11 * g22 - g12 * g12;
    if (!(det > 1e-28 * std::max(1.0, g11 * g22)))
      fail(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " has zero area");
  }

  mesh.euler_char_ = V - E + F;
  require(mesh.euler_char_ % 2 == 0, ErrorCode::NonManifold, "odd Euler characteristic");
  mesh.genus_ = (2 - mesh.euler_char_) / 2;
  require(mesh.genus_ >= 0, ErrorCode::NonManifold, "negative genus");
  return mesh;
}

namespace {

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return line;
  }
  return {};
}

TriangleMesh load_off(std::istream& in) {
  std::string header = next_content_line(in);
  require(header.substr(0, 3) == "OFF", ErrorCode::BadConfig, "not an OFF file");
  int V = 0, F = 0, E = 0;
  {
    std::string counts = header.size() > 4 ? header.substr(3) : next_content_line(in);
    if (counts.find_first_not_of(" \t") == std::string::npos)
      counts = next_content_line(in);
    std::istringstream ss(counts);
    ss >> V >> F >> E;
  }
  Mat positions(V, 3);
  for (int v = 0; v < V; ++v) {
    std::istringstream ss(next_content_line(in));
    ss >> positions(v, 0) >> positions(v, 1) >> positions(v, 2);
  }
  Eigen::MatrixX3i faces(F, 3);
  for (int f = 0; f < F; ++f) {
    std::istringstream ss(next_content_line(in));
    int n = 0;
    ss >> n >> faces(f, 0) >> faces(f, 1) >> faces(f, 2);
    require(n == 3, ErrorCode::BadConfig, "OFF face is not a triangle");
  }
  return build_mesh(positions, faces);
}

TriangleMesh load_obj(std::istream& in) {
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Vec3 p;
      ss >> p.x() >> p.y() >> p.z();
      verts.push_back(p);
    } else if (tag == "f") {
      std::array<int, 3> t{};
      for (int c = 0; c < 3; ++c) {
        std::string tok;
        ss >> tok;
        t[size_t(c)] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      tris.push_back(t);
    }
  }
  Mat positions(int(verts.size()), 3);
  for (size_t v = 0; v < verts.size(); ++v) positions.row(int(v)) = verts[v];
  Eigen::MatrixX3i faces(int(tris.size()), 3);
  for (size_t f = 0; f < tris.size(); ++f)
    for (int c = 0; c < 3; ++c) faces(int(f), c) = tris[f][size_t(c)];
  return build_mesh(positions, faces);
}

TriangleMesh load_pfmesh(std::istream& in) {
  std::string header = next_content_line(in);
  std::istringstream hs(header);
  std::string tag;
  int m = 0;
  hs >> tag >> m;
  require(tag == "PFMESH" && m >= 3, ErrorCode::BadConfig, "bad PFMESH header");
  int V = 0, F = 0;
  {
    std::istringstream ss(next_content_line(in));
    ss >> V >> F;
  }
  Mat positions(V, m);
  for (int v = 0; v < V; ++v) {
    std::istringstream ss(next_content_line(in));
    for (int c = 0; c < m; ++c) ss >> positions(v, c);
  }
  Eigen::MatrixX3i faces(F, 3);
  for (int f = 0; f < F; ++f) {
    std::istringstream ss(next_content_line(in));
    ss >> faces(f, 0) >> faces(f, 1) >> faces(f, 2);
  }
  return build_mesh(positions, faces);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

TriangleMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::FileNotFound, "cannot open " + path);
  if (ends_with(path, ".off") || ends_with(path, ".OFF")) return load_off(in);
  if (ends_with(path, ".obj") || ends_with(path, ".OBJ")) return load_obj(in);
  return load_pfmesh(in);
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::FileNotFound, "cannot write " + path);
  out.precision(17);
  if (ends_with(path, ".obj") || ends_with(path, ".OBJ")) {
    require(mesh.ambient_dim() == 3, ErrorCode::BadConfig, "OBJ requires m = 3");
    for (int v = 0; v < mesh.num_vertices(); ++v)
      out << "v " << mesh.positions()(v, 0) << ' ' << mesh.positions()(v, 1) << ' '
          << mesh.positions()(v, 2) << '\n';
    for (int f = 0; f < mesh.num_faces(); ++f)
      out << "f " << mesh.faces()(f, 0) + 1 << ' ' << mesh.faces()(f, 1) + 1 << ' '
          << mesh.faces()(f, 2) + 1 << '\n';
  } else if (ends_with(path, ".off") || ends_with(path, ".OFF")) {
    require(mesh.ambient_dim() == 3, ErrorCode::BadConfig, "OFF requires m = 3");
    out << "OFF\n"
        << mesh.num_vertices() << ' ' << mesh.num_faces() << " 0\n";
    for (int v = 0; v < mesh.num_vertices(); ++v)
      out << mesh.positions()(v, 0) << ' ' << mesh.positions()(v, 1) << ' '
          << mesh.positions()(v, 2) << '\n';
    for (int f = 0; f < mesh.num_faces(); ++f)
      out << "3 " << mesh.faces()(f, 0) << ' ' << mesh.faces()(f, 1) << ' '
          << mesh.faces()(f, 2) << '\n';
  } else {
    out << "PFMESH " << mesh.ambient_dim() << '\n'
        << mesh.num_vertices() << ' ' << mesh.num_faces() << '\n';
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      for (int c = 0; c < mesh.ambient_dim(); ++c)
        out << mesh.positions()(v, c) << (c + 1 == mesh.ambient_dim() ? '\n' : ' ');
    }
    for (int f = 0; f < mesh.num_faces(); ++f)
      out << mesh.faces()(f, 0) << ' ' << mesh.faces()(f, 1) << ' '
          << mesh.faces()(f, 2) << '\n';
  }
}

}  // namespace pflow
