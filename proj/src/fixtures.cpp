#include "periodflow/fixtures.hpp"

#include <cmath>
#include <map>

namespace pflow {

Eigen::MatrixX3i torus_grid_faces(int n1, int n2) {
  Eigen::MatrixX3i faces(2 * n1 * n2, 3);
  int f = 0;
  auto vid = [&](int i, int j) { return ((i + n1) % n1) * n2 + ((j + n2) % n2); };
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      faces.row(f++) << vid(i, j), vid(i + 1, j), vid(i + 1, j + 1);
      faces.row(f++) << vid(i, j), vid(i + 1, j + 1), vid(i, j + 1);
    }
  return faces;
}

FlatTorusMesh flat_torus_mesh(int n, Complex tau) {
  require(tau.imag() > 0, ErrorCode::BadConfig, "modulus needs Im tau > 0");
  const int n1 = n, n2 = n;
  // Dummy embedding: a donut with matching connectivity.
  Mat positions(n1 * n2, 3);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double u = 2 * M_PI * i / n1, v = 2 * M_PI * j / n2;
      positions.row(i * n2 + j) << (2 + 0.5 * std::cos(v)) * std::cos(u),
          (2 + 0.5 * std::cos(v)) * std::sin(u), 0.5 * std::sin(v);
    }
  TriangleMesh mesh = build_mesh(positions, torus_grid_faces(n1, n2));

  // Exact flat metric: vertex (i,j) sits at (i/n1) e1 + (j/n2) e2 with
  // e1 = (1,0), e2 = (Re tau, Im tau); edge lengths from index offsets.
  const Vec2 e1(1.0, 0.0), e2(tau.real(), tau.imag());
  Vec lengths(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int a = mesh.edges()(e, 0), b = mesh.edges()(e, 1);
    int di = b / n2 - a / n2, dj = b % n2 - a % n2;
    if (di > n1 / 2) di -= n1;
    if (di < -n1 / 2) di += n1;
    if (dj > n2 / 2) dj -= n2;
    if (dj < -n2 / 2) dj += n2;
    lengths[e] = ((double(di) / n1) * e1 + (double(dj) / n2) * e2).norm();
  }
  return {std::move(mesh), metric_from_edge_lengths(mesh, lengths)};
}

namespace {

// theta(s) inverts ds = r dtheta / (R + r cos theta); branch-safe via atan2.
double revolution_theta_of_s(double s, double R, double r) {
  const double rho = R / r;
  const double root = std::sqrt(rho * rho - 1.0);
  const double S = 2.0 * M_PI * r / std::sqrt(R * R - r * r);  // s-period
  // Map s into (-S/2, S/2].
  double sm = std::fmod(s, S);
  if (sm > 0.5 * S) sm -= S;
  if (sm < -0.5 * S) sm += S;
  const double chi = root * sm / (2.0 * r);
  const double k = std::sqrt((rho + 1.0) / (rho - 1.0));
  return 2.0 * std::atan2(k * std::sin(chi), std::cos(chi));
}

Vec3 revolution_point(double phi, double theta, double R, double r) {
  return Vec3((R + r * std::cos(theta)) * std::cos(phi),
              (R + r * std::cos(theta)) * std::sin(phi), r * std::sin(theta));
}

}  // namespace

TriangleMesh revolution_torus_mesh(int n1, int n2, double R, double r) {
  require(R > r && r > 0, ErrorCode::BadConfig, "need R > r > 0");
  const double S = 2.0 * M_PI * r / std::sqrt(R * R - r * r);
  Mat positions(n1 * n2, 3);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double phi = 2 * M_PI * i / n1;
      const double theta = revolution_theta_of_s(S * j / n2, R, r);
      positions.row(i * n2 + j) = revolution_point(phi, theta, R, r);
    }
  return build_mesh(positions, torus_grid_faces(n1, n2));
}

TriangleMesh clifford_torus_mesh(int n, double a, double b) {
  Mat positions(n * n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = 2 * M_PI * i / n, v = 2 * M_PI * j / n;
      positions.row(i * n + j) << a * std::cos(u), a * std::sin(u), b * std::cos(v),
          b * std::sin(v);
    }
  return build_mesh(positions, torus_grid_faces(n, n));
}

TriangleMesh sphere_mesh(int n, double radius) {
  // n latitude bands, 2n longitude samples, poles closed by fans.
  const int nlat = n, nlon = 2 * n;
  std::vector<Vec3> verts;
  verts.emplace_back(0, 0, radius);  // north
  for (int i = 1; i < nlat; ++i) {
    const double th = M_PI * i / nlat;
    for (int j = 0; j < nlon; ++j) {
      const double ph = 2 * M_PI * j / nlon;
      verts.emplace_back(radius * std::sin(th) * std::cos(ph),
                         radius * std::sin(th) * std::sin(ph), radius * std::cos(th));
    }
  }
  verts.emplace_back(0, 0, -radius);  // south
  const int south = int(verts.size()) - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * nlon + (j % nlon); };
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < nlon; ++j) tris.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i + 1 < nlat; ++i)
    for (int j = 0; j < nlon; ++j) {
      tris.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      tris.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  for (int j = 0; j < nlon; ++j)
    tris.push_back({south, ring(nlat - 1, j + 1), ring(nlat - 1, j)});
  Mat positions(int(verts.size()), 3);
  for (size_t v = 0; v < verts.size(); ++v) positions.row(int(v)) = verts[v];
  Eigen::MatrixX3i faces(int(tris.size()), 3);
  for (size_t f = 0; f < tris.size(); ++f)
    faces.row(int(f)) << tris[f][0], tris[f][1], tris[f][2];
  return build_mesh(positions, faces);
}

TriangleMesh octahedron_mesh() {
  Mat positions(6, 3);
  positions << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
  Eigen::MatrixX3i faces(8, 3);
  faces << 0, 2, 4, 2, 1, 4, 1, 3, 4, 3, 0, 4, 2, 0, 5, 1, 2, 5, 3, 1, 5, 0, 3, 5;
  return build_mesh(positions, faces);
}

namespace {

double genus2_implicit(const Vec3& p) {
  const double g = p.x() * p.x() * (1.0 - p.x() * p.x()) - p.y() * p.y();
  return g * g + 0.5 * p.z() * p.z() - 0.02;
}

Vec3 genus2_gradient(const Vec3& p) {
  const double g = p.x() * p.x() * (1.0 - p.x() * p.x()) - p.y() * p.y();
  Vec3 grad;
  grad.x() = 2.0 * g * (2.0 * p.x() - 4.0 * p.x() * p.x() * p.x());
  grad.y() = 2.0 * g * (-2.0 * p.y());
  grad.z() = p.z();
  return grad;
}

Vec3 project_to_level_set(Vec3 p) {
  for (int it = 0; it < 12; ++it) {
    const double f = genus2_implicit(p);
    const Vec3 g = genus2_gradient(p);
    const double g2 = g.squaredNorm();
    if (g2 < 1e-18) break;
    p -= g * (f / g2);
    if (std::abs(f) < 1e-14) break;
  }
  return p;
}

}  // namespace

TriangleMesh genus2_mesh(int n) {
  // Marching tetrahedra over [-1.35,1.35] x [-0.75,0.75] x [-0.4,0.4].
  const Vec3 lo(-1.35, -0.75, -0.4), hi(1.35, 0.75, 0.4);
  const int nx = n;
  const int ny = std::max(8, int(std::lround(n * (hi.y() - lo.y()) / (hi.x() - lo.x()))));
  const int nz = std::max(8, int(std::lround(n * (hi.z() - lo.z()) / (hi.x() - lo.x()))));
  auto node = [&](int i, int j, int k) {
    return Vec3(lo.x() + (hi.x() - lo.x()) * i / nx, lo.y() + (hi.y() - lo.y()) * j / ny,
                lo.z() + (hi.z() - lo.z()) * k / nz);
  };
  auto nid = [&](int i, int j, int k) {
    return (long(i) * (ny + 1) + j) * (nz + 1) + k;
  };

  std::map<std::pair<long, long>, int> edge_vertex;
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;

  auto corner_value = [&](int i, int j, int k) { return genus2_implicit(node(i, j, k)); };

  auto edge_point = [&](long a, const Vec3& pa, double fa, long b, const Vec3& pb,
                        double fb) {
    const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    const double t = fa / (fa - fb);
    const int idx = int(verts.size());
    verts.push_back(pa + t * (pb - pa));
    edge_vertex.emplace(key, idx);
    return idx;
  };

  // Six tetrahedra per cube, all sharing the main diagonal.
  static const int tets[6][4] = {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7},
                                 {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}};

  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        long ids[8];
        Vec3 pts[8];
        double vals[8];
        for (int c = 0; c < 8; ++c) {
          const int di = c & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
          ids[c] = nid(i + di, j + dj, k + dk);
          pts[c] = node(i + di, j + dj, k + dk);
          vals[c] = corner_value(i + di, j + dj, k + dk);
        }
        for (const auto& tet : tets) {
          int vid[4] = {tet[0], tet[1], tet[2], tet[3]};
          // Emit triangles on the f = 0 level inside this tet, oriented with
          // the normal toward f > 0 (the outside).
          int neg[4], pos[4], nn = 0, np = 0;
          for (int c = 0; c < 4; ++c)
            (vals[vid[c]] < 0 ? neg[nn++] : pos[np++]) = vid[c];
          if (nn == 0 || np == 0) continue;
          auto ev = [&](int a, int b) {
            return edge_point(ids[a], pts[a], vals[a], ids[b], pts[b], vals[b]);
          };
          // Parity of the (neg..., pos...) arrangement relative to the tet's
          // positive orientation decides the triangle winding.
          int perm[4];
          for (int c = 0; c < nn; ++c) perm[c] = neg[c];
          for (int c = 0; c < np; ++c) perm[nn + c] = pos[c];
          int parity = 1;
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) {
              int px = 0, py = 0;
              for (int c = 0; c < 4; ++c) {
                if (vid[c] == perm[x]) px = c;
                if (vid[c] == perm[y]) py = c;
              }
              if (px > py) parity = -parity;
            }
          // Tet orientation sign from the geometry (node ordering of the six
          // tets is not uniformly positive).
          const Vec3 d1 = pts[vid[1]] - pts[vid[0]], d2 = pts[vid[2]] - pts[vid[0]],
                     d3 = pts[vid[3]] - pts[vid[0]];
          if (d1.cross(d2).dot(d3) < 0) parity = -parity;

          if (nn == 1) {
            int t0 = ev(perm[0], perm[1]), t1 = ev(perm[0], perm[2]),
                t2 = ev(perm[0], perm[3]);
            if (parity > 0)
              tris.push_back({t0, t1, t2});
            else
              tris.push_back({t0, t2, t1});
          } else if (nn == 3) {
            int t0 = ev(perm[0], perm[3]), t1 = ev(perm[1], perm[3]),
                t2 = ev(perm[2], perm[3]);
            if (parity > 0)
              tris.push_back({t0, t2, t1});
            else
              tris.push_back({t0, t1, t2});
          } else {  // 2-2
            int a0 = ev(perm[0], perm[2]), a1 = ev(perm[0], perm[3]),
                b0 = ev(perm[1], perm[2]), b1 = ev(perm[1], perm[3]);
            if (parity > 0) {
              tris.push_back({a0, b1, a1});
              tris.push_back({a0, b0, b1});
            } else {
              tris.push_back({a0, a1, b1});
              tris.push_back({a0, b1, b0});
            }
          }
        }
      }

  Mat positions(int(verts.size()), 3);
  for (size_t v = 0; v < verts.size(); ++v) positions.row(int(v)) = verts[v];
  Eigen::MatrixX3i faces(int(tris.size()), 3);
  for (size_t f = 0; f < tris.size(); ++f)
    faces.row(int(f)) << tris[f][0], tris[f][1], tris[f][2];

  TriangleMesh rough = build_mesh(positions, faces);

  // Tangential smoothing with reprojection: improves the triangle quality
  // that marching tetrahedra leaves behind.
  Mat p = rough.positions();
  for (int round = 0; round < 12; ++round) {
    Mat acc = Mat::Zero(p.rows(), 3);
    Vec cnt = Vec::Zero(p.rows());
    for (int e = 0; e < rough.num_edges(); ++e) {
      const int a = rough.edges()(e, 0), b = rough.edges()(e, 1);
      acc.row(a) += p.row(b);
      acc.row(b) += p.row(a);
      cnt[a] += 1;
      cnt[b] += 1;
    }
    for (int v = 0; v < p.rows(); ++v) {
      Vec3 target = acc.row(v) / cnt[v];
      p.row(v) = project_to_level_set(0.5 * (Vec3(p.row(v)) + target));
    }
  }
  return build_mesh(p, rough.faces());
}

TriangleMesh perturb_mesh_normal(const TriangleMesh& mesh, double amplitude,
                                 int max_mode, unsigned seed) {
  require(mesh.ambient_dim() == 3, ErrorCode::BadConfig,
          "normal perturbation implemented for m = 3 meshes");
  // Area-weighted vertex normals.
  Mat normals = Mat::Zero(mesh.num_vertices(), 3);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Vec3 p0 = mesh.position3(mesh.faces()(f, 0));
    const Vec3 p1 = mesh.position3(mesh.faces()(f, 1));
    const Vec3 p2 = mesh.position3(mesh.faces()(f, 2));
    const Vec3 an = 0.5 * (p1 - p0).cross(p2 - p0);
    for (int c = 0; c < 3; ++c) normals.row(mesh.faces()(f, c)) += an;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  // Band-limited scalar field of the vertex positions.
  const int K = max_mode;
  std::vector<std::array<double, 7>> waves;
  for (int k = 0; k < 3 * K; ++k)
    waves.push_back({unif(rng), unif(rng), unif(rng), unif(rng), unif(rng), unif(rng),
                     unif(rng)});
  Mat p = mesh.positions();
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Vec3 x = mesh.position3(v);
    double s = 0.0;
    for (const auto& wv : waves)
      s += wv[6] * std::cos(wv[0] * K * x.x() + wv[1] * K * x.y() + wv[2] * K * x.z() +
                            3.0 * wv[3]);
    s /= std::sqrt(double(waves.size()));
    const Vec3 nrm = normals.row(v).normalized();
    p.row(v) += amplitude * s * nrm.transpose();
  }
  return build_mesh(p, mesh.faces());
}

ChartSurface clifford_chart(int n, double a, double b) {
  PeriodicChart chart(n, n, Vec2(2 * M_PI * a, 0), Vec2(0, 2 * M_PI * b));
  VecField phi = make_vecfield(4, chart);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = 2 * M_PI * i / n, v = 2 * M_PI * j / n;
      phi[0](i, j) = a * std::cos(u);
      phi[1](i, j) = a * std::sin(u);
      phi[2](i, j) = b * std::cos(v);
      phi[3](i, j) = b * std::sin(v);
    }
  return {std::move(chart), std::move(phi)};
}

ChartSurface revolution_chart(int n1, int n2, double R, double r) {
  require(R > r && r > 0, ErrorCode::BadConfig, "need R > r > 0");
  const double S = 2.0 * M_PI * r / std::sqrt(R * R - r * r);
  PeriodicChart chart(n1, n2, Vec2(2 * M_PI, 0), Vec2(0, S));
  VecField phi = make_vecfield(3, chart);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double ph = 2 * M_PI * i / n1;
      const double theta = revolution_theta_of_s(S * j / n2, R, r);
      const Vec3 p = revolution_point(ph, theta, R, r);
      phi[0](i, j) = p.x();
      phi[1](i, j) = p.y();
      phi[2](i, j) = p.z();
    }
  return {std::move(chart), std::move(phi)};
}

Field random_band_limited(const PeriodicChart& chart, int max_mode,
                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Field f = chart.zeros();
  const int n1 = chart.n1(), n2 = chart.n2();
  for (int p = -max_mode; p <= max_mode; ++p)
    for (int q = -max_mode; q <= max_mode; ++q) {
      if (p == 0 && q == 0) continue;
      const double cr = unif(rng), ci = unif(rng);
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          const double ang = 2 * M_PI * (double(p) * i / n1 + double(q) * j / n2);
          f(i, j) += cr * std::cos(ang) + ci * std::sin(ang);
        }
    }
  f /= std::sqrt(double((2 * max_mode + 1) * (2 * max_mode + 1) - 1));
  return f;
}

ChartSurface perturb_chart_normal(const ChartSurface& surface, double amplitude,
                                  int max_mode, unsigned seed) {
  const PeriodicChart& chart = surface.chart;
  const int m = vecfield_dim(surface.phi);
  std::mt19937_64 rng(seed);
  // Build an orthonormal basis of the normal space per node and displace
  // along a random band-limited combination.
  VecField du = chart.dx(surface.phi), dv = chart.dy(surface.phi);
  std::vector<Field> coeffs;
  const int ncodim = m - 2;
  for (int c = 0; c < ncodim; ++c) coeffs.push_back(random_band_limited(chart, max_mode, rng));

  ChartSurface out{surface.chart, surface.phi};
  for (int i = 0; i < chart.n1(); ++i)
    for (int j = 0; j < chart.n2(); ++j) {
      Eigen::VectorXd t1(m), t2(m);
      for (int c = 0; c < m; ++c) {
        t1[c] = du[size_t(c)](i, j);
        t2[c] = dv[size_t(c)](i, j);
      }
      t1.normalize();
      t2 -= t1 * t1.dot(t2);
      t2.normalize();
      // Gram-Schmidt a normal basis out of the ambient axes.
      std::vector<Eigen::VectorXd> normals;
      for (int axis = 0; axis < m && int(normals.size()) < ncodim; ++axis) {
        Eigen::VectorXd cand = Eigen::VectorXd::Unit(m, axis);
        cand -= t1 * t1.dot(cand) + t2 * t2.dot(cand);
        for (const auto& nb : normals) cand -= nb * nb.dot(cand);
        const double nrm = cand.norm();
        if (nrm > 0.3) normals.push_back(cand / nrm);
      }
      for (size_t c = 0; c < normals.size(); ++c)
        for (int comp = 0; comp < m; ++comp)
          out.phi[size_t(comp)](i, j) +=
              amplitude * coeffs[c](i, j) * normals[c][comp];
    }
  return out;
}

double bump1d(double t) {
  if (t >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t));
}

}  // namespace pflow
