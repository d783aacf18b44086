#pragma once

#include "periodflow/chart.hpp"
#include "periodflow/core.hpp"
#include "periodflow/homology.hpp"
#include "periodflow/metric.hpp"

#include <random>

namespace pflow {

// ---- Mesh fixtures ---------------------------------------------------------

// Torus connectivity on an n1 x n2 periodic vertex grid, vertex (i,j) at
// index i*n2 + j, cells split along the (i,j)-(i+1,j+1) diagonal.
Eigen::MatrixX3i torus_grid_faces(int n1, int n2);

// Flat torus of modulus tau: torus connectivity with the exact PL metric of
// the lattice spanned by (1,0) and (Re tau, Im tau).  Positions are a dummy
// donut embedding (the metric, not the embedding, is the fixture).
struct FlatTorusMesh {
  TriangleMesh mesh;
  DiscreteMetric metric;
};
FlatTorusMesh flat_torus_mesh(int n, Complex tau);

// Torus of revolution, radii R > r, sampled over the conformal
// parametrization grid (n1 around the axis, n2 along the profile).
TriangleMesh revolution_torus_mesh(int n1, int n2, double R, double r);

// Product-of-circles torus in R^4 (square Clifford type when a == b).
TriangleMesh clifford_torus_mesh(int n, double a = 1.0, double b = 1.0);

// Round sphere (lat-long style triangulation closed at the poles).
TriangleMesh sphere_mesh(int n, double radius);

// Octahedron (genus 0 sanity fixture).
TriangleMesh octahedron_mesh();

// Two-holed surface: marching tetrahedra over the implicit double torus
// (x^2(1-x^2) - y^2)^2 + z^2/2 = c, then tangential smoothing with
// reprojection onto the level set.  `n` is the grid resolution along x.
TriangleMesh genus2_mesh(int n);

// Adds a seeded band-limited normal displacement of the given amplitude.
TriangleMesh perturb_mesh_normal(const TriangleMesh& mesh, double amplitude,
                                 int max_mode, unsigned seed);

// ---- Chart fixtures --------------------------------------------------------

// Immersed torus over a global periodic chart.
struct ChartSurface {
  PeriodicChart chart;
  VecField phi;  // R^m immersion sampled on the chart grid
};

// Square/rectangular Clifford-type torus in R^4; chart coordinates are exact
// conformal coordinates (the induced metric is a^2+... flat).
ChartSurface clifford_chart(int n, double a = 1.0, double b = 1.0);

// Torus of revolution in conformal coordinates; e^lambda = R + r cos(theta).
ChartSurface revolution_chart(int n1, int n2, double R, double r);

// Seeded band-limited normal perturbation (amplitude relative to 1).
ChartSurface perturb_chart_normal(const ChartSurface& surface, double amplitude,
                                  int max_mode, unsigned seed);

// Seeded band-limited periodic scalar field with values in [-1, 1]-ish scale.
Field random_band_limited(const PeriodicChart& chart, int max_mode, std::mt19937_64& rng);

// Smooth radial bump supported in |x| < 1 (C^infty, equals exp(1-1/(1-t))
// with t = |x|^2).
double bump1d(double t);

}  // namespace pflow
