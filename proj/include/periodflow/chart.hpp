#pragma once

#include "periodflow/core.hpp"

#include <array>

namespace pflow {

// Scalar field sampled on the n1 x n2 index lattice of a flat torus chart.
using Field = Eigen::ArrayXXd;
using CField = Eigen::ArrayXXcd;
// R^m-valued field, one scalar field per ambient component.
using VecField = std::vector<Field>;

// Global periodic chart over the flat torus R^2 / (Z u + Z v).  Sample points
// are x(i,j) = (i/n1) u + (j/n2) v; Fourier modes live on the dual lattice, so
// spectral derivatives are exact on trigonometric polynomials of the lattice.
//
// First-derivative multipliers have their Nyquist modes zeroed, which makes
// dx/dy exactly antisymmetric as real-linear maps on grid values; gradient
// assembly via transposes relies on that.
class PeriodicChart {
 public:
  PeriodicChart(int n1, int n2, const Vec2& u, const Vec2& v);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  const Vec2& lattice_u() const { return u_; }
  const Vec2& lattice_v() const { return v_; }
  // Area element attached to one grid node.
  double cell_area() const { return cell_area_; }
  double torus_area() const { return cell_area_ * n1_ * n2_; }

  Vec2 point(int i, int j) const {
    return u_ * (double(i) / n1_) + v_ * (double(j) / n2_);
  }

  Field zeros() const { return Field::Zero(n1_, n2_); }
  Field constant(double c) const { return Field::Constant(n1_, n2_, c); }

  // Cartesian spectral derivatives in the chart coordinates.
  Field dx(const Field& f) const;
  Field dy(const Field& f) const;
  CField dx(const CField& f) const;
  CField dy(const CField& f) const;

  // d/dz = (dx - i dy)/2 and d/dzbar on complex fields.
  CField dz(const CField& f) const;
  CField dzbar(const CField& f) const;

  // Zero-mean solution of the flat Poisson equation (dxx + dyy) u = f.
  // The k = 0 mode of f is discarded (rhs is projected to zero mean).
  Field poisson(const Field& f) const;
  CField poisson(const CField& f) const;

  double mean(const Field& f) const { return f.mean(); }
  double integral(const Field& f) const { return f.sum() * cell_area_; }
  Complex integral(const CField& f) const { return f.sum() * cell_area_; }

  VecField dx(const VecField& f) const;
  VecField dy(const VecField& f) const;

  // Used by sampled analytic fixtures: chart coordinates of every node.
  Field coord_x() const;
  Field coord_y() const;

 private:
  CField fft2(const CField& f, bool inverse) const;
  void apply_multiplier(const CField& mult, const CField& in, CField* out) const;

  int n1_, n2_;
  Vec2 u_, v_;
  double cell_area_;
  CField mult_dx_, mult_dy_;   // i k multipliers
  CField inv_laplace_;         // -1/|k|^2, zero at k = 0
};

inline VecField make_vecfield(int m, const PeriodicChart& chart) {
  return VecField(m, chart.zeros());
}

inline int vecfield_dim(const VecField& f) { return int(f.size()); }

double dot_integral(const PeriodicChart& chart, const VecField& a, const VecField& b);

}  // namespace pflow
