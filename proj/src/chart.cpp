#include "periodflow/chart.hpp"

#include <unsupported/Eigen/FFT>

namespace pflow {

namespace {

// Signed integer frequency for index p on an n-periodic axis.
int freq_of_index(int p, int n) { return (p <= (n - 1) / 2) ? p : p - n; }

}  // namespace

PeriodicChart::PeriodicChart(int n1, int n2, const Vec2& u, const Vec2& v)
    : n1_(n1), n2_(n2), u_(u), v_(v) {
  require(n1 >= 4 && n2 >= 4, ErrorCode::BadConfig, "chart grid too small");
  const double det = u_.x() * v_.y() - u_.y() * v_.x();
  require(det > 0, ErrorCode::BadConfig, "chart lattice must be positively oriented");
  cell_area_ = det / (double(n1) * double(n2));

  // Dual lattice basis: ustar.u = 1, ustar.v = 0, etc.
  const Vec2 ustar(v_.y() / det, -v_.x() / det);
  const Vec2 vstar(-u_.y() / det, u_.x() / det);

  mult_dx_ = CField::Zero(n1_, n2_);
  mult_dy_ = CField::Zero(n1_, n2_);
  inv_laplace_ = CField::Zero(n1_, n2_);
  for (int p = 0; p < n1_; ++p) {
    for (int q = 0; q < n2_; ++q) {
      const int fp = freq_of_index(p, n1_);
      const int fq = freq_of_index(q, n2_);
      const Vec2 k = 2.0 * M_PI * (double(fp) * ustar + double(fq) * vstar);
      // Zero the unmatched Nyquist line so the derivative stays real and the
      // operator is exactly antisymmetric.
      const bool nyq1 = (n1_ % 2 == 0) && (p == n1_ / 2);
      const bool nyq2 = (n2_ % 2 == 0) && (q == n2_ / 2);
      if (!nyq1 && !nyq2) {
        mult_dx_(p, q) = Complex(0.0, k.x());
        mult_dy_(p, q) = Complex(0.0, k.y());
      }
      const double k2 = k.squaredNorm();
      inv_laplace_(p, q) = (fp == 0 && fq == 0) ? 0.0 : -1.0 / k2;
    }
  }
}

CField PeriodicChart::fft2(const CField& f, bool inverse) const {
  Eigen::FFT<double> fft;
  CField tmp(n1_, n2_);
  std::vector<Complex> in(n1_), out(n1_);
  // Transform along columns (first index).
  for (int j = 0; j < n2_; ++j) {
    for (int i = 0; i < n1_; ++i) in[size_t(i)] = f(i, j);
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
    for (int i = 0; i < n1_; ++i) tmp(i, j) = out[size_t(i)];
  }
  CField res(n1_, n2_);
  std::vector<Complex> in2(n2_), out2(n2_);
  for (int i = 0; i < n1_; ++i) {
    for (int j = 0; j < n2_; ++j) in2[size_t(j)] = tmp(i, j);
    if (inverse)
      fft.inv(out2, in2);
    else
      fft.fwd(out2, in2);
    for (int j = 0; j < n2_; ++j) res(i, j) = out2[size_t(j)];
  }
  return res;
}

void PeriodicChart::apply_multiplier(const CField& mult, const CField& in,
                                     CField* out) const {
  CField hat = fft2(in, false);
  hat *= mult;
  *out = fft2(hat, true);
}

Field PeriodicChart::dx(const Field& f) const {
  CField out;
  apply_multiplier(mult_dx_, f.cast<Complex>(), &out);
  return out.real();
}

Field PeriodicChart::dy(const Field& f) const {
  CField out;
  apply_multiplier(mult_dy_, f.cast<Complex>(), &out);
  return out.real();
}

CField PeriodicChart::dx(const CField& f) const {
  CField out;
  apply_multiplier(mult_dx_, f, &out);
  return out;
}

CField PeriodicChart::dy(const CField& f) const {
  CField out;
  apply_multiplier(mult_dy_, f, &out);
  return out;
}

CField PeriodicChart::dz(const CField& f) const {
  return 0.5 * (dx(f) - Complex(0, 1) * dy(f));
}

CField PeriodicChart::dzbar(const CField& f) const {
  return 0.5 * (dx(f) + Complex(0, 1) * dy(f));
}

Field PeriodicChart::poisson(const Field& f) const {
  CField out;
  apply_multiplier(inv_laplace_, f.cast<Complex>(), &out);
  return out.real();
}

CField PeriodicChart::poisson(const CField& f) const {
  CField out;
  apply_multiplier(inv_laplace_, f, &out);
  return out;
}

VecField PeriodicChart::dx(const VecField& f) const {
  VecField g;
  g.reserve(f.size());
  for (const Field& c : f) g.push_back(dx(c));
  return g;
}

VecField PeriodicChart::dy(const VecField& f) const {
  VecField g;
  g.reserve(f.size());
  for (const Field& c : f) g.push_back(dy(c));
  return g;
}

Field PeriodicChart::coord_x() const {
  Field fx(n1_, n2_);
  for (int i = 0; i < n1_; ++i)
    for (int j = 0; j < n2_; ++j) fx(i, j) = point(i, j).x();
  return fx;
}

Field PeriodicChart::coord_y() const {
  Field fy(n1_, n2_);
  for (int i = 0; i < n1_; ++i)
    for (int j = 0; j < n2_; ++j) fy(i, j) = point(i, j).y();
  return fy;
}

double dot_integral(const PeriodicChart& chart, const VecField& a, const VecField& b) {
  require(a.size() == b.size(), ErrorCode::MeshMismatch, "vector field dims differ");
  double s = 0.0;
  for (size_t c = 0; c < a.size(); ++c) s += (a[c] * b[c]).sum();
  return s * chart.cell_area();
}

}  // namespace pflow
