// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace coorbit::affine {

using complexd = std::complex<double>;

// Point (a, b), a > 0, of the group of upper-triangular unimodular 2x2
// matrices [[a, b], [0, 1/a]].  Left Haar measure is da db / a^2.
struct GroupElement {
  double a;
  double b;
  GroupElement(double a_, double b_);
};

GroupElement identity();
GroupElement mul(const GroupElement& g1, const GroupElement& g2);
GroupElement inv(const GroupElement& g);

// Image in SU(1,1); |alpha|^2 - |beta|^2 = 1.
struct Su11Element {
  complexd alpha;
  complexd beta;
};

Su11Element cayley(const GroupElement& g);
Su11Element su11_mul(const Su11Element& x, const Su11Element& y);

// Submultiplicative weight w_r(a,b) = 2^r [(a + 1/a)^2 + b^2]^(r/2).
double weight(double r, const GroupElement& g);

struct Window {
  double a_min;
  double a_max;
  double b_max;
};

// Exact Haar measure of the window box.
double window_haar_mass(const Window& w);

// Composite-midpoint quadrature grid in (log a, b) coordinates.  In these
// coordinates da db / a^2 = e^{-lambda} dlambda db, so node weights are
// e^{-lambda} * dlambda * db.  Node order is row-major (ia, ib), which is
// the documented deterministic summation order for every reduction.
class GroupGrid {
 public:
  GroupGrid(const Window& window, int n_a, int n_b);

  int na() const { return n_a_; }
  int nb() const { return n_b_; }
  int size() const { return n_a_ * n_b_; }
  int index(int ia, int ib) const { return ia * n_b_ + ib; }

  const Window& window() const { return window_; }
  double lambda(int ia) const { return lambda0_ + (ia + 0.5) * dlambda_; }
  double b_of(int ib) const { return -window_.b_max + (ib + 0.5) * db_; }
  double dlambda() const { return dlambda_; }
  double db() const { return db_; }
  double lambda_min() const { return lambda0_; }

  GroupElement element(int idx) const { return {a_[idx], b_[idx]}; }
  double total_weight() const;

  std::span<const double> a() const { return a_; }
  std::span<const double> inv_a() const { return inv_a_; }
  std::span<const double> b() const { return b_; }
  std::span<const double> weights() const { return w_; }

  // Central half of the window in both chart directions; convolution and
  // operator identities are trusted only here (no periodization exists on
  // this group, so edges see truncated integrals).
  bool inner_half(int idx) const;
  std::vector<int> inner_indices() const;

 private:
  Window window_;
  int n_a_, n_b_;
  double lambda0_, dlambda_, db_;
  std::vector<double> a_, inv_a_, b_, w_;
};

using GridPtr = std::shared_ptr<const GroupGrid>;

GridPtr make_haar_grid(const Window& window, int n_a, int n_b);

// Complex samples over a shared grid, stored split re/im for the kernels.
class GroupFunction {
 public:
  explicit GroupFunction(GridPtr grid);

  static GroupFunction sample(GridPtr grid,
                              const std::function<complexd(const GroupElement&)>& f);

  const GroupGrid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  int size() const { return static_cast<int>(re.size()); }
  complexd at(int idx) const { return {re[idx], im[idx]}; }
  void set(int idx, complexd v) {
    re[idx] = v.real();
    im[idx] = v.imag();
  }
  double max_abs(bool inner_only = false) const;

  // Tensor cubic (Catmull-Rom) interpolation in (log a, b); zero outside
  // the window.
  complexd interpolate(const GroupElement& g) const;

  std::vector<double> re, im;

 private:
  GridPtr grid_;
};

// Matrix coefficient kernel K(g) = scale * 2^s (a + 1/a - i b)^(-s) of the
// weight-s discrete series with analyzing vector 1; |K| when absolute.
// With scale = 1 this is exactly the voice transform of the analyzing
// vector against itself.
struct DiscSeriesKernel {
  double s;
  double scale = 1.0;
  bool absolute = false;
  complexd operator()(const GroupElement& g) const;
};

// Group convolution (F * K)(y) = sum_i w_i F(x_i) K(x_i^{-1} y) over the
// grid of F, evaluated at every node (or only the inner half when
// inner_only is set; outside values are then zero).
GroupFunction convolve(const GroupFunction& F,
                       const std::function<complexd(const GroupElement&)>& K,
                       bool inner_only = false);
GroupFunction convolve(const GroupFunction& F, const DiscSeriesKernel& K,
                       bool inner_only = false);
// Kernel given by samples on its own grid; values are cubic-interpolated
// and zero outside the kernel's window.
GroupFunction convolve_sampled_kernel(const GroupFunction& F, const GroupFunction& K,
                                      bool inner_only = false);

// || F ||_{L^p_r} = (sum_i w_i (|F_i| w_r(x_i))^p)^(1/p); p >= 1.
double lp_norm(const GroupFunction& F, double p, double r, bool inner_only = false);

// Separated quadrature of  integral ((a+1/a)^2 + b^2)^(-t) a^rho da db/a^2
// over |log a| <= L with the full b-range folded in exactly via b = c u,
// c = a + 1/a.  Finite iff 2(1-t) < rho < 2t; the window ladder in L
// exposes the boundary growth.
double int1_probe(double t, double rho, double L, int n_lambda = 4096,
                  int n_u = 4096);

}  // namespace coorbit::affine
