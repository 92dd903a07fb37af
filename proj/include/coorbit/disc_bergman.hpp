// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "coorbit/affine_group.hpp"

namespace coorbit::disc {

using complexd = std::complex<double>;
using affine::GroupElement;

// Truncated power series sum a_k z^k; every test function is a polynomial.
struct PowerSeries {
  std::vector<complexd> coeffs;

  PowerSeries() = default;
  explicit PowerSeries(std::vector<complexd> c) : coeffs(std::move(c)) {}
  static PowerSeries monomial(int k, complexd c = 1.0);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const;
  complexd eval(complexd z) const;  // requires |z| < 1
};

// Radial rule in u = r^2: Gauss-Legendre is the default; tanh-sinh handles
// the nearly non-integrable Bergman weights (sigma close to 1), where the
// endpoint singularity (1-u)^{sigma-2} degrades Gauss-Legendre to
// O(n^{-2(sigma-1)}).
enum class RadialRule { GaussLegendre, TanhSinh };

// Polar quadrature for the area measure dz on the unit disc:
// radial rule in u = r^2 on [0,1] times uniform midpoints in angle.
// Weights sum to pi (exactly up to roundoff for Gauss-Legendre).
class DiscGrid {
 public:
  DiscGrid(int n_radial, int n_angular, RadialRule rule = RadialRule::GaussLegendre);

  int size() const { return static_cast<int>(w_.size()); }
  int n_radial() const { return nr_; }
  int n_angular() const { return nt_; }
  RadialRule rule() const { return rule_; }
  std::span<const double> z_re() const { return zre_; }
  std::span<const double> z_im() const { return zim_; }
  std::span<const double> weights() const { return w_; }
  std::span<const double> one_minus_r2() const { return omr2_; }
  double weight_sum() const;

 private:
  int nr_, nt_;
  RadialRule rule_;
  std::vector<double> zre_, zim_, w_, omr2_;
};

using DiscGridPtr = std::shared_ptr<const DiscGrid>;
DiscGridPtr make_disc_grid(int n_radial, int n_angular,
                           RadialRule rule = RadialRule::GaussLegendre);

// z^{-s}: exact product chains for integer and half-integer s, principal
// branch std::pow otherwise.
complexd pow_minus_s(complexd z, double s);

// Weight-s discrete series acting on f, evaluated at z:
//   (pi_s(g) f)(z) = (-conj(beta) z + alpha)^{-s} f((conj(alpha) z - beta)
//                                                   / (-conj(beta) z + alpha))
// with (alpha, beta) the SU(1,1) image of g.  Requires |z| < 1, s > 1.
complexd act(double s, const GroupElement& g, const PowerSeries& f, complexd z);

// <f, h>_s = (s-1)/pi * integral f conj(h) (1-|z|^2)^(s-2) dz, evaluated in
// closed form from coefficients (monomials are orthogonal with
// <z^k, z^k>_s = k! Gamma(s) / Gamma(s+k)).
complexd inner_product(const PowerSeries& f, const PowerSeries& h, double s);
complexd inner_product_quadrature(const PowerSeries& f, const PowerSeries& h,
                                  double s, const DiscGrid& grid);

// Voice transform against the constant analyzing vector u = 1:
//   W^s_u(f)(g) = conj(alpha)^{-s} f(beta / conj(alpha)).
complexd wavelet_closed(double s, const PowerSeries& f, const GroupElement& g);
complexd wavelet_quadrature(double s, const PowerSeries& f, const GroupElement& g,
                            const DiscGrid& grid);

// || f ||_{A^p_sigma} = (integral |f|^p (1-|z|^2)^(sigma-2) dz)^(1/p);
// sigma > 1 required, sigma <= 1.05 sets *near_divergent when provided.
double bergman_norm(const PowerSeries& f, double p, double sigma,
                    const DiscGrid& grid, bool* near_divergent = nullptr);

// The bijection G -> D,  (a,b) |-> ((a^2+b^2-1) - 2 i b) / ((1+a)^2 + b^2).
complexd group_to_disc(double a, double b);

struct NormCorrespondence {
  struct Entry {
    std::string id;
    double group_norm = 0.0;    // || W^s_u(f) ||_{L^p_r}
    double bergman = 0.0;       // || f ||_{A^p_{(s-r)p/2}}
    double ratio = 0.0;
    bool skipped = false;
  };
  std::vector<Entry> entries;
  double spread = 0.0;          // (max ratio - min ratio) / min ratio
  double chain_ratio = 0.0;     // closed-form prediction 2^{2r + 1/p}
  double chain_deviation = 0.0; // |mean ratio / chain_ratio - 1|
};

// Throws std::invalid_argument naming the violated inequality when the
// parameters leave  2-s < r+2/p < s  or  1 < (s-r)p/2 < (s-1)p+1.
void check_correspondence_parameters(double s, double r, double p);

// The exact Cayley change of variables gives
//   || W^s_u(f) ||_{L^p_r} = 2^{2r + 1/p} || f ||_{A^p_{(s-r)p/2}},
// independent of f and s; the measured ratios test this constancy.
double chain_predicted_ratio(double r, double p);

// Quadrature of || W^s_u(f) ||_{L^p_r}^p with the b-axis scaled per row,
// b = (a + 1/a) u: the substitution folds the full b-line into a fixed
// u-window, which the uniform-b grid cannot do for the slowly decaying
// integrands at (s-r)p/2 < 2.  The lambda window and resolutions come from
// the grid; u_max defaults to max(b_max/2, 40).
double voice_norm_scaled_b(double s, const PowerSeries& f, double p, double r,
                           const affine::GroupGrid& groupgrid, double u_max = 0.0);

NormCorrespondence norm_correspondence(double s, double r, double p,
                                       std::span<const PowerSeries> fs,
                                       std::span<const std::string> ids,
                                       const DiscGrid& discgrid,
                                       const affine::GroupGrid& groupgrid);

// Samples g -> W^s_u(f)(g) on a group grid (closed form at every node).
affine::GroupFunction sample_voice_transform(double s, const PowerSeries& f,
                                             affine::GridPtr grid);

}  // namespace coorbit::disc
