// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "coorbit/lightcone_geometry.hpp"

namespace coorbit::besov {

using complexd = std::complex<double>;
using cone::IwasawaCoords;
using cone::Region;
using cone::Vec;
using cone::WhitneyCover;

// Centered box grid: axis i holds dims[i] (a power of two, >= 4) nodes at
// coordinates (j - dims[i]/2) * delta[i].  Storage is row-major with the
// last axis fastest; that order is the deterministic reduction order.
class BoxGrid {
 public:
  BoxGrid(std::vector<int> dims, std::vector<double> delta);

  int n() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<double>& delta() const { return delta_; }
  long size() const { return size_; }
  double coord(int axis, int idx) const {
    return (idx - dims_[axis] / 2) * delta_[axis];
  }
  double cell() const;  // prod delta
  double extent(int axis) const { return dims_[axis] * delta_[axis]; }

  // Paired grid with delta_w = 2 pi / (N delta_x) per axis.
  BoxGrid dual() const;
  bool paired_with(const BoxGrid& o) const;

  Vec node(long idx) const;
  long index(const std::vector<int>& iv) const;

 private:
  std::vector<int> dims_;
  std::vector<double> delta_;
  long size_;
};

using BoxGridPtr = std::shared_ptr<const BoxGrid>;
BoxGridPtr make_box_grid(std::vector<int> dims, std::vector<double> delta);

struct Field {
  BoxGridPtr grid;
  std::vector<complexd> v;

  explicit Field(BoxGridPtr g) : grid(std::move(g)), v(grid->size(), complexd(0.0)) {}
  double l2_mass() const;  // sum |v|^2 * cell
  double lp_norm(double p) const;
};

// Fourier transform adapted to the Lorentzian pairing: phases e^{-i B(x,w)}
// split per axis into e^{+i x w} on the spatial axes and e^{-i x w} on the
// last axis.  Unitary normalization (2 pi)^{-n/2}; exact inverse.
Field bfourier(const Field& f);
Field bfourier_inv(const Field& f);

// bfourier(f * g) = (2 pi)^{n/2} bfourier(f) bfourier(g); computed in the
// Fourier domain with a wraparound guard on the support bounding boxes.
Field fourier_convolve(const Field& f, const Field& g);

// Smooth plateau profile: 1 on [0, 1], 0 beyond 2, C-infinity between.
double plateau_profile(double d_over_delta);

// f given by its Fourier transform: a radial bump (in the invariant metric)
// of the given width centered at w0 in the cone.  SmoothExp is the
// infinitely differentiable profile exp(1 - 1/(1-t^2)); its transform
// decays like exp(-c sqrt(|x|)).  PolynomialEdge is (1-t^2)^7, whose
// transform has clean (1+|x|^2)^{-4} tails on desk-scale grids.
// Construction validates that the support keeps a margin inside the grid.
enum class BumpProfile { SmoothExp, PolynomialEdge };

struct ConeTestFunction {
  Field w_space;
  Field x_space;
  Vec center;
  double width = 0.0;
};
ConeTestFunction cone_bump(const BoxGridPtr& wgrid, const Vec& w0, double width,
                           BumpProfile profile = BumpProfile::SmoothExp);

// Littlewood-Paley multipliers psi_j = phi_j / Phi from a certified cover:
// phi_j(w) = plateau_profile(d(w_j, w) / delta).  Sum is exactly 1 at every
// node within delta of some w_j.
struct LPDecomposition {
  WhitneyCover cover;
  BoxGridPtr wgrid;
  std::vector<std::vector<std::pair<long, double>>> multipliers;  // per ball
  std::vector<char> covered;   // per node
  long covered_nodes = 0;
  double sum_defect = 0.0;      // max |sum psi - 1| over covered nodes
  double plateau_fraction = 0.0;  // share of half-ball nodes with psi = 1
};
LPDecomposition lp_partition(const WhitneyCover& cover, const BoxGridPtr& wgrid);

// || f ||_{B^{p,q}_s} = (sum_j det(w_j)^{-s} || f * psi_j ||_p^q)^{1/q}
// for f given in the Fourier domain.  For p = 2 the piece norms are
// evaluated by the Plancherel identity; otherwise each piece is inverse
// transformed.  *offband is set when more than 0.1% of the Fourier mass of
// f lies outside the covered nodes.
double besov_norm(const Field& f_w, double p, double q, double s_index,
                  const LPDecomposition& lp, bool* offband = nullptr);

// Wavelet analysis against an analyzing function u with compactly
// supported Fourier transform: slices over b are
//   W(h, .) = (2 pi)^{n/2} bfourier_inv( ftilde(w) gamma^{n/2}
//                                        conj(utilde(gamma n_{-c} a_{-t} w)) ),
// the dilated utilde read off by trilinear interpolation.
class ConeWaveletTransform {
 public:
  explicit ConeWaveletTransform(Field u_w);

  const Field& analyzing() const { return u_; }
  Field slice(const Field& f_w, const IwasawaCoords& co) const;
  // sqrt(integral |W(h, b)|^2 db), evaluated in the Fourier domain.
  double slice_l2(const Field& f_w, const IwasawaCoords& co) const;

 private:
  // multiplier gamma^{n/2} conj(utilde(gamma n_{-c} a_{-t} w)) times f
  void product_field(const Field& f_w, const IwasawaCoords& co,
                     std::vector<complexd>& out) const;
  Field u_;
  std::vector<int> lo_, hi_;  // support bounding box of utilde (node index)
  double interp(const Vec& w) const;
};

// Midpoint grid in (log gamma, t, c) with node weights for the measure
// d gamma dt dc / gamma^{n+1}.
class HGrid {
 public:
  HGrid(const Region& region, int n_gamma, int n_t, int n_c);
  long size() const { return size_; }
  int n() const { return region_.n; }
  const Region& region() const { return region_; }
  IwasawaCoords coords(long idx) const;
  double weight0(long idx) const;
  HGrid refined(int factor) const;

 private:
  Region region_;
  int ng_, nt_, nc_;
  long size_;
};

struct ConeWaveletField {
  std::shared_ptr<const HGrid> h;
  BoxGridPtr bgrid;
  std::vector<complexd> values;  // h-major, b fastest
};

ConeWaveletField materialize(const ConeWaveletTransform& wt, const Field& f_w,
                             std::shared_ptr<const HGrid> h);

// || W ||_{L^{p,q}_s}: nested quadrature of the mixed norm with the inner
// L^p over b and the outer weighted L^q over the group.
double mixed_norm(const ConeWaveletField& W, double p, double q, double s);
// Same value computed slice-by-slice without materializing; p = 2 slices
// use the Plancherel shortcut (no transforms).
double mixed_norm_streaming(const ConeWaveletTransform& wt, const Field& f_w,
                            const HGrid& h, double p, double q, double s);

// C_u = integral over the cone of |utilde|^2 det(w)^{2(1-n)}
//       (w_n - w_1)^{n-2} dw.
double admissibility_constant(const Field& u_w);

// integral over the group of |W_u(u)|^2 (Haar), for the reproducing
// identity cross-check against admissibility_constant * ||u||^2.
double group_wavelet_l2_mass(const ConeWaveletTransform& wt, const HGrid& h);

struct EquivalenceReport {
  struct Entry {
    std::string id;
    double besov = 0.0;
    double lpqs = 0.0;
    double rho = 0.0;
  };
  std::vector<Entry> per_function;
  double c_emp = 0.0;             // max rho / min rho
  double c_emp_refined = 0.0;     // H-grid refined by 2 per axis
  double refinement_drift = 0.0;  // |refined / base - 1|
  double c_emp_alt = 0.0;         // independently generated cover
  double alt_drift = 0.0;
  double sigma = 0.0;             // Besov smoothness actually used
};

// rho(f) = || W_u f ||_{L^{p,q}_s} / || f ||_{B^{p,q}_sigma} with
// sigma = s + n q / 2 - n across the family; boundedness and stability of
// C_emp = max/min are the testable content.
EquivalenceReport equivalence_experiment(
    double p, double q, double s, const std::vector<ConeTestFunction>& family,
    const std::vector<std::string>& ids, const LPDecomposition& lp,
    const ConeWaveletTransform& wt, const HGrid& h,
    const LPDecomposition* alt_lp = nullptr, int refine_factor = 2);

}  // namespace coorbit::besov
