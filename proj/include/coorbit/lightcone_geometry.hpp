// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace coorbit::cone {

using Vec = std::vector<double>;

// Row-major n x n real matrix with the few operations the cone needs.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  static Matrix identity(int n);
  double& at(int i, int j) { return a[i * n + j]; }
  double at(int i, int j) const { return a[i * n + j]; }
  Vec apply(std::span<const double> x) const;
  Matrix operator*(const Matrix& o) const;
};

// B(x, y) = x_n y_n - x_{n-1} y_{n-1} - ... - x_1 y_1.
double bform(std::span<const double> x, std::span<const double> y);

// Forward cone membership: B(x,x) > 0 and x_n > 0; n >= 3 throughout.
bool in_cone(std::span<const double> x);
double cone_determinant(std::span<const double> x);  // sqrt(B(x,x)), throws off-cone

Vec base_point(int n);  // e = (0, ..., 0, 1)

// Iwasawa factors of the identity component of the Lorentz group; each
// preserves B.
Matrix boost(double t, int n);                 // a_t
Matrix shear(std::span<const double> c);       // n_c, c in R^{n-2}
Matrix rotation(const Matrix& sigma);          // k_sigma, sigma in SO(n-1)

// How far a matrix is from preserving B, probed on random vectors.
double bform_defect(const Matrix& m, int samples = 1000, unsigned seed = 3);

struct IwasawaCoords {
  double gamma = 1.0;
  double t = 0.0;
  Vec c;  // length n - 2
};

// x = gamma a_t n_c e with gamma = det(x), c = -gamma^{-1}(x_2..x_{n-1}),
// t = -ln(gamma^{-1}(x_n - x_1)).
IwasawaCoords coords_from_point(std::span<const double> x);
Vec point_from_coords(const IwasawaCoords& co, int n);

Matrix frame_matrix(const IwasawaCoords& co, int n);    // gamma a_t n_c
Matrix frame_inverse(const IwasawaCoords& co, int n);   // gamma^{-1} n_{-c} a_{-t}

double modular(const IwasawaCoords& co, int n);  // e^{(n-2) t}

// Invariant distance from w to x: with y = h_w^{-1} x,
//   d^2 = (ln det y)^2 + artanh(rho_perp / y_n)^2,
// rho_perp = |(y_1..y_{n-1})|.  Returns +inf when y leaves the cone.
double invariant_distance(std::span<const double> w, std::span<const double> x);
// Same with h_w^{-1} precomputed (hot loops).
double invariant_distance_frame(const Matrix& frame_inv, std::span<const double> x);
bool in_ball(double rho, std::span<const double> w, std::span<const double> x);

// Coordinate box in (gamma, t, c); the c-box is the same interval per axis.
struct Region {
  int n = 3;
  double gamma_lo = 0.5, gamma_hi = 2.0;
  double t_lo = -1.0, t_hi = 1.0;
  double c_lo = -1.0, c_hi = 1.0;
};

struct WhitneyCover {
  double delta = 0.0;
  int n = 3;
  Region region;
  std::vector<Vec> points;
  std::vector<IwasawaCoords> coords;
  int overlap = 0;        // measured max ball multiplicity over the full pool
  int probe_per_axis = 0; // construction candidate pool resolution
  unsigned seed = 0;
};

// Greedy farthest-point insertion over a probe grid of the region (probes
// shuffled by seed for tie-breaking), keeping pairwise distances >= delta;
// maximality makes the delta-balls cover every candidate probe.  The
// construction certifies itself on its pool and throws on a defect.
WhitneyCover whitney_cover(const Region& region, double delta, int probe_per_axis,
                           unsigned seed = 1);

struct CoverCertificate {
  bool half_disjoint = false;  // no probe in two delta/2 balls
  bool covered = false;        // every probe in some delta ball
  int max_overlap = 0;
  double max_min_dist = 0.0;
  long probes = 0;
};

// Certify on every subsample_stride-th probe of the construction pool;
// stride 1 is the full pool, stride 10 the 10x-sparser baseline.  Keeping
// certification probes inside the pool makes greedy maximality an exact
// coverage guarantee rather than a discretization-limited one.
CoverCertificate certify_cover(const WhitneyCover& cover, int subsample_stride = 1);

}  // namespace coorbit::cone
