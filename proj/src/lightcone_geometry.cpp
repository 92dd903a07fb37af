// SPDX-License-Identifier: Apache-2.0
#include "coorbit/lightcone_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace coorbit::cone {

Matrix Matrix::identity(int n) {
  Matrix m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Vec Matrix::apply(std::span<const double> x) const {
  Vec y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r;
  r.n = n;
  r.a.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double v = at(i, k);
      for (int j = 0; j < n; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

double bform(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("bform requires equal dimensions n >= 3");
  const std::size_t n = x.size();
  double s = x[n - 1] * y[n - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) s -= x[i] * y[i];
  return s;
}

bool in_cone(std::span<const double> x) {
  return x.size() >= 3 && x[x.size() - 1] > 0.0 && bform(x, x) > 0.0;
}

double cone_determinant(std::span<const double> x) {
  if (!in_cone(x))
    throw std::invalid_argument("cone determinant requires B(x,x) > 0, x_n > 0");
  return std::sqrt(bform(x, x));
}

Vec base_point(int n) {
  Vec e(n, 0.0);
  e[n - 1] = 1.0;
  return e;
}

Matrix boost(double t, int n) {
  Matrix m = Matrix::identity(n);
  const double ch = std::cosh(t), sh = std::sinh(t);
  m.at(0, 0) = ch;
  m.at(0, n - 1) = sh;
  m.at(n - 1, 0) = sh;
  m.at(n - 1, n - 1) = ch;
  return m;
}

Matrix shear(std::span<const double> c) {
  const int n = static_cast<int>(c.size()) + 2;
  if (n < 3) throw std::invalid_argument("shear requires dimension n >= 3");
  Matrix m = Matrix::identity(n);
  double c2 = 0.0;
  for (double v : c) c2 += v * v;
  m.at(0, 0) = 1.0 - 0.5 * c2;
  m.at(0, n - 1) = 0.5 * c2;
  m.at(n - 1, 0) = -0.5 * c2;
  m.at(n - 1, n - 1) = 1.0 + 0.5 * c2;
  for (int i = 0; i < n - 2; ++i) {
    m.at(0, i + 1) = -c[i];
    m.at(n - 1, i + 1) = -c[i];
    m.at(i + 1, 0) = c[i];
    m.at(i + 1, n - 1) = -c[i];
  }
  return m;
}

namespace {

double det_small(const Matrix& m) {
  // Gaussian elimination with partial pivoting.
  Matrix a = m;
  double det = 1.0;
  for (int col = 0; col < a.n; ++col) {
    int piv = col;
    for (int r = col + 1; r < a.n; ++r)
      if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
    if (piv != col) {
      for (int j = 0; j < a.n; ++j) std::swap(a.a[piv * a.n + j], a.a[col * a.n + j]);
      det = -det;
    }
    const double d = a.at(col, col);
    if (d == 0.0) return 0.0;
    det *= d;
    for (int r = col + 1; r < a.n; ++r) {
      const double f = a.at(r, col) / d;
      for (int j = col; j < a.n; ++j) a.at(r, j) -= f * a.at(col, j);
    }
  }
  return det;
}

}  // namespace

Matrix rotation(const Matrix& sigma) {
  const int k = sigma.n;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double dot = 0.0;
      for (int l = 0; l < k; ++l) dot += sigma.at(l, i) * sigma.at(l, j);
      if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw std::invalid_argument("rotation block is not orthogonal");
    }
  if (std::abs(det_small(sigma) - 1.0) > 1e-10)
    throw std::invalid_argument("rotation block must have determinant +1");
  Matrix m = Matrix::identity(k + 1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m.at(i, j) = sigma.at(i, j);
  return m;
}

double bform_defect(const Matrix& m, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto u = [&rng]() { return ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0; };
  double worst = 0.0;
  Vec x(m.n), y(m.n);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < m.n; ++i) {
      x[i] = u();
      y[i] = u();
    }
    const Vec mx = m.apply(x), my = m.apply(y);
    worst = std::max(worst, std::abs(bform(mx, my) - bform(x, y)));
  }
  return worst;
}

IwasawaCoords coords_from_point(std::span<const double> x) {
  const double gamma = cone_determinant(x);
  const int n = static_cast<int>(x.size());
  IwasawaCoords co;
  co.gamma = gamma;
  co.c.resize(n - 2);
  for (int i = 0; i < n - 2; ++i) co.c[i] = -x[i + 1] / gamma;
  co.t = -std::log((x[n - 1] - x[0]) / gamma);
  return co;
}

Vec point_from_coords(const IwasawaCoords& co, int n) {
  if (!(co.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (static_cast<int>(co.c.size()) != n - 2)
    throw std::invalid_argument("c must have dimension n - 2");
  double c2 = 0.0;
  for (double v : co.c) c2 += v * v;
  Vec x(n, 0.0);
  const double et = std::exp(co.t);
  x[0] = co.gamma * (std::sinh(co.t) + 0.5 * et * c2);
  for (int i = 0; i < n - 2; ++i) x[i + 1] = -co.gamma * co.c[i];
  x[n - 1] = co.gamma * (std::cosh(co.t) + 0.5 * et * c2);
  return x;
}

Matrix frame_matrix(const IwasawaCoords& co, int n) {
  Matrix m = boost(co.t, n) * shear(co.c);
  for (double& v : m.a) v *= co.gamma;
  return m;
}

Matrix frame_inverse(const IwasawaCoords& co, int n) {
  Vec neg(co.c);
  for (double& v : neg) v = -v;
  Matrix m = shear(neg) * boost(-co.t, n);
  for (double& v : m.a) v /= co.gamma;
  return m;
}

double modular(const IwasawaCoords& co, int n) {
  if (n < 3) throw std::invalid_argument("dimension n >= 3 required");
  return std::exp((n - 2.0) * co.t);
}

double invariant_distance_frame(const Matrix& frame_inv, std::span<const double> x) {
  const int n = frame_inv.n;
  const Vec y = frame_inv.apply(x);
  if (!in_cone(y)) return std::numeric_limits<double>::infinity();
  const double det = std::sqrt(bform(y, y));
  double perp2 = 0.0;
  for (int i = 0; i < n - 1; ++i) perp2 += y[i] * y[i];
  const double theta = std::atanh(std::sqrt(perp2) / y[n - 1]);
  const double l = std::log(det);
  return std::sqrt(l * l + theta * theta);
}

double invariant_distance(std::span<const double> w, std::span<const double> x) {
  const IwasawaCoords cw = coords_from_point(w);
  return invariant_distance_frame(frame_inverse(cw, static_cast<int>(w.size())), x);
}

bool in_ball(double rho, std::span<const double> w, std::span<const double> x) {
  if (!(rho > 0.0)) throw std::invalid_argument("ball radius must be positive");
  const double d = invariant_distance(w, x);
  return d < rho;
}

namespace {

std::vector<Vec> region_probes(const Region& region, int per_axis, unsigned seed) {
  const int ncax = region.n - 2;
  const double lg_lo = std::log(region.gamma_lo), lg_hi = std::log(region.gamma_hi);
  std::vector<Vec> probes;
  std::vector<int> idx(ncax, 0);
  // Midpoint lattice in (log gamma, t, c...).
  const long total = static_cast<long>(per_axis) * per_axis *
                     static_cast<long>(std::pow(per_axis, ncax));
  probes.reserve(total);
  std::vector<double> cvals(per_axis), tvals(per_axis), gvals(per_axis);
  for (int i = 0; i < per_axis; ++i) {
    gvals[i] = std::exp(lg_lo + (i + 0.5) * (lg_hi - lg_lo) / per_axis);
    tvals[i] = region.t_lo + (i + 0.5) * (region.t_hi - region.t_lo) / per_axis;
    cvals[i] = region.c_lo + (i + 0.5) * (region.c_hi - region.c_lo) / per_axis;
  }
  IwasawaCoords co;
  co.c.resize(ncax);
  for (int ig = 0; ig < per_axis; ++ig)
    for (int it = 0; it < per_axis; ++it) {
      co.gamma = gvals[ig];
      co.t = tvals[it];
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        for (int k = 0; k < ncax; ++k) co.c[k] = cvals[idx[k]];
        probes.push_back(point_from_coords(co, region.n));
        int k = 0;
        for (; k < ncax; ++k) {
          if (++idx[k] < per_axis) break;
          idx[k] = 0;
        }
        if (k == ncax) break;
      }
    }
  std::mt19937_64 rng(seed);
  std::shuffle(probes.begin(), probes.end(), rng);
  return probes;
}

}  // namespace

WhitneyCover whitney_cover(const Region& region, double delta, int probe_per_axis,
                           unsigned seed) {
  if (!(delta > 0.0)) throw std::invalid_argument("cover radius delta must be > 0");
  if (region.n < 3) throw std::invalid_argument("dimension n >= 3 required");
  if (!(region.gamma_lo > 0.0) || !(region.gamma_hi >= region.gamma_lo) ||
      !(region.t_hi >= region.t_lo) || !(region.c_hi >= region.c_lo))
    throw std::invalid_argument("region is empty");

  const auto probes = region_probes(region, probe_per_axis, seed);
  const long np = static_cast<long>(probes.size());
  std::vector<double> min_dist(np, std::numeric_limits<double>::infinity());

  WhitneyCover cover;
  cover.delta = delta;
  cover.n = region.n;
  cover.region = region;
  cover.probe_per_axis = probe_per_axis;
  cover.seed = seed;

  // Farthest-point insertion; the shuffled probe order resolves the first
  // pick and any ties, so the seed yields an independent cover.
  while (true) {
    double best = -1.0;
    long best_i = -1;
    for (long i = 0; i < np; ++i)
      if (min_dist[i] > best) {
        best = min_dist[i];
        best_i = i;
      }
    if (best_i < 0 || best < delta) break;
    const Vec& w = probes[best_i];
    cover.points.push_back(w);
    cover.coords.push_back(coords_from_point(w));
    const Matrix frame_inv = frame_inverse(cover.coords.back(), region.n);
    for (long i = 0; i < np; ++i) {
      const double d = invariant_distance_frame(frame_inv, probes[i]);
      if (d < min_dist[i]) min_dist[i] = d;
    }
  }

  const auto cert = certify_cover(cover, 1);
  if (!cert.half_disjoint || !cert.covered)
    throw std::runtime_error(
        "Whitney cover certification failed on its own candidate pool");
  cover.overlap = cert.max_overlap;
  return cover;
}

CoverCertificate certify_cover(const WhitneyCover& cover, int subsample_stride) {
  if (subsample_stride < 1) throw std::invalid_argument("stride must be >= 1");
  const auto probes =
      region_probes(cover.region, cover.probe_per_axis, cover.seed);
  std::vector<Matrix> frames;
  frames.reserve(cover.points.size());
  for (const auto& co : cover.coords) frames.push_back(frame_inverse(co, cover.n));
  CoverCertificate cert;
  cert.half_disjoint = true;
  cert.covered = true;
  const double half = 0.5 * cover.delta;
  for (std::size_t i = 0; i < probes.size(); i += subsample_stride) {
    ++cert.probes;
    int in_half = 0, in_full = 0;
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& fr : frames) {
      const double d = invariant_distance_frame(fr, probes[i]);
      dmin = std::min(dmin, d);
      if (d < half) ++in_half;
      if (d < cover.delta) ++in_full;
    }
    if (in_half > 1) cert.half_disjoint = false;
    if (in_full == 0) cert.covered = false;
    cert.max_overlap = std::max(cert.max_overlap, in_full);
    cert.max_min_dist = std::max(cert.max_min_dist, dmin);
  }
  return cert;
}

}  // namespace coorbit::cone
