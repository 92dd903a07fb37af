// SPDX-License-Identifier: Apache-2.0
#include "coorbit/lightcone_besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coorbit::besov {

namespace {

bool power_of_two(int x) { return x >= 4 && (x & (x - 1)) == 0; }

inline double bump1(double t) {
  const double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

}  // namespace

BoxGrid::BoxGrid(std::vector<int> dims, std::vector<double> delta)
    : dims_(std::move(dims)), delta_(std::move(delta)) {
  if (dims_.size() != delta_.size() || dims_.size() < 3)
    throw std::invalid_argument("box grid needs n >= 3 matching dims/spacings");
  size_ = 1;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (!power_of_two(dims_[i]))
      throw std::invalid_argument("grid sizes must be powers of two, >= 4");
    if (!(delta_[i] > 0.0)) throw std::invalid_argument("grid spacing must be > 0");
    size_ *= dims_[i];
  }
}

double BoxGrid::cell() const {
  double c = 1.0;
  for (double d : delta_) c *= d;
  return c;
}

BoxGrid BoxGrid::dual() const {
  std::vector<double> dw(delta_.size());
  for (std::size_t i = 0; i < delta_.size(); ++i)
    dw[i] = 2.0 * M_PI / (dims_[i] * delta_[i]);
  return BoxGrid(dims_, dw);
}

bool BoxGrid::paired_with(const BoxGrid& o) const {
  if (dims_ != o.dims_) return false;
  for (std::size_t i = 0; i < delta_.size(); ++i)
    if (std::abs(delta_[i] * o.delta_[i] * dims_[i] - 2.0 * M_PI) > 1e-9)
      return false;
  return true;
}

Vec BoxGrid::node(long idx) const {
  const int nn = n();
  Vec x(nn);
  for (int ax = nn - 1; ax >= 0; --ax) {
    const int j = static_cast<int>(idx % dims_[ax]);
    idx /= dims_[ax];
    x[ax] = coord(ax, j);
  }
  return x;
}

long BoxGrid::index(const std::vector<int>& iv) const {
  long idx = 0;
  for (int ax = 0; ax < n(); ++ax) idx = idx * dims_[ax] + iv[ax];
  return idx;
}

BoxGridPtr make_box_grid(std::vector<int> dims, std::vector<double> delta) {
  return std::make_shared<BoxGrid>(std::move(dims), std::move(delta));
}

double Field::l2_mass() const {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s * grid->cell();
}

double Field::lp_norm(double p) const {
  if (p == 2.0) return std::sqrt(l2_mass());
  double s = 0.0;
  for (const auto& z : v) s += std::pow(std::abs(z), p);
  return std::pow(s * grid->cell(), 1.0 / p);
}

namespace {

// Iterative radix-2 transform with kernel e^{sign i 2 pi j k / N}.
void fft_pow2(complexd* buf, int n, int sign) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(buf[i], buf[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / len;
    const complexd wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      complexd w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        const complexd a = buf[i + k];
        const complexd b = buf[i + k + len / 2] * w;
        buf[i + k] = a + b;
        buf[i + k + len / 2] = a - b;
        w *= wl;
      }
    }
  }
}

// Centered transform along every axis: node j at (j - N/2) delta, frequency
// k at (k - N/2) delta_w.  With N a multiple of 4 the center phases reduce
// to (-1)^j pre- and (-1)^k post-scaling.
void centered_transform(const BoxGrid& g, std::vector<complexd>& v,
                        const std::vector<int>& signs) {
  const int nn = g.n();
  std::vector<complexd> line;
  for (int ax = 0; ax < nn; ++ax) {
    const int N = g.dims()[ax];
    long inner = 1;
    for (int a2 = ax + 1; a2 < nn; ++a2) inner *= g.dims()[a2];
    long outer = 1;
    for (int a2 = 0; a2 < ax; ++a2) outer *= g.dims()[a2];
    line.resize(N);
    for (long o = 0; o < outer; ++o)
      for (long in = 0; in < inner; ++in) {
        const long base = o * N * inner + in;
        for (int j = 0; j < N; ++j) {
          const complexd z = v[base + j * inner];
          line[j] = (j & 1) ? -z : z;
        }
        fft_pow2(line.data(), N, signs[ax]);
        for (int k = 0; k < N; ++k)
          v[base + k * inner] = (k & 1) ? -line[k] : line[k];
      }
  }
}

Field transform_impl(const Field& f, int last_axis_sign) {
  const BoxGrid& g = *f.grid;
  const int nn = g.n();
  std::vector<int> signs(nn, -last_axis_sign);
  signs[nn - 1] = last_axis_sign;
  Field out(std::make_shared<BoxGrid>(g.dual()));
  out.v = f.v;
  centered_transform(g, out.v, signs);
  const double scale = std::pow(2.0 * M_PI, -0.5 * nn) * g.cell();
  for (auto& z : out.v) z *= scale;
  return out;
}

}  // namespace

Field bfourier(const Field& f) { return transform_impl(f, -1); }

Field bfourier_inv(const Field& f) { return transform_impl(f, +1); }

namespace {

// Coordinate-space support interval per axis above a relative threshold.
void support_box(const Field& f, std::vector<double>& lo, std::vector<double>& hi) {
  const BoxGrid& g = *f.grid;
  const int nn = g.n();
  double vmax = 0.0;
  for (const auto& z : f.v) vmax = std::max(vmax, std::abs(z));
  const double thr = 1e-12 * vmax;
  lo.assign(nn, 1e300);
  hi.assign(nn, -1e300);
  std::vector<int> iv(nn, 0);
  for (long idx = 0; idx < g.size(); ++idx) {
    if (std::abs(f.v[idx]) > thr) {
      long rem = idx;
      for (int ax = nn - 1; ax >= 0; --ax) {
        iv[ax] = static_cast<int>(rem % g.dims()[ax]);
        rem /= g.dims()[ax];
      }
      for (int ax = 0; ax < nn; ++ax) {
        const double c = g.coord(ax, iv[ax]);
        lo[ax] = std::min(lo[ax], c);
        hi[ax] = std::max(hi[ax], c);
      }
    }
  }
}

}  // namespace

Field fourier_convolve(const Field& f, const Field& g) {
  if (f.grid->dims() != g.grid->dims())
    throw std::invalid_argument("convolution requires matching grids");
  std::vector<double> flo, fhi, glo, ghi;
  support_box(f, flo, fhi);
  support_box(g, glo, ghi);
  const int nn = f.grid->n();
  for (int ax = 0; ax < nn; ++ax) {
    if (flo[ax] > fhi[ax] || glo[ax] > ghi[ax]) continue;  // a factor is zero
    const double ext = f.grid->extent(ax);
    if (flo[ax] + glo[ax] < -0.5 * ext || fhi[ax] + ghi[ax] >= 0.5 * ext)
      throw std::invalid_argument(
          "convolution support would wrap around the periodic box");
  }
  Field ft = bfourier(f);
  const Field gt = bfourier(g);
  const double c = std::pow(2.0 * M_PI, 0.5 * nn);
  for (long i = 0; i < f.grid->size(); ++i) ft.v[i] *= c * gt.v[i];
  return bfourier_inv(ft);
}

double plateau_profile(double x) {
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  const double e1 = std::exp(-1.0 / (2.0 - x));
  const double e2 = std::exp(-1.0 / (x - 1.0));
  return e1 / (e1 + e2);
}

ConeTestFunction cone_bump(const BoxGridPtr& wgrid, const Vec& w0, double width,
                           BumpProfile profile) {
  if (!cone::in_cone(w0))
    throw std::invalid_argument("bump center must lie in the open cone");
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
  auto poly_edge = [](double t) {
    const double q = 1.0 - t * t;
    if (q <= 0.0) return 0.0;
    const double q2 = q * q;
    return q2 * q2 * q2 * q;  // (1 - t^2)^7
  };
  ConeTestFunction out{Field(wgrid), Field(wgrid), w0, width};
  const cone::Matrix frame_inv =
      cone::frame_inverse(cone::coords_from_point(w0), wgrid->n());
  const int nn = wgrid->n();
  std::vector<int> iv(nn, 0);
  bool touches_edge = false;
  for (long idx = 0; idx < wgrid->size(); ++idx) {
    const Vec w = wgrid->node(idx);
    if (cone::in_cone(w)) {
      const double d = cone::invariant_distance_frame(frame_inv, w);
      const double val = profile == BumpProfile::SmoothExp ? bump1(d / width)
                                                           : poly_edge(d / width);
      if (val > 0.0) {
        out.w_space.v[idx] = val;
        long rem = idx;
        for (int ax = nn - 1; ax >= 0; --ax) {
          iv[ax] = static_cast<int>(rem % wgrid->dims()[ax]);
          rem /= wgrid->dims()[ax];
        }
        for (int ax = 0; ax < nn; ++ax)
          if (iv[ax] <= 0 || iv[ax] >= wgrid->dims()[ax] - 1) touches_edge = true;
      }
    }
  }
  if (touches_edge)
    throw std::invalid_argument(
        "bump support reaches the frequency grid boundary; shrink the width or "
        "enlarge the grid");
  double vmax = 0.0;
  for (const auto& z : out.w_space.v) vmax = std::max(vmax, std::abs(z));
  if (vmax == 0.0)
    throw std::invalid_argument("bump support contains no grid node");
  out.x_space = bfourier_inv(out.w_space);
  return out;
}

LPDecomposition lp_partition(const WhitneyCover& cover, const BoxGridPtr& wgrid) {
  LPDecomposition lp;
  lp.cover = cover;
  lp.wgrid = wgrid;
  const int nb = static_cast<int>(cover.points.size());
  lp.multipliers.resize(nb);
  lp.covered.assign(wgrid->size(), 0);

  std::vector<cone::Matrix> frames;
  frames.reserve(nb);
  for (const auto& co : cover.coords)
    frames.push_back(cone::frame_inverse(co, cover.n));

  std::vector<double> phi(nb);
  long half_nodes = 0, half_plateau = 0;
  const double delta = cover.delta;
  for (long idx = 0; idx < wgrid->size(); ++idx) {
    const Vec w = wgrid->node(idx);
    if (!cone::in_cone(w)) continue;
    double total = 0.0;
    bool cov = false;
    for (int j = 0; j < nb; ++j) {
      const double d = cone::invariant_distance_frame(frames[j], w);
      phi[j] = plateau_profile(d / delta);
      total += phi[j];
      if (d < delta) cov = true;
    }
    if (total <= 0.0) continue;
    if (cov) {
      lp.covered[idx] = 1;
      ++lp.covered_nodes;
      double sum = 0.0;
      for (int j = 0; j < nb; ++j) sum += phi[j] / total;
      lp.sum_defect = std::max(lp.sum_defect, std::abs(sum - 1.0));
    }
    for (int j = 0; j < nb; ++j) {
      if (phi[j] <= 0.0) continue;
      const double psi = phi[j] / total;
      lp.multipliers[j].emplace_back(idx, psi);
      const double d = cone::invariant_distance_frame(frames[j], w);
      if (d < 0.5 * delta) {
        ++half_nodes;
        if (psi >= 1.0 - 1e-12) ++half_plateau;
      }
    }
  }
  if (cover.points.size() > 0 && lp.covered_nodes == 0)
    throw std::runtime_error("partition covers no grid node (cover defect)");
  lp.plateau_fraction =
      half_nodes > 0 ? static_cast<double>(half_plateau) / half_nodes : 1.0;
  return lp;
}

double besov_norm(const Field& f_w, double p, double q, double s_index,
                  const LPDecomposition& lp, bool* offband) {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("besov_norm requires 1 <= p, q < infinity");
  if (f_w.grid->dims() != lp.wgrid->dims())
    throw std::invalid_argument("field and partition live on different grids");

  if (offband != nullptr) {
    double total = 0.0, outside = 0.0;
    for (long i = 0; i < f_w.grid->size(); ++i) {
      const double m = std::norm(f_w.v[i]);
      total += m;
      if (!lp.covered[i]) outside += m;
    }
    *offband = total > 0.0 && outside > 1e-3 * total;
  }

  const double conv_const = std::pow(2.0 * M_PI, 0.5 * f_w.grid->n());
  const double wcell = f_w.grid->cell();
  double acc = 0.0;
  for (std::size_t j = 0; j < lp.multipliers.size(); ++j) {
    double piece;
    if (p == 2.0) {
      // || f * psi_j ||_2 = (2 pi)^{n/2} || ftilde psitilde_j ||_2
      double m2 = 0.0;
      for (const auto& [idx, psi] : lp.multipliers[j])
        m2 += std::norm(f_w.v[idx]) * psi * psi;
      piece = conv_const * std::sqrt(m2 * wcell);
    } else {
      Field prod(f_w.grid);
      for (const auto& [idx, psi] : lp.multipliers[j])
        prod.v[idx] = conv_const * f_w.v[idx] * psi;
      piece = bfourier_inv(prod).lp_norm(p);
    }
    if (piece == 0.0) continue;
    const double det = lp.cover.coords[j].gamma;
    acc += std::pow(det, -s_index) * std::pow(piece, q);
  }
  return std::pow(acc, 1.0 / q);
}

ConeWaveletTransform::ConeWaveletTransform(Field u_w) : u_(std::move(u_w)) {
  const BoxGrid& g = *u_.grid;
  const int nn = g.n();
  lo_.assign(nn, 1 << 30);
  hi_.assign(nn, -1);
  double vmax = 0.0;
  for (const auto& z : u_.v) vmax = std::max(vmax, std::abs(z));
  const double thr = 1e-14 * vmax;
  std::vector<int> iv(nn);
  for (long idx = 0; idx < g.size(); ++idx) {
    if (std::abs(u_.v[idx]) <= thr) continue;
    long rem = idx;
    for (int ax = nn - 1; ax >= 0; --ax) {
      iv[ax] = static_cast<int>(rem % g.dims()[ax]);
      rem /= g.dims()[ax];
    }
    for (int ax = 0; ax < nn; ++ax) {
      lo_[ax] = std::min(lo_[ax], iv[ax]);
      hi_[ax] = std::max(hi_[ax], iv[ax]);
    }
  }
  for (int ax = 0; ax < nn; ++ax) {
    if (hi_[ax] < lo_[ax])
      throw std::invalid_argument("analyzing function is identically zero");
    if (lo_[ax] <= 0 || hi_[ax] >= g.dims()[ax] - 1)
      throw std::invalid_argument(
          "analyzing support reaches the frequency grid boundary");
  }
}

double ConeWaveletTransform::interp(const Vec& w) const {
  const BoxGrid& g = *u_.grid;
  const int nn = g.n();
  double frac[8];
  int base[8];
  for (int ax = 0; ax < nn; ++ax) {
    const double f = w[ax] / g.delta()[ax] + g.dims()[ax] / 2;
    const int i0 = static_cast<int>(std::floor(f));
    if (i0 < lo_[ax] - 1 || i0 > hi_[ax]) return 0.0;
    base[ax] = i0;
    frac[ax] = f - i0;
  }
  // Multilinear over the 2^n cell corners; utilde is real in practice but
  // stored complex, the imaginary part interpolates to ~0 and is dropped.
  double acc = 0.0;
  for (int mask = 0; mask < (1 << nn); ++mask) {
    double wgt = 1.0;
    long idx = 0;
    for (int ax = 0; ax < nn; ++ax) {
      const int bit = (mask >> ax) & 1;
      wgt *= bit ? frac[ax] : 1.0 - frac[ax];
      const int j = base[ax] + bit;
      idx = idx * g.dims()[ax] + j;
    }
    if (wgt != 0.0) acc += wgt * u_.v[idx].real();
  }
  return acc;
}

void ConeWaveletTransform::product_field(const Field& f_w, const IwasawaCoords& co,
                                         std::vector<complexd>& out) const {
  const BoxGrid& g = *f_w.grid;
  if (g.dims() != u_.grid->dims())
    throw std::invalid_argument("field and analyzing function grids differ");
  const int nn = g.n();

  // Pullback gamma n_{-c} a_{-t}; its inverse maps the analyzing support
  // into the w-grid, bounding the active index box.
  Vec neg(co.c);
  for (double& x : neg) x = -x;
  cone::Matrix pull = cone::shear(neg) * cone::boost(-co.t, nn);
  for (double& x : pull.a) x *= co.gamma;
  cone::Matrix unpull = cone::boost(co.t, nn) * cone::shear(co.c);
  for (double& x : unpull.a) x /= co.gamma;

  std::vector<int> blo(nn, 1 << 30), bhi(nn, -(1 << 30));
  std::vector<double> fmin(nn, 1e300), fmax(nn, -1e300);
  Vec corner(nn);
  for (int mask = 0; mask < (1 << nn); ++mask) {
    for (int ax = 0; ax < nn; ++ax)
      corner[ax] = ((mask >> ax) & 1) ? g.coord(ax, hi_[ax] + 1)
                                      : g.coord(ax, lo_[ax] - 1);
    const Vec pre = unpull.apply(corner);
    for (int ax = 0; ax < nn; ++ax) {
      const double f = pre[ax] / g.delta()[ax] + g.dims()[ax] / 2;
      fmin[ax] = std::min(fmin[ax], f);
      fmax[ax] = std::max(fmax[ax], f);
      blo[ax] = std::min(blo[ax], static_cast<int>(std::floor(f)) - 1);
      bhi[ax] = std::max(bhi[ax], static_cast<int>(std::ceil(f)) + 1);
    }
  }
  for (int ax = 0; ax < nn; ++ax) {
    if (fmax[ax] - fmin[ax] < 2.0)
      throw std::domain_error(
          "dilation compresses the analyzing support below the grid "
          "resolution");
    blo[ax] = std::max(blo[ax], 0);
    bhi[ax] = std::min(bhi[ax], g.dims()[ax] - 1);
  }

  out.assign(g.size(), complexd(0.0, 0.0));
  const double gam_pow = std::pow(co.gamma, 0.5 * nn);
  std::vector<int> iv(nn);
  for (int ax = 0; ax < nn; ++ax) iv[ax] = blo[ax];
  Vec w(nn);
  while (true) {
    long idx = 0;
    for (int ax = 0; ax < nn; ++ax) {
      idx = idx * g.dims()[ax] + iv[ax];
      w[ax] = g.coord(ax, iv[ax]);
    }
    if (f_w.v[idx] != complexd(0.0, 0.0)) {
      const Vec arg = pull.apply(w);
      const double uval = interp(arg);
      if (uval != 0.0) out[idx] = f_w.v[idx] * gam_pow * uval;
    }
    int ax = nn - 1;
    for (; ax >= 0; --ax) {
      if (++iv[ax] <= bhi[ax]) break;
      iv[ax] = blo[ax];
    }
    if (ax < 0) break;
  }
}

Field ConeWaveletTransform::slice(const Field& f_w, const IwasawaCoords& co) const {
  Field prod(f_w.grid);
  product_field(f_w, co, prod.v);
  Field out = bfourier_inv(prod);
  const double c = std::pow(2.0 * M_PI, 0.5 * f_w.grid->n());
  for (auto& z : out.v) z *= c;
  return out;
}

double ConeWaveletTransform::slice_l2(const Field& f_w,
                                      const IwasawaCoords& co) const {
  std::vector<complexd> prod;
  product_field(f_w, co, prod);
  double m2 = 0.0;
  for (const auto& z : prod) m2 += std::norm(z);
  const double c = std::pow(2.0 * M_PI, 0.5 * f_w.grid->n());
  return c * std::sqrt(m2 * f_w.grid->cell());
}

HGrid::HGrid(const Region& region, int n_gamma, int n_t, int n_c)
    : region_(region), ng_(n_gamma), nt_(n_t), nc_(n_c) {
  if (region.n < 3) throw std::invalid_argument("dimension n >= 3 required");
  if (ng_ < 1 || nt_ < 1 || nc_ < 1)
    throw std::invalid_argument("H-grid resolution must be >= 1 per axis");
  size_ = static_cast<long>(ng_) * nt_;
  for (int k = 0; k < region.n - 2; ++k) size_ *= nc_;
}

IwasawaCoords HGrid::coords(long idx) const {
  const int ncax = region_.n - 2;
  IwasawaCoords co;
  co.c.resize(ncax);
  for (int k = ncax - 1; k >= 0; --k) {
    const int j = static_cast<int>(idx % nc_);
    idx /= nc_;
    co.c[k] = region_.c_lo + (j + 0.5) * (region_.c_hi - region_.c_lo) / nc_;
  }
  const int jt = static_cast<int>(idx % nt_);
  idx /= nt_;
  co.t = region_.t_lo + (jt + 0.5) * (region_.t_hi - region_.t_lo) / nt_;
  const double lg_lo = std::log(region_.gamma_lo);
  const double lg_hi = std::log(region_.gamma_hi);
  co.gamma = std::exp(lg_lo + (idx + 0.5) * (lg_hi - lg_lo) / ng_);
  return co;
}

double HGrid::weight0(long idx) const {
  const IwasawaCoords co = coords(idx);
  const int ncax = region_.n - 2;
  const double dlg = (std::log(region_.gamma_hi) - std::log(region_.gamma_lo)) / ng_;
  const double dt = (region_.t_hi - region_.t_lo) / nt_;
  const double dc = (region_.c_hi - region_.c_lo) / nc_;
  // d gamma dt dc / gamma^{n+1} = gamma^{-n} d(log gamma) dt dc
  return std::pow(co.gamma, -static_cast<double>(region_.n)) * dlg * dt *
         std::pow(dc, ncax);
}

HGrid HGrid::refined(int factor) const {
  return HGrid(region_, ng_ * factor, nt_ * factor, nc_ * factor);
}

ConeWaveletField materialize(const ConeWaveletTransform& wt, const Field& f_w,
                             std::shared_ptr<const HGrid> h) {
  ConeWaveletField W;
  W.h = h;
  W.bgrid = std::make_shared<BoxGrid>(f_w.grid->dual());
  W.values.reserve(h->size() * f_w.grid->size());
  for (long k = 0; k < h->size(); ++k) {
    const Field s = wt.slice(f_w, h->coords(k));
    W.values.insert(W.values.end(), s.v.begin(), s.v.end());
  }
  return W;
}

double mixed_norm(const ConeWaveletField& W, double p, double q, double s) {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("mixed norm requires 1 <= p, q < infinity");
  const long nb = W.bgrid->size();
  const double cell = W.bgrid->cell();
  double outer = 0.0;
  for (long k = 0; k < W.h->size(); ++k) {
    double inner = 0.0;
    const complexd* row = W.values.data() + k * nb;
    for (long i = 0; i < nb; ++i)
      inner += (p == 2.0) ? std::norm(row[i]) : std::pow(std::abs(row[i]), p);
    inner *= cell;
    const IwasawaCoords co = W.h->coords(k);
    outer += std::pow(inner, q / p) * std::pow(co.gamma, s) * W.h->weight0(k);
  }
  return std::pow(outer, 1.0 / q);
}

double mixed_norm_streaming(const ConeWaveletTransform& wt, const Field& f_w,
                            const HGrid& h, double p, double q, double s) {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("mixed norm requires 1 <= p, q < infinity");
  double outer = 0.0;
  for (long k = 0; k < h.size(); ++k) {
    const IwasawaCoords co = h.coords(k);
    double inner;
    if (p == 2.0) {
      const double l2 = wt.slice_l2(f_w, co);
      inner = l2 * l2;
    } else {
      const Field sl = wt.slice(f_w, co);
      double acc = 0.0;
      for (const auto& z : sl.v) acc += std::pow(std::abs(z), p);
      inner = acc * sl.grid->cell();
    }
    outer += std::pow(inner, q / p) * std::pow(co.gamma, s) * h.weight0(k);
  }
  return std::pow(outer, 1.0 / q);
}

double admissibility_constant(const Field& u_w) {
  const BoxGrid& g = *u_w.grid;
  const int nn = g.n();
  double acc = 0.0;
  for (long idx = 0; idx < g.size(); ++idx) {
    const double m2 = std::norm(u_w.v[idx]);
    if (m2 == 0.0) continue;
    const Vec w = g.node(idx);
    if (!cone::in_cone(w))
      throw std::invalid_argument(
          "analyzing function has Fourier mass outside the cone");
    const double det = std::sqrt(cone::bform(w, w));
    acc += m2 * std::pow(det, 2.0 * (1.0 - nn)) *
           std::pow(w[nn - 1] - w[0], nn - 2.0);
  }
  return acc * g.cell();
}

double group_wavelet_l2_mass(const ConeWaveletTransform& wt, const HGrid& h) {
  double acc = 0.0;
  for (long k = 0; k < h.size(); ++k) {
    const double l2 = wt.slice_l2(wt.analyzing(), h.coords(k));
    acc += l2 * l2 * h.weight0(k);
  }
  return acc;
}

EquivalenceReport equivalence_experiment(
    double p, double q, double s, const std::vector<ConeTestFunction>& family,
    const std::vector<std::string>& ids, const LPDecomposition& lp,
    const ConeWaveletTransform& wt, const HGrid& h,
    const LPDecomposition* alt_lp, int refine_factor) {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("equivalence requires 1 <= p, q < infinity");
  EquivalenceReport rep;
  const int nn = h.n();
  rep.sigma = s + nn * q / 2.0 - nn;

  auto cemp_of = [](const std::vector<double>& rhos) {
    double lo = rhos.front(), hi = rhos.front();
    for (double r : rhos) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return hi / lo;
  };

  std::vector<double> rhos, rhos_ref, rhos_alt;
  const HGrid h_ref = h.refined(refine_factor);
  for (std::size_t i = 0; i < family.size(); ++i) {
    EquivalenceReport::Entry e;
    e.id = i < ids.size() ? ids[i] : ("f" + std::to_string(i));
    e.besov = besov_norm(family[i].w_space, p, q, rep.sigma, lp);
    e.lpqs = mixed_norm_streaming(wt, family[i].w_space, h, p, q, s);
    e.rho = e.lpqs / e.besov;
    rhos.push_back(e.rho);
    rhos_ref.push_back(
        mixed_norm_streaming(wt, family[i].w_space, h_ref, p, q, s) / e.besov);
    if (alt_lp != nullptr)
      rhos_alt.push_back(e.lpqs /
                         besov_norm(family[i].w_space, p, q, rep.sigma, *alt_lp));
    rep.per_function.push_back(e);
  }
  rep.c_emp = cemp_of(rhos);
  rep.c_emp_refined = cemp_of(rhos_ref);
  rep.refinement_drift = std::abs(rep.c_emp_refined / rep.c_emp - 1.0);
  if (alt_lp != nullptr) {
    rep.c_emp_alt = cemp_of(rhos_alt);
    rep.alt_drift = std::abs(rep.c_emp_alt / rep.c_emp - 1.0);
  }
  return rep;
}

}  // namespace coorbit::besov
