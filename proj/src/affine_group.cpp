// SPDX-License-Identifier: Apache-2.0
#include "coorbit/affine_group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "coorbit/simd/kernels.hpp"

namespace coorbit::affine {

GroupElement::GroupElement(double a_, double b_) : a(a_), b(b_) {
  if (!(a_ > 0.0) || !std::isfinite(a_) || !std::isfinite(b_))
    throw std::invalid_argument("GroupElement requires a > 0 and finite entries");
}

GroupElement identity() { return {1.0, 0.0}; }

GroupElement mul(const GroupElement& g1, const GroupElement& g2) {
  // [[a1,b1],[0,1/a1]] [[a2,b2],[0,1/a2]] = [[a1 a2, a1 b2 + b1/a2], ...]
  return {g1.a * g2.a, g1.a * g2.b + g1.b / g2.a};
}

GroupElement inv(const GroupElement& g) { return {1.0 / g.a, -g.b}; }

Su11Element cayley(const GroupElement& g) {
  const double ia = 1.0 / g.a;
  return {complexd(0.5 * (g.a + ia), 0.5 * g.b),
          complexd(0.5 * g.b, 0.5 * (g.a - ia))};
}

Su11Element su11_mul(const Su11Element& x, const Su11Element& y) {
  return {x.alpha * y.alpha + x.beta * std::conj(y.beta),
          x.alpha * y.beta + x.beta * std::conj(y.alpha)};
}

double weight(double r, const GroupElement& g) {
  const double c = g.a + 1.0 / g.a;
  return std::pow(2.0, r) * std::pow(c * c + g.b * g.b, 0.5 * r);
}

double window_haar_mass(const Window& w) {
  return (1.0 / w.a_min - 1.0 / w.a_max) * 2.0 * w.b_max;
}

namespace {
void validate_window(const Window& w, int n_a, int n_b) {
  if (!(w.a_min > 0.0) || !(w.a_max > w.a_min))
    throw std::invalid_argument("window requires 0 < a_min < a_max");
  if (!(w.b_max > 0.0)) throw std::invalid_argument("window requires b_max > 0");
  if (n_a < 2 || n_b < 2)
    throw std::invalid_argument("grid resolution must be at least 2 per axis");
}
}  // namespace

GroupGrid::GroupGrid(const Window& window, int n_a, int n_b)
    : window_(window), n_a_(n_a), n_b_(n_b) {
  validate_window(window, n_a, n_b);
  lambda0_ = std::log(window.a_min);
  dlambda_ = (std::log(window.a_max) - lambda0_) / n_a;
  db_ = 2.0 * window.b_max / n_b;
  const int n = n_a * n_b;
  a_.resize(n);
  inv_a_.resize(n);
  b_.resize(n);
  w_.resize(n);
  for (int ia = 0; ia < n_a; ++ia) {
    const double lam = lambda(ia);
    const double av = std::exp(lam);
    const double wv = std::exp(-lam) * dlambda_ * db_;
    for (int ib = 0; ib < n_b; ++ib) {
      const int idx = index(ia, ib);
      a_[idx] = av;
      inv_a_[idx] = 1.0 / av;
      b_[idx] = b_of(ib);
      w_[idx] = wv;
    }
  }
}

double GroupGrid::total_weight() const {
  double s = 0.0;
  for (double w : w_) s += w;
  return s;
}

bool GroupGrid::inner_half(int idx) const {
  const double lam = std::log(a_[idx]);
  const double lam_lo = lambda0_, lam_hi = lambda0_ + n_a_ * dlambda_;
  const double lam_c = 0.5 * (lam_lo + lam_hi);
  const double lam_half = 0.25 * (lam_hi - lam_lo);
  return std::abs(lam - lam_c) <= lam_half && std::abs(b_[idx]) <= 0.5 * window_.b_max;
}

std::vector<int> GroupGrid::inner_indices() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (inner_half(i)) out.push_back(i);
  return out;
}

GridPtr make_haar_grid(const Window& window, int n_a, int n_b) {
  return std::make_shared<GroupGrid>(window, n_a, n_b);
}

GroupFunction::GroupFunction(GridPtr grid)
    : re(grid->size(), 0.0), im(grid->size(), 0.0), grid_(std::move(grid)) {}

GroupFunction GroupFunction::sample(
    GridPtr grid, const std::function<complexd(const GroupElement&)>& f) {
  GroupFunction out(grid);
  const int n = out.size();
  for (int i = 0; i < n; ++i) {
    const complexd v = f(grid->element(i));
    out.re[i] = v.real();
    out.im[i] = v.imag();
  }
  return out;
}

double GroupFunction::max_abs(bool inner_only) const {
  double m = 0.0;
  for (int i = 0; i < size(); ++i) {
    if (inner_only && !grid_->inner_half(i)) continue;
    m = std::max(m, std::hypot(re[i], im[i]));
  }
  return m;
}

namespace {

// Catmull-Rom weights for fractional offset t in [0,1).
inline void cr_weights(double t, double w[4]) {
  const double t2 = t * t, t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

}  // namespace

complexd GroupFunction::interpolate(const GroupElement& g) const {
  const GroupGrid& gr = *grid_;
  const double lam = std::log(g.a);
  const double fx = (lam - gr.lambda_min()) / gr.dlambda() - 0.5;
  const double fy = (g.b + gr.window().b_max) / gr.db() - 0.5;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  if (ix < -1 || ix > gr.na() - 1 || iy < -1 || iy > gr.nb() - 1) return {0.0, 0.0};
  double wx[4], wy[4];
  cr_weights(fx - ix, wx);
  cr_weights(fy - iy, wy);
  double sre = 0.0, sim = 0.0;
  for (int dx = -1; dx <= 2; ++dx) {
    const int jx = ix + dx;
    if (jx < 0 || jx >= gr.na()) continue;
    double rre = 0.0, rim = 0.0;
    for (int dy = -1; dy <= 2; ++dy) {
      const int jy = iy + dy;
      if (jy < 0 || jy >= gr.nb()) continue;
      const int idx = gr.index(jx, jy);
      rre += wy[dy + 1] * re[idx];
      rim += wy[dy + 1] * im[idx];
    }
    sre += wx[dx + 1] * rre;
    sim += wx[dx + 1] * rim;
  }
  return {sre, sim};
}

complexd DiscSeriesKernel::operator()(const GroupElement& g) const {
  const complexd z(g.a + 1.0 / g.a, -g.b);
  const double c = scale * std::pow(2.0, s);
  if (absolute) return c * std::pow(std::abs(z), -s);
  return c * std::pow(z, complexd(-s, 0.0));
}

namespace {

bool integer_exponent(double s, int* out) {
  const double r = std::round(s);
  if (std::abs(s - r) < 1e-12 && r >= 1.0 && r <= 24.0) {
    *out = static_cast<int>(r);
    return true;
  }
  return false;
}

GroupFunction convolve_generic(const GroupFunction& F,
                               const std::function<complexd(const GroupElement&)>& K,
                               bool inner_only) {
  const GroupGrid& gr = F.grid();
  GroupFunction out(F.grid_ptr());
  const auto a = gr.a();
  const auto ia = gr.inv_a();
  const auto b = gr.b();
  const auto w = gr.weights();
  const int n = gr.size();
  for (int j = 0; j < n; ++j) {
    if (inner_only && !gr.inner_half(j)) continue;
    const double ay = a[j], iay = ia[j], by = b[j];
    complexd acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      // x^{-1} y = (a_y/a_x, b_y/a_x - b_x/a_y)
      const GroupElement d(ay * ia[i], by * ia[i] - b[i] * iay);
      acc += w[i] * F.at(i) * K(d);
    }
    out.set(j, acc);
  }
  return out;
}

}  // namespace

GroupFunction convolve(const GroupFunction& F,
                       const std::function<complexd(const GroupElement&)>& K,
                       bool inner_only) {
  return convolve_generic(F, K, inner_only);
}

GroupFunction convolve(const GroupFunction& F, const DiscSeriesKernel& K,
                       bool inner_only) {
  int s_int = 0;
  if (!integer_exponent(K.s, &s_int) || (K.absolute && K.s < 1.0))
    return convolve_generic(
        F, [&K](const GroupElement& g) { return K(g); }, inner_only);

  const GroupGrid& gr = F.grid();
  GroupFunction out(F.grid_ptr());
  const auto& tab = simd::active();
  const auto a = gr.a();
  const auto ia = gr.inv_a();
  const auto b = gr.b();
  const auto w = gr.weights();
  const int n = gr.size();
  const double scale = K.scale * std::pow(2.0, K.s);
  for (int j = 0; j < n; ++j) {
    if (inner_only && !gr.inner_half(j)) continue;
    const complexd acc = tab.conv_reduce(a.data(), ia.data(), b.data(), w.data(),
                                         F.re.data(), F.im.data(), n, a[j], ia[j],
                                         b[j], s_int, scale, K.absolute);
    out.set(j, acc);
  }
  return out;
}

GroupFunction convolve_sampled_kernel(const GroupFunction& F, const GroupFunction& K,
                                      bool inner_only) {
  const GroupGrid& gr = F.grid();
  const GroupGrid& kg = K.grid();
  GroupFunction out(F.grid_ptr());
  const auto a = gr.a();
  const auto ia = gr.inv_a();
  const auto b = gr.b();
  const auto w = gr.weights();

  // The difference x^{-1} y has log a equal to lambda_y - lambda_x, so the
  // lambda direction of the kernel interpolation is shared by every source
  // row / target row pair.  Collapse the kernel grid along lambda once per
  // pair (tensor cubic commutes), then interpolate 1-d in b.
  const int knb = kg.nb();
  std::vector<double> col_re(knb), col_im(knb);
  double wx[4], wy[4];
  for (int jy = 0; jy < gr.na(); ++jy) {
    std::vector<int> targets;
    for (int ty = 0; ty < gr.nb(); ++ty) {
      const int idx = gr.index(jy, ty);
      if (!inner_only || gr.inner_half(idx)) targets.push_back(ty);
    }
    if (targets.empty()) continue;
    const double ay = a[gr.index(jy, 0)];
    const double iay = ia[gr.index(jy, 0)];
    for (int jx = 0; jx < gr.na(); ++jx) {
      const double ax = a[gr.index(jx, 0)];
      const double iax = ia[gr.index(jx, 0)];
      const double lam_g = std::log(ay) - std::log(ax);
      const double fx = (lam_g - kg.lambda_min()) / kg.dlambda() - 0.5;
      const int ixk = static_cast<int>(std::floor(fx));
      if (ixk < -2 || ixk > kg.na()) continue;
      cr_weights(fx - ixk, wx);
      std::fill(col_re.begin(), col_re.end(), 0.0);
      std::fill(col_im.begin(), col_im.end(), 0.0);
      for (int dx = -1; dx <= 2; ++dx) {
        const int jxk = ixk + dx;
        if (jxk < 0 || jxk >= kg.na()) continue;
        const double cw = wx[dx + 1];
        const int base = kg.index(jxk, 0);
        for (int k = 0; k < knb; ++k) {
          col_re[k] += cw * K.re[base + k];
          col_im[k] += cw * K.im[base + k];
        }
      }
      // Accumulate over sources in row jx for each target in row jy,
      // clamping the source range to where the kernel window can reach:
      // |b_y / a_x - b_x / a_y| <= b_max + 2 db.
      const double reach = kg.window().b_max + 2.0 * kg.db();
      for (int ty : targets) {
        const int tidx = gr.index(jy, ty);
        const double by = b[tidx];
        const double bx_lo = (by * iax - reach) * ay;
        const double bx_hi = (by * iax + reach) * ay;
        int sx_lo = static_cast<int>(
            std::floor((bx_lo + gr.window().b_max) / gr.db() - 0.5));
        int sx_hi = static_cast<int>(
            std::ceil((bx_hi + gr.window().b_max) / gr.db() + 0.5));
        sx_lo = std::max(sx_lo, 0);
        sx_hi = std::min(sx_hi, gr.nb() - 1);
        double acc_re = 0.0, acc_im = 0.0;
        for (int sx = sx_lo; sx <= sx_hi; ++sx) {
          const int sidx = gr.index(jx, sx);
          const double bg = by * iax - b[sidx] * iay;
          const double fy = (bg + kg.window().b_max) / kg.db() - 0.5;
          const int iyk = static_cast<int>(std::floor(fy));
          if (iyk < -1 || iyk > knb - 1) continue;
          cr_weights(fy - iyk, wy);
          double kre = 0.0, kim = 0.0;
          for (int dy = -1; dy <= 2; ++dy) {
            const int jyk = iyk + dy;
            if (jyk < 0 || jyk >= knb) continue;
            kre += wy[dy + 1] * col_re[jyk];
            kim += wy[dy + 1] * col_im[jyk];
          }
          const double wf_re = w[sidx] * F.re[sidx];
          const double wf_im = w[sidx] * F.im[sidx];
          acc_re += wf_re * kre - wf_im * kim;
          acc_im += wf_re * kim + wf_im * kre;
        }
        out.re[tidx] += acc_re;
        out.im[tidx] += acc_im;
      }
    }
  }
  return out;
}

double lp_norm(const GroupFunction& F, double p, double r, bool inner_only) {
  if (!(p >= 1.0))
    throw std::invalid_argument("lp_norm requires p >= 1 (got p = " +
                                std::to_string(p) + ")");
  const GroupGrid& gr = F.grid();
  const int n = gr.size();
  const auto w = gr.weights();

  const bool fast_p = (p == 1.0 || p == 2.0);
  if (fast_p && !inner_only) {
    std::vector<double> wq(n);
    for (int i = 0; i < n; ++i) {
      const double wr = weight(r, gr.element(i));
      wq[i] = w[i] * (p == 2.0 ? wr * wr : wr);
    }
    const double s = simd::active().weighted_p_reduce(
        wq.data(), F.re.data(), F.im.data(), n, static_cast<int>(p));
    return std::pow(s, 1.0 / p);
  }

  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (inner_only && !gr.inner_half(i)) continue;
    const double m = std::hypot(F.re[i], F.im[i]) * weight(r, gr.element(i));
    s += w[i] * std::pow(m, p);
  }
  return std::pow(s, 1.0 / p);
}

double int1_probe(double t, double rho, double L, int n_lambda, int n_u) {
  if (!(t > 0.5))
    throw std::invalid_argument("int1_probe requires t > 1/2 for the b-integral");
  // b = c u with c = a + 1/a separates the integral exactly:
  //   [ integral (1+u^2)^(-t) du ] * [ integral over |lambda| <= L of
  //     (2 cosh lambda)^(1-2t) e^{(rho-1) lambda} dlambda ].
  // The u-integral is mapped to theta by u = tan(theta), making it proper.
  double iu = 0.0;
  const double dth = M_PI / n_u;
  for (int k = 0; k < n_u; ++k) {
    const double th = -0.5 * M_PI + (k + 0.5) * dth;
    const double c = std::cos(th);
    iu += std::pow(c * c, t - 1.0) * dth;  // (1+u^2)^{-t} du = cos^{2t-2} dtheta
  }
  double il = 0.0;
  const double dl = 2.0 * L / n_lambda;
  for (int k = 0; k < n_lambda; ++k) {
    const double lam = -L + (k + 0.5) * dl;
    il += std::pow(2.0 * std::cosh(lam), 1.0 - 2.0 * t) *
          std::exp((rho - 1.0) * lam) * dl;
  }
  return iu * il;
}

}  // namespace coorbit::affine
