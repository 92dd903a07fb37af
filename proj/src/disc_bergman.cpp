// SPDX-License-Identifier: Apache-2.0
#include "coorbit/disc_bergman.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coorbit/simd/kernels.hpp"

namespace coorbit::disc {

PowerSeries PowerSeries::monomial(int k, complexd c) {
  std::vector<complexd> v(k + 1, complexd(0.0, 0.0));
  v[k] = c;
  return PowerSeries(std::move(v));
}

bool PowerSeries::is_zero() const {
  for (const auto& c : coeffs)
    if (c != complexd(0.0, 0.0)) return false;
  return true;
}

complexd PowerSeries::eval(complexd z) const {
  if (!(std::abs(z) < 1.0))
    throw std::invalid_argument("power series evaluation requires |z| < 1");
  complexd acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

namespace {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    // map [-1,1] -> [0,1]
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    const double wi = 1.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

}  // namespace

namespace {

// Tanh-sinh nodes/weights on (0,1); nodes cluster double-exponentially at
// both endpoints, taming integrable endpoint singularities.  1-u is
// returned separately in a cancellation-free form, and the t-range is
// capped so that 1-u stays representably positive.
void tanh_sinh_01(int n, std::vector<double>& x, std::vector<double>& w,
                  std::vector<double>& one_minus) {
  x.resize(n);
  w.resize(n);
  one_minus.resize(n);
  const double tmax = 3.0;
  const double dt = 2.0 * tmax / n;
  for (int i = 0; i < n; ++i) {
    const double t = -tmax + (i + 0.5) * dt;
    const double s = 0.5 * M_PI * std::sinh(t);
    const double em = std::exp(-2.0 * s);
    one_minus[i] = em / (1.0 + em);        // (1 - tanh s) / 2
    x[i] = 1.0 / (1.0 + em);               // (1 + tanh s) / 2
    const double sech = 1.0 / std::cosh(s);
    w[i] = 0.25 * M_PI * std::cosh(t) * sech * sech * dt;
  }
}

}  // namespace

DiscGrid::DiscGrid(int n_radial, int n_angular, RadialRule rule)
    : nr_(n_radial), nt_(n_angular), rule_(rule) {
  if (n_radial < 2 || n_angular < 4)
    throw std::invalid_argument("disc grid needs n_radial >= 2, n_angular >= 4");
  std::vector<double> u, wu, om;
  if (rule == RadialRule::TanhSinh) {
    tanh_sinh_01(n_radial, u, wu, om);
  } else {
    gauss_legendre_01(n_radial, u, wu);
    om.resize(n_radial);
    for (int i = 0; i < n_radial; ++i) om[i] = 1.0 - u[i];
  }
  const int n = n_radial * n_angular;
  zre_.resize(n);
  zim_.resize(n);
  w_.resize(n);
  omr2_.resize(n);
  const double dth = 2.0 * M_PI / n_angular;
  for (int k = 0; k < n_radial; ++k) {
    const double r = std::sqrt(u[k]);
    const double wk = 0.5 * wu[k] * dth;  // dz = (1/2) du dtheta in u = r^2
    for (int m = 0; m < n_angular; ++m) {
      const int idx = k * n_angular + m;
      const double th = (m + 0.5) * dth;
      zre_[idx] = r * std::cos(th);
      zim_[idx] = r * std::sin(th);
      w_[idx] = wk;
      omr2_[idx] = om[k];
    }
  }
}

double DiscGrid::weight_sum() const {
  double s = 0.0;
  for (double v : w_) s += v;
  return s;
}

DiscGridPtr make_disc_grid(int n_radial, int n_angular, RadialRule rule) {
  return std::make_shared<DiscGrid>(n_radial, n_angular, rule);
}

complexd pow_minus_s(complexd z, double s) {
  const double r = std::round(s);
  if (std::abs(s - r) < 1e-12 && r >= 1.0 && r <= 64.0) {
    int k = static_cast<int>(r);
    complexd base = 1.0 / z;
    complexd acc(1.0, 0.0);
    while (k > 0) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }
  const double rh = std::round(s - 0.5);
  if (std::abs(s - 0.5 - rh) < 1e-12 && rh >= 0.0 && rh <= 64.0) {
    int k = static_cast<int>(rh);
    complexd base = 1.0 / z;
    complexd acc = 1.0 / std::sqrt(z);
    while (k > 0) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }
  return std::pow(z, complexd(-s, 0.0));
}

namespace {

// |z| < 1 holds analytically for the points fed to the power series below;
// renormalize the cases where roundoff lands exactly on the circle.
inline complexd clamp_to_disc(complexd z) {
  const double m = std::abs(z);
  if (m >= 1.0) z *= (1.0 - 1e-14) / m;
  return z;
}

}  // namespace

complexd act(double s, const GroupElement& g, const PowerSeries& f, complexd z) {
  if (!(std::abs(z) < 1.0))
    throw std::invalid_argument("discrete series action requires |z| < 1");
  const auto [alpha, beta] = affine::cayley(g);
  const complexd den = -std::conj(beta) * z + alpha;
  return pow_minus_s(den, s) *
         f.eval(clamp_to_disc((std::conj(alpha) * z - beta) / den));
}

complexd inner_product(const PowerSeries& f, const PowerSeries& h, double s) {
  if (!(s > 1.0))
    throw std::invalid_argument("inner product requires s > 1 (got s = " +
                                std::to_string(s) + ")");
  const int n = std::min(f.coeffs.size(), h.coeffs.size());
  complexd acc(0.0, 0.0);
  double mom = 1.0;  // <z^k, z^k>_s = k! Gamma(s) / Gamma(s+k)
  for (int k = 0; k < n; ++k) {
    acc += f.coeffs[k] * std::conj(h.coeffs[k]) * mom;
    mom *= (k + 1.0) / (s + k);
  }
  return acc;
}

complexd inner_product_quadrature(const PowerSeries& f, const PowerSeries& h,
                                  double s, const DiscGrid& grid) {
  if (!(s > 1.0)) throw std::invalid_argument("inner product requires s > 1");
  const auto zre = grid.z_re();
  const auto zim = grid.z_im();
  const auto w = grid.weights();
  const auto omr2 = grid.one_minus_r2();
  complexd acc(0.0, 0.0);
  for (int i = 0; i < grid.size(); ++i) {
    const complexd z(zre[i], zim[i]);
    acc += w[i] * f.eval(z) * std::conj(h.eval(z)) * std::pow(omr2[i], s - 2.0);
  }
  return acc * ((s - 1.0) / M_PI);
}

complexd wavelet_closed(double s, const PowerSeries& f, const GroupElement& g) {
  const auto [alpha, beta] = affine::cayley(g);
  const complexd ca = std::conj(alpha);
  return pow_minus_s(ca, s) * f.eval(clamp_to_disc(beta / ca));
}

complexd wavelet_quadrature(double s, const PowerSeries& f, const GroupElement& g,
                            const DiscGrid& grid) {
  if (!(s > 1.0))
    throw std::invalid_argument("wavelet quadrature requires s > 1");
  const auto zre = grid.z_re();
  const auto zim = grid.z_im();
  const auto w = grid.weights();
  const auto omr2 = grid.one_minus_r2();
  const auto [alpha, beta] = affine::cayley(g);
  const int n = grid.size();

  // Fold the Bergman weight and the prefactor into the node weights, then
  // reduce sum w_i f(z_i) conj((alpha - conj(beta) z_i)^{-s}).
  std::vector<double> wmod(n), fre(n), fim(n);
  for (int i = 0; i < n; ++i) {
    wmod[i] = w[i] * std::pow(omr2[i], s - 2.0);
    const complexd fv = f.eval(complexd(zre[i], zim[i]));
    fre[i] = fv.real();
    fim[i] = fv.imag();
  }
  const double pref = (s - 1.0) / M_PI;

  const double rs = std::round(s);
  if (std::abs(s - rs) < 1e-12 && rs >= 1.0 && rs <= 24.0) {
    const complexd acc = simd::active().disc_voice_reduce(
        zre.data(), zim.data(), wmod.data(), fre.data(), fim.data(), n, alpha,
        beta, static_cast<int>(rs));
    return pref * acc;
  }
  complexd acc(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    const complexd z(zre[i], zim[i]);
    const complexd den = -std::conj(beta) * z + alpha;
    acc += wmod[i] * complexd(fre[i], fim[i]) * std::conj(pow_minus_s(den, s));
  }
  return pref * acc;
}

double bergman_norm(const PowerSeries& f, double p, double sigma,
                    const DiscGrid& grid, bool* near_divergent) {
  if (!(p >= 1.0)) throw std::invalid_argument("bergman_norm requires p >= 1");
  if (!(sigma > 1.0))
    throw std::invalid_argument(
        "bergman_norm requires sigma > 1 (weight (1-|z|^2)^(sigma-2) is "
        "non-integrable otherwise)");
  if (near_divergent != nullptr) *near_divergent = (sigma <= 1.05);
  const auto zre = grid.z_re();
  const auto zim = grid.z_im();
  const auto w = grid.weights();
  const auto omr2 = grid.one_minus_r2();
  double acc = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double m = std::abs(f.eval(complexd(zre[i], zim[i])));
    acc += w[i] * std::pow(m, p) * std::pow(omr2[i], sigma - 2.0);
  }
  return std::pow(acc, 1.0 / p);
}

complexd group_to_disc(double a, double b) {
  if (!(a > 0.0)) throw std::invalid_argument("group_to_disc requires a > 0");
  const double den = (1.0 + a) * (1.0 + a) + b * b;
  return {(a * a + b * b - 1.0) / den, -2.0 * b / den};
}

void check_correspondence_parameters(double s, double r, double p) {
  const double lhs = r + 2.0 / p;
  if (!(2.0 - s < lhs && lhs < s))
    throw std::invalid_argument(
        "parameters violate 2-s < r+2/p < s (r+2/p = " + std::to_string(lhs) +
        ", s = " + std::to_string(s) + ")");
  const double sig = (s - r) * p / 2.0;
  if (!(1.0 < sig && sig < (s - 1.0) * p + 1.0))
    throw std::invalid_argument(
        "parameters violate 1 < (s-r)p/2 < (s-1)p+1 ((s-r)p/2 = " +
        std::to_string(sig) + ")");
}

double chain_predicted_ratio(double r, double p) {
  // Tracking every constant through the substitution chain
  // (a,b) -> (a^2, ab) -> (a, sqrt(a) b) and the Cayley map z = phi(a,b):
  //   |W(a,b) w_r|^p carries 2^{(s+r)p},
  //   the first substitution contributes 1/2,
  //   [a / ((1+a)^2+b^2)]^{(s-r)p/2} = [(1-|z|^2)/4]^{(s-r)p/2},
  //   da db / a^2 = 4 dz / (1-|z|^2)^2,
  // so ||W||^p = 2^{1+2rp} ||f||^p, independent of f and s.
  return std::pow(2.0, 2.0 * r + 1.0 / p);
}

affine::GroupFunction sample_voice_transform(double s, const PowerSeries& f,
                                             affine::GridPtr grid) {
  return affine::GroupFunction::sample(
      std::move(grid),
      [s, &f](const GroupElement& g) { return wavelet_closed(s, f, g); });
}

double voice_norm_scaled_b(double s, const PowerSeries& f, double p, double r,
                           const affine::GroupGrid& gg, double u_max) {
  if (!(p >= 1.0)) throw std::invalid_argument("voice norm requires p >= 1");
  if (u_max <= 0.0) u_max = std::max(0.5 * gg.window().b_max, 40.0);
  const int n_l = gg.na(), n_u = gg.nb();
  const double du = 2.0 * u_max / n_u;
  double acc = 0.0;
  for (int il = 0; il < n_l; ++il) {
    const double lam = gg.lambda(il);
    const double a = std::exp(lam);
    const double c = a + 1.0 / a;
    // da db / a^2 = e^{-lambda} c dlambda du under b = c u
    const double row_w = std::exp(-lam) * c * gg.dlambda() * du;
    double row = 0.0;
    for (int iu = 0; iu < n_u; ++iu) {
      const double b = c * (-u_max + (iu + 0.5) * du);
      const GroupElement g(a, b);
      const double m = std::abs(wavelet_closed(s, f, g)) * affine::weight(r, g);
      row += (p == 2.0) ? m * m : std::pow(m, p);
    }
    acc += row_w * row;
  }
  return std::pow(acc, 1.0 / p);
}

NormCorrespondence norm_correspondence(double s, double r, double p,
                                       std::span<const PowerSeries> fs,
                                       std::span<const std::string> ids,
                                       const DiscGrid& discgrid,
                                       const affine::GroupGrid& groupgrid) {
  check_correspondence_parameters(s, r, p);
  NormCorrespondence out;
  out.chain_ratio = chain_predicted_ratio(r, p);
  const double sigma = (s - r) * p / 2.0;

  // Near sigma = 1 the Bergman weight is close to non-integrable and the
  // Gauss-Legendre radial rule loses its rate; switch to tanh-sinh there.
  const DiscGrid* dg = &discgrid;
  DiscGridPtr replacement;
  if (sigma < 2.0 && discgrid.rule() == RadialRule::GaussLegendre) {
    replacement = make_disc_grid(discgrid.n_radial(), discgrid.n_angular(),
                                 RadialRule::TanhSinh);
    dg = replacement.get();
  }

  double rmin = 0.0, rmax = 0.0, rsum = 0.0;
  int counted = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    NormCorrespondence::Entry e;
    e.id = i < ids.size() ? ids[i] : ("f" + std::to_string(i));
    if (fs[i].is_zero()) {
      e.skipped = true;
      out.entries.push_back(e);
      continue;
    }
    e.group_norm = voice_norm_scaled_b(s, fs[i], p, r, groupgrid);
    e.bergman = bergman_norm(fs[i], p, sigma, *dg);
    e.ratio = e.group_norm / e.bergman;
    if (counted == 0) {
      rmin = rmax = e.ratio;
    } else {
      rmin = std::min(rmin, e.ratio);
      rmax = std::max(rmax, e.ratio);
    }
    rsum += e.ratio;
    ++counted;
    out.entries.push_back(e);
  }
  if (counted > 0) {
    out.spread = (rmax - rmin) / rmin;
    out.chain_deviation = std::abs(rsum / counted / out.chain_ratio - 1.0);
  }
  return out;
}

}  // namespace coorbit::disc
