// SPDX-License-Identifier: Apache-2.0
#include "coorbit/atomic_disc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "coorbit/disc_bergman.hpp"
#include "coorbit/simd/kernels.hpp"

namespace coorbit::atoms {

namespace {

inline double bump1(double t) {
  const double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = (rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

Lattice make_lattice(double a0, double b0, const Window& window) {
  if (!(a0 > 1.0)) throw std::invalid_argument("lattice requires a0 > 1");
  if (!(b0 > 0.0)) throw std::invalid_argument("lattice requires b0 > 0");
  if (!(window.a_min > 0.0) || !(window.a_max >= window.a_min) ||
      !(window.b_max > 0.0))
    throw std::invalid_argument("lattice window is empty");
  Lattice lat;
  lat.a0 = a0;
  lat.b0 = b0;
  lat.window = window;
  const double la0 = std::log(a0);
  lat.j_min = static_cast<int>(std::ceil(std::log(window.a_min) / la0 - 1e-12));
  lat.j_max = static_cast<int>(std::floor(std::log(window.a_max) / la0 + 1e-12));
  for (int j = lat.j_min; j <= lat.j_max; ++j) {
    const double aj = std::pow(a0, j);
    const int kmax = static_cast<int>(std::floor(window.b_max / (aj * b0) + 1e-12));
    for (int k = -kmax; k <= kmax; ++k) {
      lat.points.emplace_back(aj, aj * k * b0);
      lat.jk.emplace_back(j, k);
    }
  }
  return lat;
}

std::pair<double, double> left_coords(const GroupElement& x, const GroupElement& g) {
  const GroupElement u = affine::mul(affine::inv(x), g);
  return {std::log(u.a), u.b};
}

ChartBox default_density_box(double a0, double b0, double slack) {
  return {0.5 * std::log(a0) * slack, 0.5 * b0 * std::sqrt(a0) * slack};
}

ChartBox default_separation_box(double a0, double b0) {
  const double lam = 0.25 * std::log(a0);
  return {lam, 0.25 * b0 / std::exp(lam)};
}

namespace {

// The product set V V^{-1} = {(e^{l1 - l2}, b1 e^{l2} - b2 e^{l1})} meets
// (e^mu, nu) iff |mu| < 2 lamV and |nu| < bV (e^{min(lamV, lamV+mu)} +
// e^{min(lamV, lamV-mu)}).
bool in_vv_inverse(const ChartBox& V, double mu, double nu) {
  if (std::abs(mu) >= 2.0 * V.lam) return false;
  const double l1 = std::min(V.lam, V.lam + mu);
  const double l2 = std::min(V.lam, V.lam - mu);
  return std::abs(nu) < V.bb * (std::exp(l1) + std::exp(l2));
}

}  // namespace

LatticeCertificate certify_lattice(const Lattice& lat, const ChartBox& U,
                                   const ChartBox& V, int probe_na, int probe_nb) {
  LatticeCertificate cert;

  // Separation: x_i V and x_j V are disjoint iff x_i^{-1} x_j is outside
  // V V^{-1}.  Only pairs within two lambda levels can collide.
  cert.separated = true;
  const double la0 = std::log(lat.a0);
  const int max_dj = static_cast<int>(std::floor(2.0 * V.lam / la0)) + 1;
  for (int i = 0; i < lat.size() && cert.separated; ++i) {
    for (int j = i + 1; j < lat.size(); ++j) {
      if (std::abs(lat.jk[j].first - lat.jk[i].first) > max_dj) continue;
      const auto [mu, nu] = left_coords(lat.points[i], lat.points[j]);
      ++cert.pairs_checked;
      if (in_vv_inverse(V, mu, nu)) {
        cert.separated = false;
        break;
      }
    }
  }

  // Density: every probe of the coverable region lies in some x_i U.  The
  // window box itself is not coverable up to its edges: the covered patch
  // of a point (a_j, b_j) has b-center (a_j/a) b_j, so next to |b| = b_max
  // the patches of in-window points pull inward by up to b_max (e^lamU - 1),
  // and clipping the lattice there costs up to one more coset cell (cell
  // b-extent a0^j b0 at level j).  The probe region shrinks by both, and
  // stays within the level span in log a.
  cert.dense = true;
  cert.max_uncovered = 0.0;
  const double lam_lo = std::max(std::log(lat.window.a_min),
                                 (lat.j_min - 0.5) * la0);
  const double lam_hi = std::min(std::log(lat.window.a_max),
                                 (lat.j_max + 0.5) * la0);
  for (int ia = 0; ia < probe_na; ++ia) {
    const double lam = lam_lo + (ia + 0.5) * (lam_hi - lam_lo) / probe_na;
    const double level_cell =
        std::exp(la0 * (std::floor(lam / la0) + 1.0)) * lat.b0;
    const double b_reach =
        lat.window.b_max * std::exp(-U.lam) - 1.1 * level_cell;
    if (b_reach <= 0.0) continue;
    for (int ib = 0; ib < probe_nb; ++ib) {
      const double b = -b_reach + (ib + 0.5) * 2.0 * b_reach / probe_nb;
      const GroupElement g(std::exp(lam), b);
      ++cert.probes;
      // Candidate levels around lam, candidate k from the closed form
      // k* = a b a0^{-2j} / b0.
      double best = 1e300;
      const int j0 = static_cast<int>(std::floor(lam / la0));
      for (int j = j0 - 1; j <= j0 + 2; ++j) {
        if (j < lat.j_min || j > lat.j_max) continue;
        const double aj = std::pow(lat.a0, j);
        const double kstar = g.a * g.b / (aj * aj * lat.b0);
        for (int k = static_cast<int>(std::floor(kstar)) - 1;
             k <= static_cast<int>(std::floor(kstar)) + 2; ++k) {
          const double bj = aj * k * lat.b0;
          if (std::abs(bj) > lat.window.b_max + 1e-12) continue;
          const auto [l, bb] = left_coords(GroupElement(aj, bj), g);
          best = std::min(best, std::max(std::abs(l) / U.lam, std::abs(bb) / U.bb));
        }
      }
      cert.max_uncovered = std::max(cert.max_uncovered, best);
      if (best >= 1.0) cert.dense = false;
    }
  }

  // V V subset of U: lambda widths add, and |b(v1 v2)| <= 2 bV e^{lamV}.
  cert.nested = (2.0 * V.lam <= U.lam) && (2.0 * V.bb * std::exp(V.lam) <= U.bb);
  return cert;
}

PartitionOfUnity::PartitionOfUnity(const Lattice& lat, const ChartBox& U)
    : lat_(lat), box_(U), log_a0_(std::log(lat.a0)) {
  by_level_.resize(lat.j_max - lat.j_min + 1);
  for (int i = 0; i < lat.size(); ++i)
    by_level_[lat.jk[i].first - lat.j_min].push_back(i);
}

void PartitionOfUnity::candidates(const GroupElement& g, std::vector<int>& idx) const {
  idx.clear();
  const double lam = std::log(g.a);
  const int reach = static_cast<int>(std::floor(box_.lam / log_a0_)) + 1;
  const int j0 = static_cast<int>(std::floor(lam / log_a0_));
  for (int j = j0 - reach; j <= j0 + reach + 1; ++j) {
    if (j < lat_.j_min || j > lat_.j_max) continue;
    const auto& level = by_level_[j - lat_.j_min];
    if (level.empty()) continue;
    // k range for which |b_u| < bb: b_u = a0^{-j} a b - k b0 ... solved
    // around k* = a b a0^{-2j} / b0 with margin from the box width.
    const double aj = std::pow(lat_.a0, j);
    const double kstar = g.a * g.b / (aj * aj * lat_.b0);
    const double halfwidth = box_.bb * std::exp(box_.lam) / lat_.b0 + 2.0;
    const int k_lo = static_cast<int>(std::floor(kstar - halfwidth));
    const int k_hi = static_cast<int>(std::ceil(kstar + halfwidth));
    const int level_kmax = (static_cast<int>(level.size()) - 1) / 2;
    for (int k = std::max(k_lo, -level_kmax); k <= std::min(k_hi, level_kmax); ++k)
      idx.push_back(level[k + level_kmax]);
  }
}

double PartitionOfUnity::sum_raw(const GroupElement& g) const {
  std::vector<int> idx;
  candidates(g, idx);
  double phi = 0.0;
  for (int i : idx) {
    const auto [l, b] = left_coords(lat_.points[i], g);
    phi += bump1(l / box_.lam) * bump1(b / box_.bb);
  }
  return phi;
}

void PartitionOfUnity::eval(const GroupElement& g,
                            std::vector<std::pair<int, double>>& out) const {
  out.clear();
  std::vector<int> idx;
  candidates(g, idx);
  double phi = 0.0;
  for (int i : idx) {
    const auto [l, b] = left_coords(lat_.points[i], g);
    const double v = bump1(l / box_.lam) * bump1(b / box_.bb);
    if (v > 0.0) out.emplace_back(i, v);
    phi += v;
  }
  if (out.empty() || phi <= 0.0)
    throw std::runtime_error(
        "partition of unity: no bump covers the probe point (density violated)");
  for (auto& [i, v] : out) v /= phi;
}

std::vector<double> PartitionOfUnity::cell_masses(const affine::GroupGrid& grid) const {
  std::vector<double> c(lat_.size(), 0.0);
  std::vector<std::pair<int, double>> vals;
  const auto w = grid.weights();
  for (int n = 0; n < grid.size(); ++n) {
    const GroupElement g = grid.element(n);
    // Skip nodes no bump reaches (outside the covered lattice window).
    if (sum_raw(g) <= 0.0) continue;
    eval(g, vals);
    for (const auto& [i, v] : vals) c[i] += w[n] * v;
  }
  return c;
}

OscillationBox oscillation_radius(double s, double eps, const Window& window,
                                  int x_samples, int u_samples, unsigned seed) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("oscillation radius requires eps in (0,1)");
  std::mt19937_64 rng(seed);
  std::vector<GroupElement> xs;
  xs.reserve(x_samples);
  const double lam_lo = std::log(window.a_min), lam_hi = std::log(window.a_max);
  for (int i = 0; i < x_samples; ++i)
    xs.emplace_back(std::exp(uniform(rng, lam_lo, lam_hi)),
                    uniform(rng, -window.b_max, window.b_max));

  // sup over u in the box of |W(u x)/W(x) - 1| with the closed form
  // ratio = (calpha(x) / calpha(u x))^s, calpha = conj of the Cayley alpha.
  auto box_error = [&](const ChartBox& box) {
    double worst = 0.0;
    for (const auto& x : xs) {
      const complexd cax = std::conj(affine::cayley(x).alpha);
      for (int iu = 0; iu < u_samples; ++iu) {
        const double l = -box.lam + 2.0 * box.lam * iu / (u_samples - 1.0);
        for (int ju = 0; ju < u_samples; ++ju) {
          const double b = -box.bb + 2.0 * box.bb * ju / (u_samples - 1.0);
          const GroupElement ux = affine::mul(GroupElement(std::exp(l), b), x);
          const complexd caux = std::conj(affine::cayley(ux).alpha);
          const double err = std::abs(disc::pow_minus_s(caux / cax, s) - 1.0);
          worst = std::max(worst, err);
          if (worst >= eps) return worst;
        }
      }
    }
    return worst;
  };

  OscillationBox out;
  ChartBox box{1.0, 1.0};
  ChartBox prev = box;
  double measured = box_error(box);
  int halvings = 0;
  while (measured >= eps && halvings < 48) {
    prev = box;
    box.lam *= 0.5;
    box.bb *= 0.5;
    measured = box_error(box);
    ++halvings;
  }
  if (measured >= eps)
    throw std::runtime_error("oscillation radius search failed to converge");
  out.box = box;
  out.next_larger = halvings == 0 ? ChartBox{2.0 * box.lam, 2.0 * box.bb} : prev;
  out.max_ratio_error = measured;
  return out;
}

ComparisonConstants comparison_constants(const ChartBox& U, double s, double eps,
                                         const Window& window, int x_samples,
                                         unsigned seed) {
  std::mt19937_64 rng(seed);
  ComparisonConstants out{1.0 - eps, 1.0 + eps, 1.0, 1.0, true};
  const double lam_lo = std::log(window.a_min), lam_hi = std::log(window.a_max);
  for (int i = 0; i < x_samples; ++i) {
    const GroupElement x(std::exp(uniform(rng, lam_lo, lam_hi)),
                         uniform(rng, -window.b_max, window.b_max));
    const GroupElement u(std::exp(uniform(rng, -U.lam, U.lam)),
                         uniform(rng, -U.bb, U.bb));
    const double wx = std::abs(disc::wavelet_closed(s, disc::PowerSeries({1.0}), x));
    const double wux =
        std::abs(disc::wavelet_closed(s, disc::PowerSeries({1.0}), affine::mul(u, x)));
    const double ratio = wux / wx;
    out.measured_min = std::min(out.measured_min, ratio);
    out.measured_max = std::max(out.measured_max, ratio);
  }
  out.verified = out.measured_min >= out.c1 && out.measured_max <= out.c2;
  return out;
}

namespace {

// out += coef * K(x_src^{-1} y) over all grid nodes, dispatched.
void synthesize(GroupFunction& out, const GroupElement& src, complexd coef,
                const affine::DiscSeriesKernel& k) {
  const auto& gr = out.grid();
  const double rs = std::round(k.s);
  if (std::abs(k.s - rs) < 1e-12 && rs >= 1.0 && rs <= 24.0 && !k.absolute) {
    simd::active().synth_accum(out.re.data(), out.im.data(), gr.a().data(),
                               gr.inv_a().data(), gr.b().data(), gr.size(), src.a,
                               1.0 / src.a, src.b, coef, static_cast<int>(rs),
                               k.scale * std::pow(2.0, k.s));
    return;
  }
  for (int j = 0; j < gr.size(); ++j) {
    const GroupElement y = gr.element(j);
    const GroupElement d(y.a / src.a, y.b / src.a - src.b / y.a);
    const complexd v = coef * k(d);
    out.re[j] += v.real();
    out.im[j] += v.imag();
  }
}

std::vector<complexd> sample_at_lattice(const GroupFunction& F, const Lattice& lat) {
  std::vector<complexd> v(lat.size());
  for (int i = 0; i < lat.size(); ++i) v[i] = F.interpolate(lat.points[i]);
  return v;
}

}  // namespace

GroupFunction apply_operator(OperatorVariant v, const GroupFunction& F,
                             const Lattice& lat, const PartitionOfUnity& pou,
                             const affine::DiscSeriesKernel& Wuu, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("admissibility constant must be > 0");
  affine::DiscSeriesKernel k{Wuu.s, Wuu.scale / c, Wuu.absolute};
  const auto& gr = F.grid();
  GroupFunction out(F.grid_ptr());

  switch (v) {
    case OperatorVariant::T1: {
      // (sum_i F(x_i) psi_i) * k
      const auto fx = sample_at_lattice(F, lat);
      GroupFunction mix(F.grid_ptr());
      std::vector<std::pair<int, double>> vals;
      for (int n = 0; n < gr.size(); ++n) {
        const GroupElement g = gr.element(n);
        if (pou.sum_raw(g) <= 0.0) continue;
        pou.eval(g, vals);
        complexd acc(0.0, 0.0);
        for (const auto& [i, psi] : vals) acc += fx[i] * psi;
        mix.set(n, acc);
      }
      return affine::convolve(mix, k);
    }
    case OperatorVariant::T2: {
      const auto fx = sample_at_lattice(F, lat);
      const auto cm = pou.cell_masses(gr);
      for (int i = 0; i < lat.size(); ++i) {
        if (cm[i] == 0.0) continue;
        synthesize(out, lat.points[i], cm[i] * fx[i], k);
      }
      return out;
    }
    case OperatorVariant::T3: {
      // d_i = integral F psi_i d(left Haar)
      std::vector<complexd> d(lat.size(), complexd(0.0, 0.0));
      std::vector<std::pair<int, double>> vals;
      const auto w = gr.weights();
      for (int n = 0; n < gr.size(); ++n) {
        const GroupElement g = gr.element(n);
        if (pou.sum_raw(g) <= 0.0) continue;
        pou.eval(g, vals);
        const complexd fv = F.at(n);
        for (const auto& [i, psi] : vals) d[i] += w[n] * psi * fv;
      }
      for (int i = 0; i < lat.size(); ++i) {
        if (d[i] == complexd(0.0, 0.0)) continue;
        synthesize(out, lat.points[i], d[i], k);
      }
      return out;
    }
  }
  throw std::invalid_argument("unknown operator variant");
}

GroupFunction neumann_invert(OperatorVariant v, const GroupFunction& F_target,
                             const Lattice& lat, const PartitionOfUnity& pou,
                             const affine::DiscSeriesKernel& Wuu, double c,
                             int iters, const NeumannOptions& opt, NeumannLog* log) {
  const double norm_t = affine::lp_norm(F_target, opt.p, opt.r, true);
  GroupFunction tf = apply_operator(v, F_target, lat, pou, Wuu, c);

  GroupFunction nu(F_target.grid_ptr());
  for (int i = 0; i < nu.size(); ++i) {
    nu.re[i] = F_target.re[i] - tf.re[i];
    nu.im[i] = F_target.im[i] - tf.im[i];
  }
  const double q = norm_t > 0.0
                       ? affine::lp_norm(nu, opt.p, opt.r, true) / norm_t
                       : 0.0;
  if (log != nullptr) log->q = q;
  if (q >= opt.refuse_at)
    throw std::runtime_error(
        "Neumann inversion refused: measured contraction ||(I-T)F||/||F|| = " +
        std::to_string(q) + " >= " + std::to_string(opt.refuse_at) +
        " (lattice too coarse)");

  GroupFunction approx = F_target;  // zeroth partial sum
  if (log != nullptr)
    log->residuals.push_back(affine::lp_norm(nu, opt.p, opt.r, true));
  for (int m = 1; m <= iters; ++m) {
    for (int i = 0; i < approx.size(); ++i) {
      approx.re[i] += nu.re[i];
      approx.im[i] += nu.im[i];
    }
    if (m == iters) break;
    GroupFunction tnu = apply_operator(v, nu, lat, pou, Wuu, c);
    for (int i = 0; i < nu.size(); ++i) {
      nu.re[i] -= tnu.re[i];
      nu.im[i] -= tnu.im[i];
    }
    if (log != nullptr)
      log->residuals.push_back(affine::lp_norm(nu, opt.p, opt.r, true));
  }
  return approx;
}

double SampledCoefficients::lp_norm(const Lattice& lat, double p, double r) const {
  double acc = 0.0;
  for (int i = 0; i < lat.size(); ++i)
    acc += std::pow(std::abs(values[i]) * affine::weight(r, lat.points[i]), p);
  return std::pow(acc, 1.0 / p);
}

GroupFunction reconstruct(const SampledCoefficients& samples, const Lattice& lat,
                          const PartitionOfUnity& pou,
                          const affine::DiscSeriesKernel& Wuu, double c, int iters,
                          const NeumannOptions& opt, affine::GridPtr grid,
                          const GroupFunction* reference,
                          ReconstructionReport* report) {
  if (static_cast<int>(samples.values.size()) != lat.size())
    throw std::invalid_argument("sample count does not match lattice size");
  const int nl = lat.size();
  affine::DiscSeriesKernel k{Wuu.s, Wuu.scale / c, Wuu.absolute};

  // The synthesis operator maps coefficient sequences into the span of the
  // translated kernels, and T2 maps that span to itself:
  //   T2 (sum_i nu_i k_i) = sum_j c_j (sum_i nu_i k(x_i^{-1}x_j)) k_j.
  // The Neumann series is run on coefficients, where the only floating
  // floor is roundoff; per-iteration residuals are logged in the weighted
  // sequence norm l^p_r.  The field is synthesized once at the end.
  const double rs = std::round(k.s);
  const bool fast = std::abs(k.s - rs) < 1e-12 && rs >= 1.0 && rs <= 24.0 &&
                    !k.absolute;
  const int s_int = fast ? static_cast<int>(rs) : 0;
  const double kscale = k.scale * std::pow(2.0, k.s);

  std::vector<double> la(nl), lia(nl), lb(nl), ones(nl, 1.0), wr(nl);
  for (int i = 0; i < nl; ++i) {
    la[i] = lat.points[i].a;
    lia[i] = 1.0 / la[i];
    lb[i] = lat.points[i].b;
    wr[i] = affine::weight(opt.r, lat.points[i]);
  }
  const auto cm = pou.cell_masses(*grid);

  auto seq_norm = [&](const std::vector<complexd>& v) {
    double acc = 0.0;
    for (int i = 0; i < nl; ++i)
      acc += std::pow(std::abs(v[i]) * wr[i], opt.p);
    return std::pow(acc, 1.0 / opt.p);
  };
  auto apply_cg = [&](const std::vector<complexd>& nu, std::vector<complexd>& out) {
    std::vector<double> nre(nl), nim(nl);
    for (int i = 0; i < nl; ++i) {
      nre[i] = nu[i].real();
      nim[i] = nu[i].imag();
    }
    for (int j = 0; j < nl; ++j) {
      complexd sum;
      if (fast) {
        sum = simd::active().conv_reduce(la.data(), lia.data(), lb.data(),
                                         ones.data(), nre.data(), nim.data(), nl,
                                         la[j], lia[j], lb[j], s_int, kscale,
                                         false);
      } else {
        sum = complexd(0.0, 0.0);
        for (int i = 0; i < nl; ++i) {
          const GroupElement d(la[j] * lia[i], lb[j] * lia[i] - lb[i] * lia[j]);
          sum += nu[i] * k(d);
        }
      }
      out[j] = cm[j] * sum;
    }
  };

  std::vector<complexd> nu(nl), acc(nl), t(nl);
  for (int i = 0; i < nl; ++i) nu[i] = cm[i] * samples.values[i];
  acc = nu;
  const double norm0 = seq_norm(nu);

  NeumannLog log;
  apply_cg(nu, t);
  for (int i = 0; i < nl; ++i) nu[i] -= t[i];
  log.q = norm0 > 0.0 ? seq_norm(nu) / norm0 : 0.0;
  if (log.q >= opt.refuse_at) {
    if (report != nullptr) {
      report->refused = true;
      report->q = log.q;
      report->refusal_reason = "measured contraction >= 1";
    }
    throw std::runtime_error(
        "Neumann inversion refused: measured contraction ||(I-T)F||/||F|| = " +
        std::to_string(log.q) + " >= " + std::to_string(opt.refuse_at) +
        " (lattice too coarse)");
  }
  log.residuals.push_back(seq_norm(nu));
  for (int m = 1; m <= iters; ++m) {
    for (int i = 0; i < nl; ++i) acc[i] += nu[i];
    if (m == iters) break;
    apply_cg(nu, t);
    for (int i = 0; i < nl; ++i) nu[i] -= t[i];
    log.residuals.push_back(seq_norm(nu));
  }

  GroupFunction rec(grid);
  for (int i = 0; i < nl; ++i) {
    if (acc[i] == complexd(0.0, 0.0)) continue;
    synthesize(rec, lat.points[i], acc[i], k);
  }

  if (report != nullptr) {
    report->q = log.q;
    report->residuals = log.residuals;
    report->refused = false;
    if (reference != nullptr) {
      GroupFunction diff(grid);
      for (int i = 0; i < diff.size(); ++i) {
        diff.re[i] = rec.re[i] - reference->re[i];
        diff.im[i] = rec.im[i] - reference->im[i];
      }
      const double ref_norm = affine::lp_norm(*reference, opt.p, opt.r, true);
      report->final_error =
          ref_norm > 0.0 ? affine::lp_norm(diff, opt.p, opt.r, true) / ref_norm : 0.0;
    }
  }
  return rec;
}

double convolution_operator_norm(const affine::DiscSeriesKernel& abs_kernel,
                                 std::span<const GroupFunction> probes, double p,
                                 double r) {
  affine::DiscSeriesKernel k = abs_kernel;
  k.absolute = true;
  double worst = 0.0;
  for (const auto& F : probes) {
    GroupFunction absF(F.grid_ptr());
    for (int i = 0; i < F.size(); ++i)
      absF.re[i] = std::hypot(F.re[i], F.im[i]);
    const auto conv = affine::convolve(absF, k, true);
    const double nf = affine::lp_norm(F, p, r, true);
    if (nf == 0.0) continue;
    worst = std::max(worst, affine::lp_norm(conv, p, r, true) / nf);
  }
  return worst;
}

}  // namespace coorbit::atoms
