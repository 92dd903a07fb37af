// SPDX-License-Identifier: Apache-2.0
#include "coorbit/coorbit_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coorbit::axioms {

namespace {

std::string window_string(const affine::Window& w) {
  std::ostringstream os;
  os << "a in [" << w.a_min << ", " << w.a_max << "], |b| <= " << w.b_max;
  return os.str();
}

}  // namespace

double estimate_admissibility(const GroupFunction& Wuu, bool* tail_warning) {
  const auto& gr = Wuu.grid();
  double mass = 0.0;
  const auto w = gr.weights();
  for (int i = 0; i < gr.size(); ++i) {
    const double m2 = Wuu.re[i] * Wuu.re[i] + Wuu.im[i] * Wuu.im[i];
    mass += w[i] * m2;
  }
  if (tail_warning != nullptr) {
    // Estimate the truncated b-tail from the measured decay exponent of
    // |Wuu|^2 along the b-edge at the row nearest a = 1, assuming power
    // decay |Wuu(a, b)|^2 ~ b^(-2t).  The a-tails decay exponentially in
    // log a for these kernels and are folded in with the same model.
    *tail_warning = false;
    int ia_center = 0;
    double best = 1e300;
    for (int ia = 0; ia < gr.na(); ++ia) {
      const double lam = std::abs(gr.lambda(ia));
      if (lam < best) {
        best = lam;
        ia_center = ia;
      }
    }
    const int ib_edge = gr.nb() - 1;
    const int ib_half = gr.nb() - 1 - gr.nb() / 4;
    const double f_edge = std::abs(Wuu.at(gr.index(ia_center, ib_edge)));
    const double f_half = std::abs(Wuu.at(gr.index(ia_center, ib_half)));
    if (f_edge > 0.0 && f_half > f_edge) {
      const double b_edge = std::abs(gr.b_of(ib_edge));
      const double b_half = std::abs(gr.b_of(ib_half));
      const double two_t = 2.0 * std::log(f_half / f_edge) / std::log(b_edge / b_half);
      if (two_t > 1.0) {
        // integral_{b_edge}^inf f_edge^2 (b/b_edge)^(-2t) db, both signs,
        // times the a-extent of the Haar measure.
        const double a_extent = 1.0 / gr.window().a_min - 1.0 / gr.window().a_max;
        const double tail =
            2.0 * f_edge * f_edge * b_edge / (two_t - 1.0) * a_extent;
        if (tail > 0.01 * mass) *tail_warning = true;
      } else {
        *tail_warning = true;  // decay too slow to bound the tail
      }
    }
  }
  return mass;
}

AxiomReport check_reproducing(const GroupFunction& Wv, const GroupFunction& Wuu,
                              double c, double tol) {
  const auto conv = affine::convolve_sampled_kernel(Wv, Wuu, /*inner_only=*/true);
  const auto& gr = Wv.grid();
  const double scale = Wv.max_abs();
  double resid = 0.0;
  long count = 0;
  for (int i = 0; i < gr.size(); ++i) {
    if (!gr.inner_half(i)) continue;
    resid = std::max(resid, std::abs(conv.at(i) - c * Wv.at(i)));
    ++count;
  }
  AxiomReport rep;
  rep.axiom = "reproducing-formula";
  rep.residual = scale > 0.0 ? resid / scale : resid;
  rep.tolerance = tol;
  rep.pass = rep.residual <= tol;
  rep.window = window_string(gr.window());
  rep.samples = count;
  return rep;
}

Translate left_translate() {
  return [](const GroupElement& y, const GroupElement& x) {
    return affine::mul(affine::inv(y), x);
  };
}

AxiomReport check_intertwining(const VoiceTransform& W, const Translate& translate,
                               const GroupElement& y,
                               const std::vector<GroupElement>& samples, double tol) {
  double resid = 0.0;
  for (const auto& x : samples) {
    const complexd lhs = W(1, x);
    const complexd rhs = W(0, translate(y, x));
    resid = std::max(resid, std::abs(lhs - rhs));
  }
  AxiomReport rep;
  rep.axiom = "intertwining";
  rep.residual = resid;
  rep.tolerance = tol;
  rep.pass = resid <= tol;
  rep.samples = static_cast<long>(samples.size());
  return rep;
}

AxiomReport check_isometry(const GroupFunction& Wphi, double coorbit_norm_claim,
                           double p, double r) {
  const double recomputed = affine::lp_norm(Wphi, p, r);
  const double denom = std::max(std::abs(recomputed), std::abs(coorbit_norm_claim));
  AxiomReport rep;
  rep.axiom = "isometry";
  rep.residual = denom > 0.0 ? std::abs(recomputed - coorbit_norm_claim) / denom : 0.0;
  rep.tolerance = 1e-12;
  rep.pass = rep.residual <= rep.tolerance;
  rep.window = window_string(Wphi.grid().window());
  rep.samples = Wphi.size();
  return rep;
}

}  // namespace coorbit::axioms
