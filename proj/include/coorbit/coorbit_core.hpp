// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "coorbit/affine_group.hpp"

namespace coorbit::axioms {

using complexd = std::complex<double>;
using affine::GroupElement;
using affine::GroupFunction;

struct AxiomReport {
  std::string axiom;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string window;
  long samples = 0;
  bool warning = false;
  std::string note;
};

// Quadrature of integral |W_u(u)|^2 over the grid window: the constant c
// with W_u(v) * W_u(u) = c W_u(v) for a unitary square-integrable
// representation with ||u|| = 1.  *tail_warning is set when the decay of
// |W_u(u)| along the window edges suggests the truncated tail exceeds 1%
// of the accumulated mass.
double estimate_admissibility(const GroupFunction& Wuu, bool* tail_warning = nullptr);

// Residual of the reproducing identity on the inner half-window:
//   max |(Wv * Wuu)(y) - c Wv(y)| / max |Wv|.
// The kernel is cubic-interpolated from its samples.
AxiomReport check_reproducing(const GroupFunction& Wv, const GroupFunction& Wuu,
                              double c, double tol);

// Voice transform of a caller-supplied family of vectors; handle 0 must be
// phi and handle 1 the contragredient translate of phi by y.
using VoiceTransform = std::function<complexd(int handle, const GroupElement&)>;
using Translate = std::function<GroupElement(const GroupElement& y,
                                             const GroupElement& x)>;

Translate left_translate();  // (y, x) -> y^{-1} x

// max over samples of |W(translate-of-phi)(x) - W(phi)(y^{-1} x)|.
AxiomReport check_intertwining(const VoiceTransform& W, const Translate& translate,
                               const GroupElement& y,
                               const std::vector<GroupElement>& samples, double tol);

// Recomputes || Wphi ||_{L^p_r} and compares with the claimed coorbit norm
// (definitionally equal; guards plumbing).
AxiomReport check_isometry(const GroupFunction& Wphi, double coorbit_norm_claim,
                           double p, double r);

}  // namespace coorbit::axioms
