// SPDX-License-Identifier: Apache-2.0
#include "coorbit/simd/kernels.hpp"

#include <cmath>

namespace coorbit::simd {
namespace {

// z^(-s) for integer s >= 1 via inverse + binary exponentiation.
inline complexd inv_pow_int(complexd z, int s) {
  const double d = z.real() * z.real() + z.imag() * z.imag();
  complexd base(z.real() / d, -z.imag() / d);
  complexd acc(1.0, 0.0);
  while (s > 0) {
    if (s & 1) acc *= base;
    base *= base;
    s >>= 1;
  }
  return acc;
}

inline double inv_pow_abs(double den, int s) {
  // den = |z|^2, result |z|^(-s)
  double base = 1.0 / den;
  double acc = 1.0;
  int k = s / 2;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  if (s & 1) acc *= std::sqrt(1.0 / den);
  return acc;
}

complexd conv_reduce_scalar(const double* a, const double* inv_a, const double* b,
                            const double* w, const double* f_re, const double* f_im,
                            std::size_t n, double a_t, double inv_a_t, double b_t,
                            int s, double scale, bool absolute) {
  double acc_re = 0.0, acc_im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ag = a_t * inv_a[i];
    const double cg = ag + a[i] * inv_a_t;
    const double bg = b_t * inv_a[i] - b[i] * inv_a_t;
    double kre, kim;
    if (absolute) {
      kre = scale * inv_pow_abs(cg * cg + bg * bg, s);
      kim = 0.0;
    } else {
      const complexd k = scale * inv_pow_int(complexd(cg, -bg), s);
      kre = k.real();
      kim = k.imag();
    }
    const double wf_re = w[i] * f_re[i];
    const double wf_im = w[i] * f_im[i];
    acc_re += wf_re * kre - wf_im * kim;
    acc_im += wf_re * kim + wf_im * kre;
  }
  return {acc_re, acc_im};
}

void synth_accum_scalar(double* out_re, double* out_im, const double* a_t,
                        const double* inv_a_t, const double* b_t, std::size_t n,
                        double a_src, double inv_a_src, double b_src,
                        complexd coef, int s, double scale) {
  const double cre = coef.real(), cim = coef.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double ag = a_t[j] * inv_a_src;
    const double cg = ag + a_src * inv_a_t[j];
    const double bg = b_t[j] * inv_a_src - b_src * inv_a_t[j];
    const complexd k = scale * inv_pow_int(complexd(cg, -bg), s);
    out_re[j] += cre * k.real() - cim * k.imag();
    out_im[j] += cre * k.imag() + cim * k.real();
  }
}

double weighted_p_reduce_scalar(const double* w, const double* re, const double* im,
                                std::size_t n, int p) {
  double acc = 0.0;
  if (p == 2) {
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * (re[i] * re[i] + im[i] * im[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      acc += w[i] * std::sqrt(re[i] * re[i] + im[i] * im[i]);
  }
  return acc;
}

complexd disc_voice_reduce_scalar(const double* z_re, const double* z_im,
                                  const double* w, const double* f_re,
                                  const double* f_im, std::size_t n,
                                  complexd alpha, complexd beta, int s) {
  // conj((alpha - conj(beta) z)^(-s)) = (conj(alpha) - beta conj(z))^(-s)
  const double car = alpha.real(), cai = -alpha.imag();
  const double br = beta.real(), bi = beta.imag();
  double acc_re = 0.0, acc_im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ur = car - (br * z_re[k] + bi * z_im[k]);
    const double ui = cai - (bi * z_re[k] - br * z_im[k]);
    const complexd c = inv_pow_int(complexd(ur, ui), s);
    const double wf_re = w[k] * f_re[k];
    const double wf_im = w[k] * f_im[k];
    acc_re += wf_re * c.real() - wf_im * c.imag();
    acc_im += wf_re * c.imag() + wf_im * c.real();
  }
  return {acc_re, acc_im};
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {conv_reduce_scalar, synth_accum_scalar,
                                weighted_p_reduce_scalar, disc_voice_reduce_scalar,
                                "scalar"};
  return t;
}

}  // namespace coorbit::simd
