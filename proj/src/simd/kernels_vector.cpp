// SPDX-License-Identifier: Apache-2.0
//
// Vectorized kernel variants on std::experimental::simd.  On x86-64 this TU
// is compiled with -mavx2 -mfma, so native_simd<double> is 4 lanes wide; on
// aarch64 the native width is whatever NEON provides.  Reduction order is
// fixed (lane sums folded once at the end), so results are deterministic
// for a given table.
#include "coorbit/simd/kernels.hpp"

#include <cmath>
#include <experimental/simd>

namespace stdx = std::experimental;

namespace coorbit::simd {
namespace {

using vd = stdx::native_simd<double>;
constexpr std::size_t W = vd::size();

struct vcomplex {
  vd re, im;
};

inline vcomplex cmul(const vcomplex& x, const vcomplex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

inline vcomplex inv_pow_int(vd zre, vd zim, int s) {
  const vd d = zre * zre + zim * zim;
  vcomplex base{zre / d, -zim / d};
  vcomplex acc{vd(1.0), vd(0.0)};
  while (s > 0) {
    if (s & 1) acc = cmul(acc, base);
    base = cmul(base, base);
    s >>= 1;
  }
  return acc;
}

inline vd inv_pow_abs(vd den, int s) {
  vd base = vd(1.0) / den;
  vd acc = vd(1.0);
  int k = s / 2;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  if (s & 1) acc *= stdx::sqrt(vd(1.0) / den);
  return acc;
}

inline double hsum(vd x) {
  double s = 0.0;
  for (std::size_t l = 0; l < W; ++l) s += x[l];
  return s;
}

complexd conv_reduce_vec(const double* a, const double* inv_a, const double* b,
                         const double* w, const double* f_re, const double* f_im,
                         std::size_t n, double a_t, double inv_a_t, double b_t,
                         int s, double scale, bool absolute) {
  vd acc_re(0.0), acc_im(0.0);
  const vd vat(a_t), viat(inv_a_t), vbt(b_t), vscale(scale);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    vd va(&a[i], stdx::element_aligned);
    vd via(&inv_a[i], stdx::element_aligned);
    vd vb(&b[i], stdx::element_aligned);
    vd vw(&w[i], stdx::element_aligned);
    vd vfr(&f_re[i], stdx::element_aligned);
    vd vfi(&f_im[i], stdx::element_aligned);
    const vd cg = vat * via + va * viat;
    const vd bg = vbt * via - vb * viat;
    vd kre, kim;
    if (absolute) {
      kre = vscale * inv_pow_abs(cg * cg + bg * bg, s);
      kim = vd(0.0);
    } else {
      vcomplex k = inv_pow_int(cg, -bg, s);
      kre = vscale * k.re;
      kim = vscale * k.im;
    }
    const vd wfr = vw * vfr;
    const vd wfi = vw * vfi;
    acc_re += wfr * kre - wfi * kim;
    acc_im += wfr * kim + wfi * kre;
  }
  complexd tail = scalar_table().conv_reduce(a + i, inv_a + i, b + i, w + i,
                                             f_re + i, f_im + i, n - i, a_t,
                                             inv_a_t, b_t, s, scale, absolute);
  return {hsum(acc_re) + tail.real(), hsum(acc_im) + tail.imag()};
}

void synth_accum_vec(double* out_re, double* out_im, const double* a_t,
                     const double* inv_a_t, const double* b_t, std::size_t n,
                     double a_src, double inv_a_src, double b_src, complexd coef,
                     int s, double scale) {
  const vd vas(a_src), vias(inv_a_src), vbs(b_src);
  const vd vcr(coef.real() * scale), vci(coef.imag() * scale);
  std::size_t j = 0;
  for (; j + W <= n; j += W) {
    vd vat(&a_t[j], stdx::element_aligned);
    vd viat(&inv_a_t[j], stdx::element_aligned);
    vd vbt(&b_t[j], stdx::element_aligned);
    const vd cg = vat * vias + vas * viat;
    const vd bg = vbt * vias - vbs * viat;
    vcomplex k = inv_pow_int(cg, -bg, s);
    vd ore(&out_re[j], stdx::element_aligned);
    vd oim(&out_im[j], stdx::element_aligned);
    ore += vcr * k.re - vci * k.im;
    oim += vcr * k.im + vci * k.re;
    ore.copy_to(&out_re[j], stdx::element_aligned);
    oim.copy_to(&out_im[j], stdx::element_aligned);
  }
  scalar_table().synth_accum(out_re + j, out_im + j, a_t + j, inv_a_t + j,
                             b_t + j, n - j, a_src, inv_a_src, b_src, coef, s,
                             scale);
}

double weighted_p_reduce_vec(const double* w, const double* re, const double* im,
                             std::size_t n, int p) {
  vd acc(0.0);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    vd vw(&w[i], stdx::element_aligned);
    vd vr(&re[i], stdx::element_aligned);
    vd vi(&im[i], stdx::element_aligned);
    const vd m2 = vr * vr + vi * vi;
    acc += (p == 2) ? vw * m2 : vw * stdx::sqrt(m2);
  }
  return hsum(acc) + scalar_table().weighted_p_reduce(w + i, re + i, im + i, n - i, p);
}

complexd disc_voice_reduce_vec(const double* z_re, const double* z_im,
                               const double* w, const double* f_re,
                               const double* f_im, std::size_t n, complexd alpha,
                               complexd beta, int s) {
  const vd car(alpha.real()), cai(-alpha.imag());
  const vd br(beta.real()), bi(beta.imag());
  vd acc_re(0.0), acc_im(0.0);
  std::size_t k = 0;
  for (; k + W <= n; k += W) {
    vd zr(&z_re[k], stdx::element_aligned);
    vd zi(&z_im[k], stdx::element_aligned);
    vd vw(&w[k], stdx::element_aligned);
    vd vfr(&f_re[k], stdx::element_aligned);
    vd vfi(&f_im[k], stdx::element_aligned);
    const vd ur = car - (br * zr + bi * zi);
    const vd ui = cai - (bi * zr - br * zi);
    vcomplex c = inv_pow_int(ur, ui, s);
    const vd wfr = vw * vfr;
    const vd wfi = vw * vfi;
    acc_re += wfr * c.re - wfi * c.im;
    acc_im += wfr * c.im + wfi * c.re;
  }
  complexd tail = scalar_table().disc_voice_reduce(z_re + k, z_im + k, w + k,
                                                   f_re + k, f_im + k, n - k,
                                                   alpha, beta, s);
  return {hsum(acc_re) + tail.real(), hsum(acc_im) + tail.imag()};
}

}  // namespace

const KernelTable* vector_table_impl() {
  static const KernelTable t = {conv_reduce_vec, synth_accum_vec,
                                weighted_p_reduce_vec, disc_voice_reduce_vec,
#if defined(__AVX2__)
                                "avx2"
#elif defined(__aarch64__)
                                "neon"
#else
                                "vector"
#endif
  };
  return &t;
}

}  // namespace coorbit::simd
