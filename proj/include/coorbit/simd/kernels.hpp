// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops of the library.  Every kernel has a scalar
// reference implementation and (on x86-64/aarch64) a vectorized variant;
// the active table is picked at runtime from CPU features and can be
// forced for equivalence testing.

namespace coorbit::simd {

using complexd = std::complex<double>;

// K(g) = scale * (a + 1/a - i b)^(-s) on the affine group, |K| when
// absolute is set.  The vector paths handle integer s in [1, 24]; callers
// fall back to scalar evaluation for other exponents.
struct KernelTable {
  // sum_i w[i] * F[i] * K(x_i^{-1} y) for a single target y = (ay, by).
  complexd (*conv_reduce)(const double* a, const double* inv_a, const double* b,
                          const double* w, const double* f_re, const double* f_im,
                          std::size_t n, double a_t, double inv_a_t, double b_t,
                          int s, double scale, bool absolute);

  // out[j] += coef * K(x_src^{-1} y_j) over a target array.
  void (*synth_accum)(double* out_re, double* out_im, const double* a_t,
                      const double* inv_a_t, const double* b_t, std::size_t n,
                      double a_src, double inv_a_src, double b_src,
                      complexd coef, int s, double scale);

  // sum_i w[i] * |z_i|^p for p in {1, 2}; weights carry any norm weight.
  double (*weighted_p_reduce)(const double* w, const double* re, const double* im,
                              std::size_t n, int p);

  // sum_k w[k] * f_k * conj((alpha - conj(beta) z_k)^(-s)), integer s.
  complexd (*disc_voice_reduce)(const double* z_re, const double* z_im,
                                const double* w, const double* f_re,
                                const double* f_im, std::size_t n,
                                complexd alpha, complexd beta, int s);

  const char* name;
};

enum class Mode { Auto, Scalar, Vector };

void set_mode(Mode m);
Mode mode();
const KernelTable& active();
const KernelTable& scalar_table();
const KernelTable* vector_table();  // null when unavailable on this build/CPU

}  // namespace coorbit::simd
