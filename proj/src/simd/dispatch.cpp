// SPDX-License-Identifier: Apache-2.0
#include "coorbit/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace coorbit::simd {

#ifdef COORBIT_HAVE_VECTOR_TU
const KernelTable* vector_table_impl();
#endif

namespace {

bool cpu_has_vector_support() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#elif defined(__aarch64__)
  return true;
#else
  return false;
#endif
}

std::atomic<Mode> g_mode{Mode::Auto};

Mode env_mode() {
  const char* e = std::getenv("COORBIT_SIMD");
  if (e == nullptr) return Mode::Auto;
  if (std::strcmp(e, "scalar") == 0) return Mode::Scalar;
  if (std::strcmp(e, "vector") == 0) return Mode::Vector;
  return Mode::Auto;
}

}  // namespace

void set_mode(Mode m) { g_mode.store(m); }

Mode mode() { return g_mode.load(); }

const KernelTable* vector_table() {
#ifdef COORBIT_HAVE_VECTOR_TU
  if (cpu_has_vector_support()) return vector_table_impl();
#endif
  return nullptr;
}

const KernelTable& active() {
  Mode m = g_mode.load();
  if (m == Mode::Auto) m = env_mode();
  if (m != Mode::Scalar) {
    if (const KernelTable* v = vector_table()) return *v;
  }
  return scalar_table();
}

}  // namespace coorbit::simd
