#include "radcam/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace radcam::kernels {

namespace {

Isa pick_isa() {
  const bool cpu_ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (const char* env = std::getenv("RADCAM_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_ok) return Isa::avx2;
    return Isa::scalar;
  }
  return cpu_ok ? Isa::avx2 : Isa::scalar;
}

const Isa g_isa = pick_isa();

}  // namespace

Isa active_isa() { return g_isa; }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  if (g_isa == Isa::avx2) {
    avx2::gemm_nn(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
  } else {
    scalar::gemm_nn(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
  }
}

void gemm_nt(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  if (g_isa == Isa::avx2) {
    avx2::gemm_nt(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
  } else {
    scalar::gemm_nt(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
  }
}

void gemm_tn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  if (g_isa == Isa::avx2) {
    avx2::gemm_tn(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
  } else {
    scalar::gemm_tn(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
  }
}

float dot(const float* a, const float* b, int n) {
  return g_isa == Isa::avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

void axpy(int n, float alpha, const float* x, float* y) {
  if (g_isa == Isa::avx2) {
    avx2::axpy(n, alpha, x, y);
  } else {
    scalar::axpy(n, alpha, x, y);
  }
}

void adam_update(int n, float* p, const float* g, float* m, float* v, float lr, float beta1,
                 float beta2, float eps, float inv_bc1, float inv_bc2) {
  if (g_isa == Isa::avx2) {
    avx2::adam_update(n, p, g, m, v, lr, beta1, beta2, eps, inv_bc1, inv_bc2);
  } else {
    scalar::adam_update(n, p, g, m, v, lr, beta1, beta2, eps, inv_bc1, inv_bc2);
  }
}

void prelu_forward(int n, const float* x, float slope, float* y) {
  if (g_isa == Isa::avx2) {
    avx2::prelu_forward(n, x, slope, y);
  } else {
    scalar::prelu_forward(n, x, slope, y);
  }
}

float prelu_backward(int n, const float* x, const float* gy, float slope, float* gx) {
  return g_isa == Isa::avx2 ? avx2::prelu_backward(n, x, gy, slope, gx)
                            : scalar::prelu_backward(n, x, gy, slope, gx);
}

}  // namespace radcam::kernels
