#include <immintrin.h>

#include "kernels_internal.hpp"
#include "radcam/kernels.hpp"

// AVX2/FMA variants. Register-tiled micro-kernels handle the bulk; edge
// blocks fall through to the scalar reference on the leftover sub-views.

namespace radcam::kernels::avx2 {

namespace {

inline float hsum(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  lo = _mm_add_ps(lo, _mm_movehl_ps(lo, lo));
  lo = _mm_add_ss(lo, _mm_shuffle_ps(lo, lo, 1));
  return _mm_cvtss_f32(lo);
}

}  // namespace

// 4x16 tile: 8 ymm accumulators, B rows streamed once per k.
void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  constexpr int MR = 4, NR = 16;
  const int m4 = m - m % MR;
  const int n16 = n - n % NR;
  for (int i = 0; i < m4; i += MR) {
    const float* a0 = a + static_cast<size_t>(i) * lda;
    const float* a1 = a0 + lda;
    const float* a2 = a1 + lda;
    const float* a3 = a2 + lda;
    for (int j = 0; j < n16; j += NR) {
      float* c0 = c + static_cast<size_t>(i) * ldc + j;
      float* c1 = c0 + ldc;
      float* c2 = c1 + ldc;
      float* c3 = c2 + ldc;
      __m256 r00, r01, r10, r11, r20, r21, r30, r31;
      if (accumulate) {
        r00 = _mm256_loadu_ps(c0);
        r01 = _mm256_loadu_ps(c0 + 8);
        r10 = _mm256_loadu_ps(c1);
        r11 = _mm256_loadu_ps(c1 + 8);
        r20 = _mm256_loadu_ps(c2);
        r21 = _mm256_loadu_ps(c2 + 8);
        r30 = _mm256_loadu_ps(c3);
        r31 = _mm256_loadu_ps(c3 + 8);
      } else {
        r00 = r01 = r10 = r11 = r20 = r21 = r30 = r31 = _mm256_setzero_ps();
      }
      for (int p = 0; p < k; ++p) {
        const __m256 b0 = _mm256_loadu_ps(b + static_cast<size_t>(p) * ldb + j);
        const __m256 b1 = _mm256_loadu_ps(b + static_cast<size_t>(p) * ldb + j + 8);
        __m256 av = _mm256_broadcast_ss(a0 + p);
        r00 = _mm256_fmadd_ps(av, b0, r00);
        r01 = _mm256_fmadd_ps(av, b1, r01);
        av = _mm256_broadcast_ss(a1 + p);
        r10 = _mm256_fmadd_ps(av, b0, r10);
        r11 = _mm256_fmadd_ps(av, b1, r11);
        av = _mm256_broadcast_ss(a2 + p);
        r20 = _mm256_fmadd_ps(av, b0, r20);
        r21 = _mm256_fmadd_ps(av, b1, r21);
        av = _mm256_broadcast_ss(a3 + p);
        r30 = _mm256_fmadd_ps(av, b0, r30);
        r31 = _mm256_fmadd_ps(av, b1, r31);
      }
      _mm256_storeu_ps(c0, r00);
      _mm256_storeu_ps(c0 + 8, r01);
      _mm256_storeu_ps(c1, r10);
      _mm256_storeu_ps(c1 + 8, r11);
      _mm256_storeu_ps(c2, r20);
      _mm256_storeu_ps(c2 + 8, r21);
      _mm256_storeu_ps(c3, r30);
      _mm256_storeu_ps(c3 + 8, r31);
    }
    if (n16 < n) {
      scalar::gemm_nn(MR, n - n16, k, a0, lda, b + n16, ldb,
                      c + static_cast<size_t>(i) * ldc + n16, ldc, accumulate);
    }
  }
  if (m4 < m) {
    scalar::gemm_nn(m - m4, n, k, a + static_cast<size_t>(m4) * lda, lda, b, ldb,
                    c + static_cast<size_t>(m4) * ldc, ldc, accumulate);
  }
}

// Rows of A against rows of B; 4 outputs share each A load.
void gemm_nt(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  constexpr int NR = 4;
  const int n4 = n - n % NR;
  const int k8 = k - k % 8;
  for (int i = 0; i < m; ++i) {
    const float* arow = a + static_cast<size_t>(i) * lda;
    float* crow = c + static_cast<size_t>(i) * ldc;
    for (int j = 0; j < n4; j += NR) {
      const float* b0 = b + static_cast<size_t>(j) * ldb;
      const float* b1 = b0 + ldb;
      const float* b2 = b1 + ldb;
      const float* b3 = b2 + ldb;
      __m256 s0 = _mm256_setzero_ps();
      __m256 s1 = _mm256_setzero_ps();
      __m256 s2 = _mm256_setzero_ps();
      __m256 s3 = _mm256_setzero_ps();
      for (int p = 0; p < k8; p += 8) {
        const __m256 av = _mm256_loadu_ps(arow + p);
        s0 = _mm256_fmadd_ps(av, _mm256_loadu_ps(b0 + p), s0);
        s1 = _mm256_fmadd_ps(av, _mm256_loadu_ps(b1 + p), s1);
        s2 = _mm256_fmadd_ps(av, _mm256_loadu_ps(b2 + p), s2);
        s3 = _mm256_fmadd_ps(av, _mm256_loadu_ps(b3 + p), s3);
      }
      float d0 = hsum(s0), d1 = hsum(s1), d2 = hsum(s2), d3 = hsum(s3);
      for (int p = k8; p < k; ++p) {
        d0 += arow[p] * b0[p];
        d1 += arow[p] * b1[p];
        d2 += arow[p] * b2[p];
        d3 += arow[p] * b3[p];
      }
      if (accumulate) {
        crow[j] += d0;
        crow[j + 1] += d1;
        crow[j + 2] += d2;
        crow[j + 3] += d3;
      } else {
        crow[j] = d0;
        crow[j + 1] = d1;
        crow[j + 2] = d2;
        crow[j + 3] = d3;
      }
    }
    for (int j = n4; j < n; ++j) {
      const float* brow = b + static_cast<size_t>(j) * ldb;
      __m256 s = _mm256_setzero_ps();
      for (int p = 0; p < k8; p += 8) {
        s = _mm256_fmadd_ps(_mm256_loadu_ps(arow + p), _mm256_loadu_ps(brow + p), s);
      }
      float d = hsum(s);
      for (int p = k8; p < k; ++p) d += arow[p] * brow[p];
      crow[j] = accumulate ? crow[j] + d : d;
    }
  }
}

// Same tiling as gemm_nn with A walked down columns; the four broadcasts per
// step come from one contiguous run A[p][i..i+3].
void gemm_tn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  constexpr int MR = 4, NR = 16;
  const int m4 = m - m % MR;
  const int n16 = n - n % NR;
  for (int i = 0; i < m4; i += MR) {
    for (int j = 0; j < n16; j += NR) {
      float* c0 = c + static_cast<size_t>(i) * ldc + j;
      float* c1 = c0 + ldc;
      float* c2 = c1 + ldc;
      float* c3 = c2 + ldc;
      __m256 r00, r01, r10, r11, r20, r21, r30, r31;
      if (accumulate) {
        r00 = _mm256_loadu_ps(c0);
        r01 = _mm256_loadu_ps(c0 + 8);
        r10 = _mm256_loadu_ps(c1);
        r11 = _mm256_loadu_ps(c1 + 8);
        r20 = _mm256_loadu_ps(c2);
        r21 = _mm256_loadu_ps(c2 + 8);
        r30 = _mm256_loadu_ps(c3);
        r31 = _mm256_loadu_ps(c3 + 8);
      } else {
        r00 = r01 = r10 = r11 = r20 = r21 = r30 = r31 = _mm256_setzero_ps();
      }
      for (int p = 0; p < k; ++p) {
        const float* acol = a + static_cast<size_t>(p) * lda + i;
        const __m256 b0 = _mm256_loadu_ps(b + static_cast<size_t>(p) * ldb + j);
        const __m256 b1 = _mm256_loadu_ps(b + static_cast<size_t>(p) * ldb + j + 8);
        __m256 av = _mm256_broadcast_ss(acol);
        r00 = _mm256_fmadd_ps(av, b0, r00);
        r01 = _mm256_fmadd_ps(av, b1, r01);
        av = _mm256_broadcast_ss(acol + 1);
        r10 = _mm256_fmadd_ps(av, b0, r10);
        r11 = _mm256_fmadd_ps(av, b1, r11);
        av = _mm256_broadcast_ss(acol + 2);
        r20 = _mm256_fmadd_ps(av, b0, r20);
        r21 = _mm256_fmadd_ps(av, b1, r21);
        av = _mm256_broadcast_ss(acol + 3);
        r30 = _mm256_fmadd_ps(av, b0, r30);
        r31 = _mm256_fmadd_ps(av, b1, r31);
      }
      _mm256_storeu_ps(c0, r00);
      _mm256_storeu_ps(c0 + 8, r01);
      _mm256_storeu_ps(c1, r10);
      _mm256_storeu_ps(c1 + 8, r11);
      _mm256_storeu_ps(c2, r20);
      _mm256_storeu_ps(c2 + 8, r21);
      _mm256_storeu_ps(c3, r30);
      _mm256_storeu_ps(c3 + 8, r31);
    }
    if (n16 < n) {
      scalar::gemm_tn(MR, n - n16, k, a + i, lda, b + n16, ldb,
                      c + static_cast<size_t>(i) * ldc + n16, ldc, accumulate);
    }
  }
  if (m4 < m) {
    scalar::gemm_tn(m - m4, n, k, a + m4, lda, b, ldb, c + static_cast<size_t>(m4) * ldc, ldc,
                    accumulate);
  }
}

float dot(const float* a, const float* b, int n) {
  const int n32 = n - n % 32;
  __m256 s0 = _mm256_setzero_ps();
  __m256 s1 = _mm256_setzero_ps();
  __m256 s2 = _mm256_setzero_ps();
  __m256 s3 = _mm256_setzero_ps();
  for (int i = 0; i < n32; i += 32) {
    s0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), s0);
    s1 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 8), _mm256_loadu_ps(b + i + 8), s1);
    s2 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 16), _mm256_loadu_ps(b + i + 16), s2);
    s3 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 24), _mm256_loadu_ps(b + i + 24), s3);
  }
  float d = hsum(_mm256_add_ps(_mm256_add_ps(s0, s1), _mm256_add_ps(s2, s3)));
  for (int i = n32; i < n; ++i) d += a[i] * b[i];
  return d;
}

void axpy(int n, float alpha, const float* x, float* y) {
  const __m256 av = _mm256_set1_ps(alpha);
  const int n8 = n - n % 8;
  for (int i = 0; i < n8; i += 8) {
    _mm256_storeu_ps(y + i, _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
  }
  for (int i = n8; i < n; ++i) y[i] += alpha * x[i];
}

void adam_update(int n, float* p, const float* g, float* m, float* v, float lr, float beta1,
                 float beta2, float eps, float inv_bc1, float inv_bc2) {
  const __m256 b1 = _mm256_set1_ps(beta1);
  const __m256 b2 = _mm256_set1_ps(beta2);
  const __m256 ob1 = _mm256_set1_ps(1.0f - beta1);
  const __m256 ob2 = _mm256_set1_ps(1.0f - beta2);
  const __m256 lrv = _mm256_set1_ps(lr);
  const __m256 epsv = _mm256_set1_ps(eps);
  const __m256 bc1 = _mm256_set1_ps(inv_bc1);
  const __m256 bc2 = _mm256_set1_ps(inv_bc2);
  const int n8 = n - n % 8;
  for (int i = 0; i < n8; i += 8) {
    const __m256 gv = _mm256_loadu_ps(g + i);
    __m256 mv = _mm256_add_ps(_mm256_mul_ps(b1, _mm256_loadu_ps(m + i)), _mm256_mul_ps(ob1, gv));
    __m256 vv = _mm256_add_ps(_mm256_mul_ps(b2, _mm256_loadu_ps(v + i)),
                              _mm256_mul_ps(ob2, _mm256_mul_ps(gv, gv)));
    _mm256_storeu_ps(m + i, mv);
    _mm256_storeu_ps(v + i, vv);
    const __m256 mhat = _mm256_mul_ps(mv, bc1);
    const __m256 vhat = _mm256_mul_ps(vv, bc2);
    const __m256 denom = _mm256_add_ps(_mm256_sqrt_ps(vhat), epsv);
    const __m256 step = _mm256_div_ps(_mm256_mul_ps(lrv, mhat), denom);
    _mm256_storeu_ps(p + i, _mm256_sub_ps(_mm256_loadu_ps(p + i), step));
  }
  if (n8 < n) {
    scalar::adam_update(n - n8, p + n8, g + n8, m + n8, v + n8, lr, beta1, beta2, eps, inv_bc1,
                        inv_bc2);
  }
}

void prelu_forward(int n, const float* x, float slope, float* y) {
  const __m256 sv = _mm256_set1_ps(slope);
  const __m256 zero = _mm256_setzero_ps();
  const int n8 = n - n % 8;
  for (int i = 0; i < n8; i += 8) {
    const __m256 xv = _mm256_loadu_ps(x + i);
    const __m256 mask = _mm256_cmp_ps(xv, zero, _CMP_GT_OQ);
    _mm256_storeu_ps(y + i, _mm256_blendv_ps(_mm256_mul_ps(sv, xv), xv, mask));
  }
  for (int i = n8; i < n; ++i) y[i] = x[i] > 0 ? x[i] : slope * x[i];
}

float prelu_backward(int n, const float* x, const float* gy, float slope, float* gx) {
  const __m256 sv = _mm256_set1_ps(slope);
  const __m256 zero = _mm256_setzero_ps();
  __m256 gs = _mm256_setzero_ps();
  const int n8 = n - n % 8;
  for (int i = 0; i < n8; i += 8) {
    const __m256 xv = _mm256_loadu_ps(x + i);
    const __m256 gv = _mm256_loadu_ps(gy + i);
    const __m256 pos = _mm256_cmp_ps(xv, zero, _CMP_GT_OQ);
    const __m256 dx = _mm256_blendv_ps(_mm256_mul_ps(sv, gv), gv, pos);
    _mm256_storeu_ps(gx + i, _mm256_add_ps(_mm256_loadu_ps(gx + i), dx));
    gs = _mm256_add_ps(gs, _mm256_andnot_ps(pos, _mm256_mul_ps(gv, xv)));
  }
  float gslope = hsum(gs);
  if (n8 < n) gslope += scalar::prelu_backward(n - n8, x + n8, gy + n8, slope, gx + n8);
  return gslope;
}

}  // namespace radcam::kernels::avx2
