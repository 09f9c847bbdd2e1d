#include <cmath>

#include "radcam/kernels.hpp"

// Reference kernels. Plain loops, no compiler-specific pragmas: these define
// the semantics that the SIMD variants are tested against, and they carry the
// f64 path used by the gradient checks.

namespace radcam::kernels {

namespace {

template <typename T>
void gemm_nn_ref(int m, int n, int k, const T* a, int lda, const T* b, int ldb, T* c, int ldc,
                 bool accumulate) {
  for (int i = 0; i < m; ++i) {
    T* crow = c + static_cast<size_t>(i) * ldc;
    if (!accumulate) {
      for (int j = 0; j < n; ++j) crow[j] = T(0);
    }
    for (int p = 0; p < k; ++p) {
      const T av = a[static_cast<size_t>(i) * lda + p];
      const T* brow = b + static_cast<size_t>(p) * ldb;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

template <typename T>
void gemm_nt_ref(int m, int n, int k, const T* a, int lda, const T* b, int ldb, T* c, int ldc,
                 bool accumulate) {
  for (int i = 0; i < m; ++i) {
    const T* arow = a + static_cast<size_t>(i) * lda;
    T* crow = c + static_cast<size_t>(i) * ldc;
    for (int j = 0; j < n; ++j) {
      const T* brow = b + static_cast<size_t>(j) * ldb;
      T s = T(0);
      for (int p = 0; p < k; ++p) s += arow[p] * brow[p];
      crow[j] = accumulate ? crow[j] + s : s;
    }
  }
}

template <typename T>
void gemm_tn_ref(int m, int n, int k, const T* a, int lda, const T* b, int ldb, T* c, int ldc,
                 bool accumulate) {
  for (int i = 0; i < m; ++i) {
    T* crow = c + static_cast<size_t>(i) * ldc;
    if (!accumulate) {
      for (int j = 0; j < n; ++j) crow[j] = T(0);
    }
    for (int p = 0; p < k; ++p) {
      const T av = a[static_cast<size_t>(p) * lda + i];
      const T* brow = b + static_cast<size_t>(p) * ldb;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

template <typename T>
T dot_ref(const T* a, const T* b, int n) {
  T s = T(0);
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
void axpy_ref(int n, T alpha, const T* x, T* y) {
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void adam_ref(int n, T* p, const T* g, T* m, T* v, T lr, T beta1, T beta2, T eps, T inv_bc1,
              T inv_bc2) {
  for (int i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (T(1) - beta1) * g[i];
    v[i] = beta2 * v[i] + (T(1) - beta2) * g[i] * g[i];
    const T mhat = m[i] * inv_bc1;
    const T vhat = v[i] * inv_bc2;
    p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

template <typename T>
void prelu_fwd_ref(int n, const T* x, T slope, T* y) {
  for (int i = 0; i < n; ++i) y[i] = x[i] > T(0) ? x[i] : slope * x[i];
}

template <typename T>
T prelu_bwd_ref(int n, const T* x, const T* gy, T slope, T* gx) {
  T gslope = T(0);
  for (int i = 0; i < n; ++i) {
    if (x[i] > T(0)) {
      gx[i] += gy[i];
    } else {
      gx[i] += slope * gy[i];
      gslope += gy[i] * x[i];
    }
  }
  return gslope;
}

}  // namespace

namespace scalar {

void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  gemm_nn_ref(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
}
void gemm_nt(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  gemm_nt_ref(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
}
void gemm_tn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate) {
  gemm_tn_ref(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
}
float dot(const float* a, const float* b, int n) { return dot_ref(a, b, n); }
void axpy(int n, float alpha, const float* x, float* y) { axpy_ref(n, alpha, x, y); }
void adam_update(int n, float* p, const float* g, float* m, float* v, float lr, float beta1,
                 float beta2, float eps, float inv_bc1, float inv_bc2) {
  adam_ref(n, p, g, m, v, lr, beta1, beta2, eps, inv_bc1, inv_bc2);
}
void prelu_forward(int n, const float* x, float slope, float* y) {
  prelu_fwd_ref(n, x, slope, y);
}
float prelu_backward(int n, const float* x, const float* gy, float slope, float* gx) {
  return prelu_bwd_ref(n, x, gy, slope, gx);
}

}  // namespace scalar

// f64 overloads
void gemm_nn(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c,
             int ldc, bool accumulate) {
  gemm_nn_ref(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
}
void gemm_nt(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c,
             int ldc, bool accumulate) {
  gemm_nt_ref(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
}
void gemm_tn(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c,
             int ldc, bool accumulate) {
  gemm_tn_ref(m, n, k, a, lda, b, ldb, c, ldc, accumulate);
}
double dot(const double* a, const double* b, int n) { return dot_ref(a, b, n); }
void axpy(int n, double alpha, const double* x, double* y) { axpy_ref(n, alpha, x, y); }
void adam_update(int n, double* p, const double* g, double* m, double* v, double lr, double beta1,
                 double beta2, double eps, double inv_bc1, double inv_bc2) {
  adam_ref(n, p, g, m, v, lr, beta1, beta2, eps, inv_bc1, inv_bc2);
}
void prelu_forward(int n, const double* x, double slope, double* y) {
  prelu_fwd_ref(n, x, slope, y);
}
double prelu_backward(int n, const double* x, const double* gy, double slope, double* gx) {
  return prelu_bwd_ref(n, x, gy, slope, gx);
}

}  // namespace radcam::kernels
