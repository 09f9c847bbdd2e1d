#pragma once

#include <cstddef>

// Arithmetic inner loops behind the tensor ops. Every f32 kernel has a
// scalar reference implementation and an AVX2 variant; the active one is
// picked once at startup from cpuid, overridable with RADCAM_SIMD=scalar|avx2.
// f64 overloads always run the scalar reference (they back the gradient
// checks, not training speed).
namespace radcam::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
const char* isa_name(Isa isa);

// C[MxN] = A[MxK] * B[KxN] (+ C if accumulate). Row-major, leading dims.
void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate);
// C[MxN] = A[MxK] * B[NxK]^T (+ C).
void gemm_nt(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate);
// C[MxN] = A[KxM]^T * B[KxN] (+ C).
void gemm_tn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate);

float dot(const float* a, const float* b, int n);
void axpy(int n, float alpha, const float* x, float* y);

// One bias-corrected Adam update over a flat parameter buffer.
// inv_bc1 = 1/(1-beta1^t), inv_bc2 = 1/(1-beta2^t).
void adam_update(int n, float* p, const float* g, float* m, float* v, float lr, float beta1,
                 float beta2, float eps, float inv_bc1, float inv_bc2);

void prelu_forward(int n, const float* x, float slope, float* y);
// gx += gy * (x > 0 ? 1 : slope); returns sum(gy * x * [x <= 0]) for the slope grad.
float prelu_backward(int n, const float* x, const float* gy, float slope, float* gx);

// f64 reference overloads (always scalar).
void gemm_nn(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c,
             int ldc, bool accumulate);
void gemm_nt(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c,
             int ldc, bool accumulate);
void gemm_tn(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c,
             int ldc, bool accumulate);
double dot(const double* a, const double* b, int n);
void axpy(int n, double alpha, const double* x, double* y);
void adam_update(int n, double* p, const double* g, double* m, double* v, double lr, double beta1,
                 double beta2, double eps, double inv_bc1, double inv_bc2);
void prelu_forward(int n, const double* x, double slope, double* y);
double prelu_backward(int n, const double* x, const double* gy, double slope, double* gx);

// Scalar reference entry points, callable regardless of the active ISA
// (the equivalence tests compare these against the dispatched path).
namespace scalar {
void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate);
void gemm_nt(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate);
void gemm_tn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c,
             int ldc, bool accumulate);
float dot(const float* a, const float* b, int n);
void axpy(int n, float alpha, const float* x, float* y);
void adam_update(int n, float* p, const float* g, float* m, float* v, float lr, float beta1,
                 float beta2, float eps, float inv_bc1, float inv_bc2);
void prelu_forward(int n, const float* x, float slope, float* y);
float prelu_backward(int n, const float* x, const float* gy, float slope, float* gx);
}  // namespace scalar

}  // namespace radcam::kernels
