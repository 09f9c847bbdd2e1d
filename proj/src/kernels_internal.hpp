#pragma once

// Internal linkage surface of the AVX2 translation unit (compiled with
// -mavx2 -mfma). Only ever called after the cpuid check in dispatch.
namespace radcam::kernels::avx2 {

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

}  // namespace radcam::kernels::avx2
