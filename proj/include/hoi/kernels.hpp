#pragma once

#include <cstddef>
#include <cstdint>

// Arithmetic inner loops used by the tensor engine. Every kernel has a
// scalar reference implementation and, on x86-64, an AVX2/FMA variant
// selected at runtime. The scalar path is the semantic reference; the
// vector paths are equivalence-tested against it.
//
// All matrices are dense row-major. GEMM suffixes follow BLAS habits:
//   nn: C = [C +] A[m x k] * B[k x n]
//   nt: C = [C +] A[m x n] * B[k x n]^T   (C is m x k)
//   tn: C = [C +] A[m x k]^T * B[m x n]   (C is k x n)

namespace hoi::kern {

enum class Isa { scalar, avx2 };

// ISA selected for this process (detected once, overridable for tests).
Isa active_isa();
void set_isa(Isa isa);  // throws ConfigError if unsupported on this CPU
bool avx2_supported();
const char* isa_name(Isa isa);

void gemm_nn(int m, int k, int n, const float* a, const float* b, float* c, bool acc);
void gemm_nn(int m, int k, int n, const double* a, const double* b, double* c, bool acc);
void gemm_nt(int m, int k, int n, const float* a, const float* b, float* c, bool acc);
void gemm_nt(int m, int k, int n, const double* a, const double* b, double* c, bool acc);
void gemm_tn(int m, int k, int n, const float* a, const float* b, float* c, bool acc);
void gemm_tn(int m, int k, int n, const double* a, const double* b, double* c, bool acc);

// y = a + b, y = a * b (elementwise, equal length)
void vadd(const float* a, const float* b, float* y, size_t n);
void vadd(const double* a, const double* b, double* y, size_t n);
void vmul(const float* a, const float* b, float* y, size_t n);
void vmul(const double* a, const double* b, double* y, size_t n);

// y += alpha * x
void vaxpy(float alpha, const float* x, float* y, size_t n);
void vaxpy(double alpha, const double* x, double* y, size_t n);

// y = alpha * x
void vscale(float alpha, const float* x, float* y, size_t n);
void vscale(double alpha, const double* x, double* y, size_t n);

// y = max(x, 0)
void vrelu(const float* x, float* y, size_t n);
void vrelu(const double* x, double* y, size_t n);

// dx += dy where x > 0
void vrelu_bwd(const float* x, const float* dy, float* dx, size_t n);
void vrelu_bwd(const double* x, const double* dy, double* dx, size_t n);

// y += a * b (elementwise)
void vmuladd(const float* a, const float* b, float* y, size_t n);
void vmuladd(const double* a, const double* b, double* y, size_t n);

// y = 1/(1+exp(-x)); y = tanh(x). The f32 AVX2 variants use a polynomial
// exp (Cephes coefficients, ~1e-7 relative); f64 always goes through libm.
void vsigmoid(const float* x, float* y, size_t n);
void vsigmoid(const double* x, double* y, size_t n);
void vtanh(const float* x, float* y, size_t n);
void vtanh(const double* x, double* y, size_t n);

// dx += dy * y * (1 - y), with y = sigmoid output
void vsigmoid_bwd(const float* y, const float* dy, float* dx, size_t n);
void vsigmoid_bwd(const double* y, const double* dy, double* dx, size_t n);
// dx += dy * (1 - y^2), with y = tanh output
void vtanh_bwd(const float* y, const float* dy, float* dx, size_t n);
void vtanh_bwd(const double* y, const double* dy, double* dx, size_t n);

// Accumulates sum and sum of squares (reduction order differs per ISA).
void vsum2(const float* x, size_t n, float* sum, float* sumsq);
void vsum2(const double* x, size_t n, double* sum, double* sumsq);

// Bias-corrected Adam update for one parameter block:
//   m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g*g
//   p -= lr * (m*bc1) / (sqrt(v*bc2) + eps)
// bc1 = 1/(1-b1^t), bc2 = 1/(1-b2^t) are precomputed by the caller.
void adam_step(float* p, const float* g, float* m, float* v, size_t n,
               float lr, float b1, float b2, float bc1, float bc2, float eps);
void adam_step(double* p, const double* g, double* m, double* v, size_t n,
               double lr, double b1, double b2, double bc1, double bc2, double eps);

namespace scalar {
template <class T>
void gemm_nn(int m, int k, int n, const T* a, const T* b, T* c, bool acc);
template <class T>
void gemm_nt(int m, int k, int n, const T* a, const T* b, T* c, bool acc);
template <class T>
void gemm_tn(int m, int k, int n, const T* a, const T* b, T* c, bool acc);
template <class T>
void vadd(const T* a, const T* b, T* y, size_t n);
template <class T>
void vmul(const T* a, const T* b, T* y, size_t n);
template <class T>
void vaxpy(T alpha, const T* x, T* y, size_t n);
template <class T>
void vscale(T alpha, const T* x, T* y, size_t n);
template <class T>
void vrelu(const T* x, T* y, size_t n);
template <class T>
void vrelu_bwd(const T* x, const T* dy, T* dx, size_t n);
template <class T>
void vmuladd(const T* a, const T* b, T* y, size_t n);
template <class T>
void vsigmoid(const T* x, T* y, size_t n);
template <class T>
void vtanh(const T* x, T* y, size_t n);
template <class T>
void vsigmoid_bwd(const T* y, const T* dy, T* dx, size_t n);
template <class T>
void vtanh_bwd(const T* y, const T* dy, T* dx, size_t n);
template <class T>
void vsum2(const T* x, size_t n, T* sum, T* sumsq);
template <class T>
void adam_step(T* p, const T* g, T* m, T* v, size_t n, T lr, T b1, T b2,
               T bc1, T bc2, T eps);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define HOI_HAVE_AVX2_KERNELS 1
namespace avx2 {
void gemm_nn(int m, int k, int n, const float* a, const float* b, float* c, bool acc);
void gemm_nn(int m, int k, int n, const double* a, const double* b, double* c, bool acc);
void gemm_nt(int m, int k, int n, const float* a, const float* b, float* c, bool acc);
void gemm_nt(int m, int k, int n, const double* a, const double* b, double* c, bool acc);
void gemm_tn(int m, int k, int n, const float* a, const float* b, float* c, bool acc);
void gemm_tn(int m, int k, int n, const double* a, const double* b, double* c, bool acc);
void vadd(const float* a, const float* b, float* y, size_t n);
void vadd(const double* a, const double* b, double* y, size_t n);
void vmul(const float* a, const float* b, float* y, size_t n);
void vmul(const double* a, const double* b, double* y, size_t n);
void vaxpy(float alpha, const float* x, float* y, size_t n);
void vaxpy(double alpha, const double* x, double* y, size_t n);
void vscale(float alpha, const float* x, float* y, size_t n);
void vscale(double alpha, const double* x, double* y, size_t n);
void vrelu(const float* x, float* y, size_t n);
void vrelu(const double* x, double* y, size_t n);
void vrelu_bwd(const float* x, const float* dy, float* dx, size_t n);
void vrelu_bwd(const double* x, const double* dy, double* dx, size_t n);
void vmuladd(const float* a, const float* b, float* y, size_t n);
void vmuladd(const double* a, const double* b, double* y, size_t n);
void vsigmoid(const float* x, float* y, size_t n);
void vsigmoid(const double* x, double* y, size_t n);
void vtanh(const float* x, float* y, size_t n);
void vtanh(const double* x, double* y, size_t n);
void vsigmoid_bwd(const float* y, const float* dy, float* dx, size_t n);
void vsigmoid_bwd(const double* y, const double* dy, double* dx, size_t n);
void vtanh_bwd(const float* y, const float* dy, float* dx, size_t n);
void vtanh_bwd(const double* y, const double* dy, double* dx, size_t n);
void vsum2(const float* x, size_t n, float* sum, float* sumsq);
void vsum2(const double* x, size_t n, double* sum, double* sumsq);
void adam_step(float* p, const float* g, float* m, float* v, size_t n,
               float lr, float b1, float b2, float bc1, float bc2, float eps);
void adam_step(double* p, const double* g, double* m, double* v, size_t n,
               double lr, double b1, double b2, double bc1, double bc2, double eps);
}  // namespace avx2
#else
#define HOI_HAVE_AVX2_KERNELS 0
#endif

}  // namespace hoi::kern
