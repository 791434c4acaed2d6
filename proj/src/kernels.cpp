#include "hoi/kernels.hpp"

#include "hoi/errors.hpp"

namespace hoi::kern {

bool avx2_supported() {
#if HOI_HAVE_AVX2_KERNELS
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {
Isa detect() { return avx2_supported() ? Isa::avx2 : Isa::scalar; }
Isa g_isa = detect();
}  // namespace

Isa active_isa() { return g_isa; }

void set_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_supported())
        throw ConfigError("avx2 kernels not supported on this CPU");
    g_isa = isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if HOI_HAVE_AVX2_KERNELS
#define HOI_DISPATCH(fn, ...)                \
    do {                                     \
        if (g_isa == Isa::avx2)              \
            avx2::fn(__VA_ARGS__);           \
        else                                 \
            scalar::fn(__VA_ARGS__);         \
    } while (0)
#else
#define HOI_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void gemm_nn(int m, int k, int n, const float* a, const float* b, float* c, bool acc) {
    HOI_DISPATCH(gemm_nn, m, k, n, a, b, c, acc);
}
void gemm_nn(int m, int k, int n, const double* a, const double* b, double* c, bool acc) {
    HOI_DISPATCH(gemm_nn, m, k, n, a, b, c, acc);
}
void gemm_nt(int m, int k, int n, const float* a, const float* b, float* c, bool acc) {
    HOI_DISPATCH(gemm_nt, m, k, n, a, b, c, acc);
}
void gemm_nt(int m, int k, int n, const double* a, const double* b, double* c, bool acc) {
    HOI_DISPATCH(gemm_nt, m, k, n, a, b, c, acc);
}
void gemm_tn(int m, int k, int n, const float* a, const float* b, float* c, bool acc) {
    HOI_DISPATCH(gemm_tn, m, k, n, a, b, c, acc);
}
void gemm_tn(int m, int k, int n, const double* a, const double* b, double* c, bool acc) {
    HOI_DISPATCH(gemm_tn, m, k, n, a, b, c, acc);
}
void vadd(const float* a, const float* b, float* y, size_t n) { HOI_DISPATCH(vadd, a, b, y, n); }
void vadd(const double* a, const double* b, double* y, size_t n) { HOI_DISPATCH(vadd, a, b, y, n); }
void vmul(const float* a, const float* b, float* y, size_t n) { HOI_DISPATCH(vmul, a, b, y, n); }
void vmul(const double* a, const double* b, double* y, size_t n) { HOI_DISPATCH(vmul, a, b, y, n); }
void vaxpy(float alpha, const float* x, float* y, size_t n) { HOI_DISPATCH(vaxpy, alpha, x, y, n); }
void vaxpy(double alpha, const double* x, double* y, size_t n) { HOI_DISPATCH(vaxpy, alpha, x, y, n); }
void vscale(float alpha, const float* x, float* y, size_t n) { HOI_DISPATCH(vscale, alpha, x, y, n); }
void vscale(double alpha, const double* x, double* y, size_t n) { HOI_DISPATCH(vscale, alpha, x, y, n); }
void vrelu(const float* x, float* y, size_t n) { HOI_DISPATCH(vrelu, x, y, n); }
void vrelu(const double* x, double* y, size_t n) { HOI_DISPATCH(vrelu, x, y, n); }
void vrelu_bwd(const float* x, const float* dy, float* dx, size_t n) {
    HOI_DISPATCH(vrelu_bwd, x, dy, dx, n);
}
void vrelu_bwd(const double* x, const double* dy, double* dx, size_t n) {
    HOI_DISPATCH(vrelu_bwd, x, dy, dx, n);
}
void vsum2(const float* x, size_t n, float* sum, float* sumsq) {
    HOI_DISPATCH(vsum2, x, n, sum, sumsq);
}
void vsum2(const double* x, size_t n, double* sum, double* sumsq) {
    HOI_DISPATCH(vsum2, x, n, sum, sumsq);
}
void adam_step(float* p, const float* g, float* m, float* v, size_t n,
               float lr, float b1, float b2, float bc1, float bc2, float eps) {
    HOI_DISPATCH(adam_step, p, g, m, v, n, lr, b1, b2, bc1, bc2, eps);
}
void adam_step(double* p, const double* g, double* m, double* v, size_t n,
               double lr, double b1, double b2, double bc1, double bc2, double eps) {
    HOI_DISPATCH(adam_step, p, g, m, v, n, lr, b1, b2, bc1, bc2, eps);
}

}  // namespace hoi::kern
