#include "hoi/kernels.hpp"

#if HOI_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <cstring>
#include <vector>

// AVX2/FMA variants. GEMM uses FMA (compute-bound, validated against the
// scalar reference with a rounding tolerance). The elementwise kernels
// keep the scalar mul/add rounding sequence so they are bit-identical to
// the reference; their tests assert exact equality.

namespace hoi::kern::avx2 {

namespace {

alignas(32) constexpr int32_t kMask32[16] = {-1, -1, -1, -1, -1, -1, -1, -1,
                                             0,  0,  0,  0,  0,  0,  0,  0};
alignas(32) constexpr int64_t kMask64[8] = {-1, -1, -1, -1, 0, 0, 0, 0};

inline __m256i tail_mask32(int r) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(kMask32 + 8 - r));
}
inline __m256i tail_mask64(int r) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(kMask64 + 4 - r));
}

// ---- f32 GEMM microkernels: R rows x (16 | 8 | masked<=7) columns ----

template <int R>
inline void mk16_f32(int k, const float* a, int lda, const float* b, int ldb,
                     float* c, int ldc, bool acc) {
    __m256 c0[R], c1[R];
    for (int r = 0; r < R; ++r) {
        if (acc) {
            c0[r] = _mm256_loadu_ps(c + size_t(r) * ldc);
            c1[r] = _mm256_loadu_ps(c + size_t(r) * ldc + 8);
        } else {
            c0[r] = _mm256_setzero_ps();
            c1[r] = _mm256_setzero_ps();
        }
    }
    for (int l = 0; l < k; ++l) {
        __m256 b0 = _mm256_loadu_ps(b + size_t(l) * ldb);
        __m256 b1 = _mm256_loadu_ps(b + size_t(l) * ldb + 8);
        for (int r = 0; r < R; ++r) {
            __m256 av = _mm256_broadcast_ss(a + size_t(r) * lda + l);
            c0[r] = _mm256_fmadd_ps(av, b0, c0[r]);
            c1[r] = _mm256_fmadd_ps(av, b1, c1[r]);
        }
    }
    for (int r = 0; r < R; ++r) {
        _mm256_storeu_ps(c + size_t(r) * ldc, c0[r]);
        _mm256_storeu_ps(c + size_t(r) * ldc + 8, c1[r]);
    }
}

template <int R>
inline void mk8_f32(int k, const float* a, int lda, const float* b, int ldb,
                    float* c, int ldc, bool acc) {
    __m256 c0[R];
    for (int r = 0; r < R; ++r)
        c0[r] = acc ? _mm256_loadu_ps(c + size_t(r) * ldc) : _mm256_setzero_ps();
    for (int l = 0; l < k; ++l) {
        __m256 b0 = _mm256_loadu_ps(b + size_t(l) * ldb);
        for (int r = 0; r < R; ++r) {
            __m256 av = _mm256_broadcast_ss(a + size_t(r) * lda + l);
            c0[r] = _mm256_fmadd_ps(av, b0, c0[r]);
        }
    }
    for (int r = 0; r < R; ++r) _mm256_storeu_ps(c + size_t(r) * ldc, c0[r]);
}

template <int R>
inline void mkm_f32(int k, const float* a, int lda, const float* b, int ldb,
                    float* c, int ldc, bool acc, int cols) {
    const __m256i mask = tail_mask32(cols);
    __m256 c0[R];
    for (int r = 0; r < R; ++r)
        c0[r] = acc ? _mm256_maskload_ps(c + size_t(r) * ldc, mask)
                    : _mm256_setzero_ps();
    for (int l = 0; l < k; ++l) {
        __m256 b0 = _mm256_maskload_ps(b + size_t(l) * ldb, mask);
        for (int r = 0; r < R; ++r) {
            __m256 av = _mm256_broadcast_ss(a + size_t(r) * lda + l);
            c0[r] = _mm256_fmadd_ps(av, b0, c0[r]);
        }
    }
    for (int r = 0; r < R; ++r) _mm256_maskstore_ps(c + size_t(r) * ldc, mask, c0[r]);
}

template <int R>
void band_f32(int k, int n, const float* a, int lda, const float* b, int ldb,
              float* c, int ldc, bool acc) {
    int j = 0;
    for (; j + 16 <= n; j += 16) mk16_f32<R>(k, a, lda, b + j, ldb, c + j, ldc, acc);
    if (j + 8 <= n) {
        mk8_f32<R>(k, a, lda, b + j, ldb, c + j, ldc, acc);
        j += 8;
    }
    if (j < n) mkm_f32<R>(k, a, lda, b + j, ldb, c + j, ldc, acc, n - j);
}

// ---- f64 GEMM microkernels: R rows x (8 | 4 | masked<=3) columns ----

template <int R>
inline void mk8_f64(int k, const double* a, int lda, const double* b, int ldb,
                    double* c, int ldc, bool acc) {
    __m256d c0[R], c1[R];
    for (int r = 0; r < R; ++r) {
        if (acc) {
            c0[r] = _mm256_loadu_pd(c + size_t(r) * ldc);
            c1[r] = _mm256_loadu_pd(c + size_t(r) * ldc + 4);
        } else {
            c0[r] = _mm256_setzero_pd();
            c1[r] = _mm256_setzero_pd();
        }
    }
    for (int l = 0; l < k; ++l) {
        __m256d b0 = _mm256_loadu_pd(b + size_t(l) * ldb);
        __m256d b1 = _mm256_loadu_pd(b + size_t(l) * ldb + 4);
        for (int r = 0; r < R; ++r) {
            __m256d av = _mm256_broadcast_sd(a + size_t(r) * lda + l);
            c0[r] = _mm256_fmadd_pd(av, b0, c0[r]);
            c1[r] = _mm256_fmadd_pd(av, b1, c1[r]);
        }
    }
    for (int r = 0; r < R; ++r) {
        _mm256_storeu_pd(c + size_t(r) * ldc, c0[r]);
        _mm256_storeu_pd(c + size_t(r) * ldc + 4, c1[r]);
    }
}

template <int R>
inline void mk4_f64(int k, const double* a, int lda, const double* b, int ldb,
                    double* c, int ldc, bool acc) {
    __m256d c0[R];
    for (int r = 0; r < R; ++r)
        c0[r] = acc ? _mm256_loadu_pd(c + size_t(r) * ldc) : _mm256_setzero_pd();
    for (int l = 0; l < k; ++l) {
        __m256d b0 = _mm256_loadu_pd(b + size_t(l) * ldb);
        for (int r = 0; r < R; ++r) {
            __m256d av = _mm256_broadcast_sd(a + size_t(r) * lda + l);
            c0[r] = _mm256_fmadd_pd(av, b0, c0[r]);
        }
    }
    for (int r = 0; r < R; ++r) _mm256_storeu_pd(c + size_t(r) * ldc, c0[r]);
}

template <int R>
inline void mkm_f64(int k, const double* a, int lda, const double* b, int ldb,
                    double* c, int ldc, bool acc, int cols) {
    const __m256i mask = tail_mask64(cols);
    __m256d c0[R];
    for (int r = 0; r < R; ++r)
        c0[r] = acc ? _mm256_maskload_pd(c + size_t(r) * ldc, mask)
                    : _mm256_setzero_pd();
    for (int l = 0; l < k; ++l) {
        __m256d b0 = _mm256_maskload_pd(b + size_t(l) * ldb, mask);
        for (int r = 0; r < R; ++r) {
            __m256d av = _mm256_broadcast_sd(a + size_t(r) * lda + l);
            c0[r] = _mm256_fmadd_pd(av, b0, c0[r]);
        }
    }
    for (int r = 0; r < R; ++r) _mm256_maskstore_pd(c + size_t(r) * ldc, mask, c0[r]);
}

template <int R>
void band_f64(int k, int n, const double* a, int lda, const double* b, int ldb,
              double* c, int ldc, bool acc) {
    int j = 0;
    for (; j + 8 <= n; j += 8) mk8_f64<R>(k, a, lda, b + j, ldb, c + j, ldc, acc);
    if (j + 4 <= n) {
        mk4_f64<R>(k, a, lda, b + j, ldb, c + j, ldc, acc);
        j += 4;
    }
    if (j < n) mkm_f64<R>(k, a, lda, b + j, ldb, c + j, ldc, acc, n - j);
}

// Blocked transpose: dst[n x m] = src[m x n]^T. The nt/tn entry points
// reduce to gemm_nn through this; the transpose is O(mn) next to the
// O(mnk) multiply.
template <class T>
void transpose(int m, int n, const T* src, T* dst) {
    constexpr int B = 32;
    for (int i0 = 0; i0 < m; i0 += B)
        for (int j0 = 0; j0 < n; j0 += B) {
            int i1 = i0 + B < m ? i0 + B : m;
            int j1 = j0 + B < n ? j0 + B : n;
            for (int i = i0; i < i1; ++i)
                for (int j = j0; j < j1; ++j)
                    dst[size_t(j) * m + i] = src[size_t(i) * n + j];
        }
}

template <class T>
std::vector<T>& scratch() {
    thread_local std::vector<T> buf;
    return buf;
}

}  // namespace

void gemm_nn(int m, int k, int n, const float* a, const float* b, float* c, bool acc) {
    int i = 0;
    for (; i + 6 <= m; i += 6)
        band_f32<6>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc);
    switch (m - i) {
        case 5: band_f32<5>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        case 4: band_f32<4>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        case 3: band_f32<3>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        case 2: band_f32<2>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        case 1: band_f32<1>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        default: break;
    }
}

void gemm_nn(int m, int k, int n, const double* a, const double* b, double* c, bool acc) {
    int i = 0;
    for (; i + 6 <= m; i += 6)
        band_f64<6>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc);
    switch (m - i) {
        case 5: band_f64<5>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        case 4: band_f64<4>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        case 3: band_f64<3>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        case 2: band_f64<2>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        case 1: band_f64<1>(k, n, a + size_t(i) * k, k, b, n, c + size_t(i) * n, n, acc); break;
        default: break;
    }
}

template <class T>
static void gemm_nt_impl(int m, int k, int n, const T* a, const T* b, T* c, bool acc) {
    auto& buf = scratch<T>();
    buf.resize(size_t(n) * k);
    transpose(k, n, b, buf.data());  // b is k x n; buf is n x k
    gemm_nn(m, n, k, a, buf.data(), c, acc);
}

void gemm_nt(int m, int k, int n, const float* a, const float* b, float* c, bool acc) {
    gemm_nt_impl(m, k, n, a, b, c, acc);
}
void gemm_nt(int m, int k, int n, const double* a, const double* b, double* c, bool acc) {
    gemm_nt_impl(m, k, n, a, b, c, acc);
}

template <class T>
static void gemm_tn_impl(int m, int k, int n, const T* a, const T* b, T* c, bool acc) {
    auto& buf = scratch<T>();
    buf.resize(size_t(k) * m);
    transpose(m, k, a, buf.data());  // a is m x k; buf is k x m
    gemm_nn(k, m, n, buf.data(), b, c, acc);
}

void gemm_tn(int m, int k, int n, const float* a, const float* b, float* c, bool acc) {
    gemm_tn_impl(m, k, n, a, b, c, acc);
}
void gemm_tn(int m, int k, int n, const double* a, const double* b, double* c, bool acc) {
    gemm_tn_impl(m, k, n, a, b, c, acc);
}

// ---- elementwise (bit-identical to scalar: mul/add, no FMA) ----

void vadd(const float* a, const float* b, float* y, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    for (; i < n; ++i) y[i] = a[i] + b[i];
}
void vadd(const double* a, const double* b, double* y, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) y[i] = a[i] + b[i];
}

void vmul(const float* a, const float* b, float* y, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(y + i, _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    for (; i < n; ++i) y[i] = a[i] * b[i];
}
void vmul(const double* a, const double* b, double* y, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) y[i] = a[i] * b[i];
}

void vaxpy(float alpha, const float* x, float* y, size_t n) {
    const __m256 va = _mm256_set1_ps(alpha);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 prod = _mm256_mul_ps(va, _mm256_loadu_ps(x + i));
        _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}
void vaxpy(double alpha, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void vscale(float alpha, const float* x, float* y, size_t n) {
    const __m256 va = _mm256_set1_ps(alpha);
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(y + i, _mm256_mul_ps(va, _mm256_loadu_ps(x + i)));
    for (; i < n; ++i) y[i] = alpha * x[i];
}
void vscale(double alpha, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = alpha * x[i];
}

void vrelu(const float* x, float* y, size_t n) {
    const __m256 z = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(y + i, _mm256_max_ps(_mm256_loadu_ps(x + i), z));
    for (; i < n; ++i) y[i] = x[i] > 0.f ? x[i] : 0.f;
}
void vrelu(const double* x, double* y, size_t n) {
    const __m256d z = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), z));
    for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void vrelu_bwd(const float* x, const float* dy, float* dx, size_t n) {
    const __m256 z = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vx = _mm256_loadu_ps(x + i);
        __m256 vdx = _mm256_loadu_ps(dx + i);
        __m256 sum = _mm256_add_ps(vdx, _mm256_loadu_ps(dy + i));
        __m256 gt = _mm256_cmp_ps(vx, z, _CMP_GT_OQ);
        _mm256_storeu_ps(dx + i, _mm256_blendv_ps(vdx, sum, gt));
    }
    for (; i < n; ++i)
        if (x[i] > 0.f) dx[i] += dy[i];
}
void vrelu_bwd(const double* x, const double* dy, double* dx, size_t n) {
    const __m256d z = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vdx = _mm256_loadu_pd(dx + i);
        __m256d sum = _mm256_add_pd(vdx, _mm256_loadu_pd(dy + i));
        __m256d gt = _mm256_cmp_pd(vx, z, _CMP_GT_OQ);
        _mm256_storeu_pd(dx + i, _mm256_blendv_pd(vdx, sum, gt));
    }
    for (; i < n; ++i)
        if (x[i] > 0.0) dx[i] += dy[i];
}

void vmuladd(const float* a, const float* b, float* y, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 prod = _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i));
        _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i), prod));
    }
    for (; i < n; ++i) y[i] += a[i] * b[i];
}
void vmuladd(const double* a, const double* b, double* y, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] += a[i] * b[i];
}

namespace {

// exp on 8 floats, Cephes polynomial. Exact at x = 0 (returns 1.0f), which
// keeps sigmoid(0) == 0.5 and tanh(0) == 0 bit-exact.
inline __m256 exp256_ps(__m256 x) {
    const __m256 exp_hi = _mm256_set1_ps(88.3762626647950f);
    const __m256 exp_lo = _mm256_set1_ps(-88.3762626647949f);
    const __m256 log2e = _mm256_set1_ps(1.44269504088896341f);
    const __m256 c1 = _mm256_set1_ps(0.693359375f);
    const __m256 c2 = _mm256_set1_ps(-2.12194440e-4f);
    const __m256 p0 = _mm256_set1_ps(1.9875691500e-4f);
    const __m256 p1 = _mm256_set1_ps(1.3981999507e-3f);
    const __m256 p2 = _mm256_set1_ps(8.3334519073e-3f);
    const __m256 p3 = _mm256_set1_ps(4.1665795894e-2f);
    const __m256 p4 = _mm256_set1_ps(1.6666665459e-1f);
    const __m256 p5 = _mm256_set1_ps(5.0000001201e-1f);
    const __m256 one = _mm256_set1_ps(1.0f);

    x = _mm256_min_ps(x, exp_hi);
    x = _mm256_max_ps(x, exp_lo);

    __m256 fx = _mm256_fmadd_ps(x, log2e, _mm256_set1_ps(0.5f));
    fx = _mm256_floor_ps(fx);
    x = _mm256_fnmadd_ps(fx, c1, x);
    x = _mm256_fnmadd_ps(fx, c2, x);

    __m256 z = _mm256_mul_ps(x, x);
    __m256 y = p0;
    y = _mm256_fmadd_ps(y, x, p1);
    y = _mm256_fmadd_ps(y, x, p2);
    y = _mm256_fmadd_ps(y, x, p3);
    y = _mm256_fmadd_ps(y, x, p4);
    y = _mm256_fmadd_ps(y, x, p5);
    y = _mm256_fmadd_ps(y, z, x);
    y = _mm256_add_ps(y, one);

    __m256i n = _mm256_cvtps_epi32(fx);
    n = _mm256_add_epi32(n, _mm256_set1_epi32(0x7f));
    n = _mm256_slli_epi32(n, 23);
    return _mm256_mul_ps(y, _mm256_castsi256_ps(n));
}

}  // namespace

void vsigmoid(const float* x, float* y, size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vx = _mm256_loadu_ps(x + i);
        __m256 e = exp256_ps(_mm256_sub_ps(_mm256_setzero_ps(), vx));
        _mm256_storeu_ps(y + i, _mm256_div_ps(one, _mm256_add_ps(one, e)));
    }
    for (; i < n; ++i) y[i] = 1.f / (1.f + std::exp(-x[i]));
}
void vsigmoid(const double* x, double* y, size_t n) { scalar::vsigmoid(x, y, n); }

void vtanh(const float* x, float* y, size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    const __m256 two = _mm256_set1_ps(2.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vx = _mm256_loadu_ps(x + i);
        __m256 e = exp256_ps(_mm256_mul_ps(two, vx));
        __m256 num = _mm256_sub_ps(e, one);
        __m256 den = _mm256_add_ps(e, one);
        _mm256_storeu_ps(y + i, _mm256_div_ps(num, den));
    }
    for (; i < n; ++i) y[i] = std::tanh(x[i]);
}
void vtanh(const double* x, double* y, size_t n) { scalar::vtanh(x, y, n); }

void vsigmoid_bwd(const float* y, const float* dy, float* dx, size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vy = _mm256_loadu_ps(y + i);
        __m256 d = _mm256_mul_ps(vy, _mm256_sub_ps(one, vy));
        __m256 prod = _mm256_mul_ps(_mm256_loadu_ps(dy + i), d);
        _mm256_storeu_ps(dx + i, _mm256_add_ps(_mm256_loadu_ps(dx + i), prod));
    }
    for (; i < n; ++i) dx[i] += dy[i] * (y[i] * (1.f - y[i]));
}
void vsigmoid_bwd(const double* y, const double* dy, double* dx, size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d d = _mm256_mul_pd(vy, _mm256_sub_pd(one, vy));
        __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(dy + i), d);
        _mm256_storeu_pd(dx + i, _mm256_add_pd(_mm256_loadu_pd(dx + i), prod));
    }
    for (; i < n; ++i) dx[i] += dy[i] * (y[i] * (1.0 - y[i]));
}

void vtanh_bwd(const float* y, const float* dy, float* dx, size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vy = _mm256_loadu_ps(y + i);
        __m256 d = _mm256_sub_ps(one, _mm256_mul_ps(vy, vy));
        __m256 prod = _mm256_mul_ps(_mm256_loadu_ps(dy + i), d);
        _mm256_storeu_ps(dx + i, _mm256_add_ps(_mm256_loadu_ps(dx + i), prod));
    }
    for (; i < n; ++i) dx[i] += dy[i] * (1.f - y[i] * y[i]);
}
void vtanh_bwd(const double* y, const double* dy, double* dx, size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d d = _mm256_sub_pd(one, _mm256_mul_pd(vy, vy));
        __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(dy + i), d);
        _mm256_storeu_pd(dx + i, _mm256_add_pd(_mm256_loadu_pd(dx + i), prod));
    }
    for (; i < n; ++i) dx[i] += dy[i] * (1.0 - y[i] * y[i]);
}

void vsum2(const float* x, size_t n, float* sum, float* sumsq) {
    __m256 s = _mm256_setzero_ps(), ss = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        s = _mm256_add_ps(s, v);
        ss = _mm256_fmadd_ps(v, v, ss);
    }
    alignas(32) float ls[8], lss[8];
    _mm256_store_ps(ls, s);
    _mm256_store_ps(lss, ss);
    float rs = 0.f, rss = 0.f;
    for (int j = 0; j < 8; ++j) {
        rs += ls[j];
        rss += lss[j];
    }
    for (; i < n; ++i) {
        rs += x[i];
        rss += x[i] * x[i];
    }
    *sum = rs;
    *sumsq = rss;
}
void vsum2(const double* x, size_t n, double* sum, double* sumsq) {
    __m256d s = _mm256_setzero_pd(), ss = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        s = _mm256_add_pd(s, v);
        ss = _mm256_fmadd_pd(v, v, ss);
    }
    alignas(32) double ls[4], lss[4];
    _mm256_store_pd(ls, s);
    _mm256_store_pd(lss, ss);
    double rs = 0.0, rss = 0.0;
    for (int j = 0; j < 4; ++j) {
        rs += ls[j];
        rss += lss[j];
    }
    for (; i < n; ++i) {
        rs += x[i];
        rss += x[i] * x[i];
    }
    *sum = rs;
    *sumsq = rss;
}

void adam_step(float* p, const float* g, float* m, float* v, size_t n,
               float lr, float b1, float b2, float bc1, float bc2, float eps) {
    const __m256 vb1 = _mm256_set1_ps(b1), vc1 = _mm256_set1_ps(1.f - b1);
    const __m256 vb2 = _mm256_set1_ps(b2), vc2 = _mm256_set1_ps(1.f - b2);
    const __m256 vbc1 = _mm256_set1_ps(bc1), vbc2 = _mm256_set1_ps(bc2);
    const __m256 vlr = _mm256_set1_ps(lr), veps = _mm256_set1_ps(eps);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vg = _mm256_loadu_ps(g + i);
        __m256 vm = _mm256_add_ps(_mm256_mul_ps(vb1, _mm256_loadu_ps(m + i)),
                                  _mm256_mul_ps(vc1, vg));
        __m256 vv = _mm256_add_ps(_mm256_mul_ps(vb2, _mm256_loadu_ps(v + i)),
                                  _mm256_mul_ps(vc2, _mm256_mul_ps(vg, vg)));
        _mm256_storeu_ps(m + i, vm);
        _mm256_storeu_ps(v + i, vv);
        __m256 mhat = _mm256_mul_ps(vm, vbc1);
        __m256 vhat = _mm256_mul_ps(vv, vbc2);
        __m256 den = _mm256_add_ps(_mm256_sqrt_ps(vhat), veps);
        __m256 upd = _mm256_mul_ps(vlr, _mm256_div_ps(mhat, den));
        _mm256_storeu_ps(p + i, _mm256_sub_ps(_mm256_loadu_ps(p + i), upd));
    }
    if (i < n) scalar::adam_step(p + i, g + i, m + i, v + i, n - i, lr, b1, b2, bc1, bc2, eps);
}
void adam_step(double* p, const double* g, double* m, double* v, size_t n,
               double lr, double b1, double b2, double bc1, double bc2, double eps) {
    const __m256d vb1 = _mm256_set1_pd(b1), vc1 = _mm256_set1_pd(1.0 - b1);
    const __m256d vb2 = _mm256_set1_pd(b2), vc2 = _mm256_set1_pd(1.0 - b2);
    const __m256d vbc1 = _mm256_set1_pd(bc1), vbc2 = _mm256_set1_pd(bc2);
    const __m256d vlr = _mm256_set1_pd(lr), veps = _mm256_set1_pd(eps);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vg = _mm256_loadu_pd(g + i);
        __m256d vm = _mm256_add_pd(_mm256_mul_pd(vb1, _mm256_loadu_pd(m + i)),
                                   _mm256_mul_pd(vc1, vg));
        __m256d vv = _mm256_add_pd(_mm256_mul_pd(vb2, _mm256_loadu_pd(v + i)),
                                   _mm256_mul_pd(vc2, _mm256_mul_pd(vg, vg)));
        _mm256_storeu_pd(m + i, vm);
        _mm256_storeu_pd(v + i, vv);
        __m256d mhat = _mm256_mul_pd(vm, vbc1);
        __m256d vhat = _mm256_mul_pd(vv, vbc2);
        __m256d den = _mm256_add_pd(_mm256_sqrt_pd(vhat), veps);
        __m256d upd = _mm256_mul_pd(vlr, _mm256_div_pd(mhat, den));
        _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), upd));
    }
    if (i < n) scalar::adam_step(p + i, g + i, m + i, v + i, n - i, lr, b1, b2, bc1, bc2, eps);
}

}  // namespace hoi::kern::avx2

#endif  // HOI_HAVE_AVX2_KERNELS
