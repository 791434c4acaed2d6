#include <cmath>
#include <cstring>

#include "hoi/kernels.hpp"

// Reference kernels. Plain loops, no tricks; the vector variants are
// validated against these. Built with -ffp-contract=off so the rounding
// sequence is exactly what the source says.

namespace hoi::kern::scalar {

template <class T>
void gemm_nn(int m, int k, int n, const T* a, const T* b, T* c, bool acc) {
    if (!acc) std::memset(c, 0, sizeof(T) * size_t(m) * size_t(n));
    for (int i = 0; i < m; ++i) {
        const T* arow = a + size_t(i) * k;
        T* crow = c + size_t(i) * n;
        for (int l = 0; l < k; ++l) {
            T av = arow[l];
            if (av == T(0)) continue;
            const T* brow = b + size_t(l) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <class T>
void gemm_nt(int m, int k, int n, const T* a, const T* b, T* c, bool acc) {
    for (int i = 0; i < m; ++i) {
        const T* arow = a + size_t(i) * n;
        T* crow = c + size_t(i) * k;
        for (int j = 0; j < k; ++j) {
            const T* brow = b + size_t(j) * n;
            T s = 0;
            for (int l = 0; l < n; ++l) s += arow[l] * brow[l];
            crow[j] = acc ? crow[j] + s : s;
        }
    }
}

template <class T>
void gemm_tn(int m, int k, int n, const T* a, const T* b, T* c, bool acc) {
    if (!acc) std::memset(c, 0, sizeof(T) * size_t(k) * size_t(n));
    for (int l = 0; l < m; ++l) {
        const T* arow = a + size_t(l) * k;
        const T* brow = b + size_t(l) * n;
        for (int i = 0; i < k; ++i) {
            T av = arow[i];
            if (av == T(0)) continue;
            T* crow = c + size_t(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <class T>
void vadd(const T* a, const T* b, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = a[i] + b[i];
}

template <class T>
void vmul(const T* a, const T* b, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];
}

template <class T>
void vaxpy(T alpha, const T* x, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <class T>
void vscale(T alpha, const T* x, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = alpha * x[i];
}

template <class T>
void vrelu(const T* x, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
}

template <class T>
void vrelu_bwd(const T* x, const T* dy, T* dx, size_t n) {
    for (size_t i = 0; i < n; ++i)
        if (x[i] > T(0)) dx[i] += dy[i];
}

template <class T>
void vmuladd(const T* a, const T* b, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a[i] * b[i];
}

template <class T>
void vsigmoid(const T* x, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = T(1) / (T(1) + std::exp(-x[i]));
}

template <class T>
void vtanh(const T* x, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = std::tanh(x[i]);
}

template <class T>
void vsigmoid_bwd(const T* y, const T* dy, T* dx, size_t n) {
    for (size_t i = 0; i < n; ++i) dx[i] += dy[i] * (y[i] * (T(1) - y[i]));
}

template <class T>
void vtanh_bwd(const T* y, const T* dy, T* dx, size_t n) {
    for (size_t i = 0; i < n; ++i) dx[i] += dy[i] * (T(1) - y[i] * y[i]);
}

template <class T>
void vsum2(const T* x, size_t n, T* sum, T* sumsq) {
    T s = 0, ss = 0;
    for (size_t i = 0; i < n; ++i) {
        s += x[i];
        ss += x[i] * x[i];
    }
    *sum = s;
    *sumsq = ss;
}

template <class T>
void adam_step(T* p, const T* g, T* m, T* v, size_t n, T lr, T b1, T b2,
               T bc1, T bc2, T eps) {
    const T c1 = T(1) - b1;
    const T c2 = T(1) - b2;
    for (size_t i = 0; i < n; ++i) {
        T gi = g[i];
        m[i] = b1 * m[i] + c1 * gi;
        v[i] = b2 * v[i] + c2 * (gi * gi);
        T mhat = m[i] * bc1;
        T vhat = v[i] * bc2;
        p[i] -= lr * (mhat / (std::sqrt(vhat) + eps));
    }
}

template void gemm_nn<float>(int, int, int, const float*, const float*, float*, bool);
template void gemm_nn<double>(int, int, int, const double*, const double*, double*, bool);
template void gemm_nt<float>(int, int, int, const float*, const float*, float*, bool);
template void gemm_nt<double>(int, int, int, const double*, const double*, double*, bool);
template void gemm_tn<float>(int, int, int, const float*, const float*, float*, bool);
template void gemm_tn<double>(int, int, int, const double*, const double*, double*, bool);
template void vadd<float>(const float*, const float*, float*, size_t);
template void vadd<double>(const double*, const double*, double*, size_t);
template void vmul<float>(const float*, const float*, float*, size_t);
template void vmul<double>(const double*, const double*, double*, size_t);
template void vaxpy<float>(float, const float*, float*, size_t);
template void vaxpy<double>(double, const double*, double*, size_t);
template void vscale<float>(float, const float*, float*, size_t);
template void vscale<double>(double, const double*, double*, size_t);
template void vrelu<float>(const float*, float*, size_t);
template void vrelu<double>(const double*, double*, size_t);
template void vrelu_bwd<float>(const float*, const float*, float*, size_t);
template void vrelu_bwd<double>(const double*, const double*, double*, size_t);
template void vmuladd<float>(const float*, const float*, float*, size_t);
template void vmuladd<double>(const double*, const double*, double*, size_t);
template void vsigmoid<float>(const float*, float*, size_t);
template void vsigmoid<double>(const double*, double*, size_t);
template void vtanh<float>(const float*, float*, size_t);
template void vtanh<double>(const double*, double*, size_t);
template void vsigmoid_bwd<float>(const float*, const float*, float*, size_t);
template void vsigmoid_bwd<double>(const double*, const double*, double*, size_t);
template void vtanh_bwd<float>(const float*, const float*, float*, size_t);
template void vtanh_bwd<double>(const double*, const double*, double*, size_t);
template void vsum2<float>(const float*, size_t, float*, float*);
template void vsum2<double>(const double*, size_t, double*, double*);
template void adam_step<float>(float*, const float*, float*, float*, size_t,
                               float, float, float, float, float, float);
template void adam_step<double>(double*, const double*, double*, double*, size_t,
                                double, double, double, double, double, double);

}  // namespace hoi::kern::scalar
