#include "xrego/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>

#define XREGO_AVX2 __attribute__((target("avx2")))

namespace xrego::kernels {
namespace {

XREGO_AVX2 double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    alignas(32) double s[4];
    _mm256_store_pd(s, acc);
    double r = (s[0] + s[1]) + (s[2] + s[3]);
    for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
    return r;
}

XREGO_AVX2 void affine_avx2(const double* A, std::size_t rows, std::size_t cols,
                            const double* y, const double* p, double* out) {
    const std::size_t r4 = rows & ~std::size_t{3};
    for (std::size_t i = 0; i < r4; i += 4) {
        __m256d acc = _mm256_loadu_pd(p + i);
        for (std::size_t j = 0; j < cols; ++j)
            acc = _mm256_add_pd(
                acc, _mm256_mul_pd(_mm256_loadu_pd(A + j * rows + i), _mm256_set1_pd(y[j])));
        _mm256_storeu_pd(out + i, acc);
    }
    for (std::size_t i = r4; i < rows; ++i) {
        double acc = p[i];
        for (std::size_t j = 0; j < cols; ++j) acc += A[j * rows + i] * y[j];
        out[i] = acc;
    }
}

XREGO_AVX2 BoxExcess box_excess_avx2(const double* x, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d mx = _mm256_set1_pd(-1.0);
    __m256d acc = zero;
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d e = _mm256_sub_pd(_mm256_and_pd(_mm256_loadu_pd(x + i), absmask), one);
        mx = _mm256_max_pd(mx, e);
        acc = _mm256_add_pd(acc, _mm256_max_pd(e, zero));
    }
    alignas(32) double s[4];
    alignas(32) double m[4];
    _mm256_store_pd(s, acc);
    _mm256_store_pd(m, mx);
    double best = m[0];
    for (int l = 1; l < 4; ++l) best = m[l] > best ? m[l] : best;
    double r = (s[0] + s[1]) + (s[2] + s[3]);
    for (std::size_t i = n4; i < n; ++i) {
        const double e = std::fabs(x[i]) - 1.0;
        best = e > best ? e : best;
        r += e > 0.0 ? e : 0.0;
    }
    return {best, r};
}

}  // namespace

const Table* avx2() {
    static const bool ok = __builtin_cpu_supports("avx2");
    static const Table t{"avx2", dot_avx2, affine_avx2, box_excess_avx2};
    return ok ? &t : nullptr;
}

}  // namespace xrego::kernels

#else

namespace xrego::kernels {
const Table* avx2() { return nullptr; }
}  // namespace xrego::kernels

#endif
