#include "xrego/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <cmath>

namespace xrego::kernels {
namespace {

// Two float64x2 accumulators hold the lanes (s0,s1) and (s2,s3).
double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double r = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
               (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
    for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
    return r;
}

void affine_neon(const double* A, std::size_t rows, std::size_t cols, const double* y,
                 const double* p, double* out) {
    const std::size_t r2 = rows & ~std::size_t{1};
    for (std::size_t i = 0; i < r2; i += 2) {
        float64x2_t acc = vld1q_f64(p + i);
        for (std::size_t j = 0; j < cols; ++j)
            acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(A + j * rows + i), vdupq_n_f64(y[j])));
        vst1q_f64(out + i, acc);
    }
    for (std::size_t i = r2; i < rows; ++i) {
        double acc = p[i];
        for (std::size_t j = 0; j < cols; ++j) acc += A[j * rows + i] * y[j];
        out[i] = acc;
    }
}

BoxExcess box_excess_neon(const double* x, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t zero = vdupq_n_f64(0.0);
    float64x2_t mlo = vdupq_n_f64(-1.0), mhi = mlo;
    float64x2_t lo = zero, hi = zero;
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const float64x2_t e0 = vsubq_f64(vabsq_f64(vld1q_f64(x + i)), one);
        const float64x2_t e1 = vsubq_f64(vabsq_f64(vld1q_f64(x + i + 2)), one);
        mlo = vmaxq_f64(mlo, e0);
        mhi = vmaxq_f64(mhi, e1);
        lo = vaddq_f64(lo, vmaxq_f64(e0, zero));
        hi = vaddq_f64(hi, vmaxq_f64(e1, zero));
    }
    double best = vmaxvq_f64(vmaxq_f64(mlo, mhi));
    double r = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
               (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
    for (std::size_t i = n4; i < n; ++i) {
        const double e = std::fabs(x[i]) - 1.0;
        best = e > best ? e : best;
        r += e > 0.0 ? e : 0.0;
    }
    return {best, r};
}

}  // namespace

const Table* neon() {
    static const Table t{"neon", dot_neon, affine_neon, box_excess_neon};
    return &t;
}

}  // namespace xrego::kernels

#else

namespace xrego::kernels {
const Table* neon() { return nullptr; }
}  // namespace xrego::kernels

#endif
