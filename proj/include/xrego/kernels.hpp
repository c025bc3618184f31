#pragma once

// Hot loops of the embedding path. Every variant performs the same
// floating point operations in the same order as the scalar reference,
// so results are bitwise identical whichever path is selected.

#include <cstddef>
#include <string_view>

namespace xrego::kernels {

struct BoxExcess {
    double max_excess;  // max_i |x_i| - 1, may be negative
    double l1_excess;   // sum_i max(|x_i| - 1, 0)
};

struct Table {
    const char* name;
    // Four interleaved partial sums over i mod 4, combined as (s0+s1)+(s2+s3),
    // then the tail in index order.
    double (*dot)(const double* a, const double* b, std::size_t n);
    // out = A*y + p for column-major A (rows x cols). Row i accumulates
    // p_i + A_i0*y_0 + A_i1*y_1 + ... left to right.
    void (*affine)(const double* A, std::size_t rows, std::size_t cols, const double* y,
                   const double* p, double* out);
    BoxExcess (*box_excess)(const double* x, std::size_t n);
};

const Table& scalar();
// nullptr when the variant is not compiled in or the CPU lacks it.
const Table* avx2();
const Table* neon();

// Chosen once per process: XREGO_SIMD=scalar|avx2|neon forces a path,
// otherwise the best supported variant wins.
const Table& active();

inline double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline void affine(const double* A, std::size_t rows, std::size_t cols, const double* y,
                   const double* p, double* out) {
    active().affine(A, rows, cols, y, p, out);
}
inline BoxExcess box_excess(const double* x, std::size_t n) {
    return active().box_excess(x, n);
}

}  // namespace xrego::kernels
