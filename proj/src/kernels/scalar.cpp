#include "xrego/kernels.hpp"

#include <cmath>

namespace xrego::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        s[0] += a[i] * b[i];
        s[1] += a[i + 1] * b[i + 1];
        s[2] += a[i + 2] * b[i + 2];
        s[3] += a[i + 3] * b[i + 3];
    }
    double r = (s[0] + s[1]) + (s[2] + s[3]);
    for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
    return r;
}

void affine_scalar(const double* A, std::size_t rows, std::size_t cols, const double* y,
                   const double* p, double* out) {
    for (std::size_t i = 0; i < rows; ++i) out[i] = p[i];
    for (std::size_t j = 0; j < cols; ++j) {
        const double* col = A + j * rows;
        const double yj = y[j];
        for (std::size_t i = 0; i < rows; ++i) out[i] += col[i] * yj;
    }
}

BoxExcess box_excess_scalar(const double* x, std::size_t n) {
    double mx = -1.0;
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double e = std::fabs(x[i + l]) - 1.0;
            mx = e > mx ? e : mx;
            s[l] += e > 0.0 ? e : 0.0;
        }
    }
    double r = (s[0] + s[1]) + (s[2] + s[3]);
    for (std::size_t i = n4; i < n; ++i) {
        const double e = std::fabs(x[i]) - 1.0;
        mx = e > mx ? e : mx;
        r += e > 0.0 ? e : 0.0;
    }
    return {mx, r};
}

}  // namespace

const Table& scalar() {
    static const Table t{"scalar", dot_scalar, affine_scalar, box_excess_scalar};
    return t;
}

}  // namespace xrego::kernels
