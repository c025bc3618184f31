#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "xrego/kernels.hpp"
#include "xrego/rng.hpp"

using namespace xrego;

namespace {

std::vector<const kernels::Table*> simd_tables() {
    std::vector<const kernels::Table*> out;
    if (auto* t = kernels::avx2()) out.push_back(t);
    if (auto* t = kernels::neon()) out.push_back(t);
    return out;
}

std::vector<double> random_vec(SeededRng& rng, std::size_t n, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = scale * rng.normal();
    return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Kernels, ScalarDotMatchesDefinedOrder) {
    const double a[] = {1, 2, 3, 4, 5, 6};
    const double b[] = {6, 5, 4, 3, 2, 1};
    // (s0+s1)+(s2+s3) with s_i = a_i b_i, then the tail 5*2 + 6*1.
    EXPECT_EQ(kernels::scalar().dot(a, b, 6), ((6.0 + 10.0) + (12.0 + 12.0)) + 10.0 + 6.0);
    EXPECT_EQ(kernels::scalar().dot(a, b, 0), 0.0);
}

TEST(Kernels, ScalarAffineAndBoxExcess) {
    // Column-major 3x2.
    const double A[] = {1, 2, 3, 4, 5, 6};
    const double y[] = {1, -1};
    const double p[] = {0.5, 0, -0.5};
    double out[3];
    kernels::scalar().affine(A, 3, 2, y, p, out);
    EXPECT_EQ(out[0], 0.5 + 1 - 4);
    EXPECT_EQ(out[1], 0 + 2 - 5);
    EXPECT_EQ(out[2], -0.5 + 3 - 6);

    const double x[] = {0.5, -1.5, 1.25, 0.0, -3.0};
    const auto e = kernels::scalar().box_excess(x, 5);
    EXPECT_DOUBLE_EQ(e.max_excess, 2.0);
    EXPECT_DOUBLE_EQ(e.l1_excess, 0.5 + 0.25 + 2.0);
    const auto inside = kernels::scalar().box_excess(x, 1);
    EXPECT_DOUBLE_EQ(inside.max_excess, -0.5);
    EXPECT_EQ(inside.l1_excess, 0.0);
}

TEST(Kernels, SimdVariantsAreBitwiseEqualToScalar) {
    const auto tables = simd_tables();
    if (tables.empty()) GTEST_SKIP() << "no SIMD variant on this CPU";
    SeededRng rng(11, 0);
    for (const auto* t : tables) {
        for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 101u, 1000u}) {
            const auto a = random_vec(rng, n);
            const auto b = random_vec(rng, n, 3.0);
            EXPECT_TRUE(same_bits(t->dot(a.data(), b.data(), n), kernels::scalar().dot(a.data(), b.data(), n)))
                << t->name << " dot n=" << n;

            const auto x = random_vec(rng, n, 1.2);
            const auto s = kernels::scalar().box_excess(x.data(), n);
            const auto v = t->box_excess(x.data(), n);
            EXPECT_TRUE(same_bits(s.max_excess, v.max_excess)) << t->name << " n=" << n;
            EXPECT_TRUE(same_bits(s.l1_excess, v.l1_excess)) << t->name << " n=" << n;
        }
        for (std::size_t rows : {1u, 3u, 4u, 9u, 100u}) {
            for (std::size_t cols : {1u, 2u, 5u}) {
                const auto A = random_vec(rng, rows * cols);
                const auto y = random_vec(rng, cols);
                const auto p = random_vec(rng, rows, 0.5);
                std::vector<double> o1(rows), o2(rows);
                kernels::scalar().affine(A.data(), rows, cols, y.data(), p.data(), o1.data());
                t->affine(A.data(), rows, cols, y.data(), p.data(), o2.data());
                for (std::size_t i = 0; i < rows; ++i)
                    EXPECT_TRUE(same_bits(o1[i], o2[i])) << t->name << " affine " << rows << "x" << cols;
            }
        }
    }
}

TEST(Kernels, ActiveHonorsEnvironmentOverride) {
    const char* env = std::getenv("XREGO_SIMD");
    if (env && std::string(env) == "scalar") {
        EXPECT_STREQ(kernels::active().name, "scalar");
    } else if (!simd_tables().empty()) {
        EXPECT_STRNE(kernels::active().name, "scalar");
    }
}
