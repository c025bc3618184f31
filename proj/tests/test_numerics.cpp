#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "xrego/errors.hpp"
#include "xrego/numerics.hpp"
#include "xrego/rng.hpp"
#include "xrego/stats.hpp"

using namespace xrego;

namespace {

double erf_series(double x) {
    // 2/sqrt(pi) sum_k (-1)^k x^(2k+1) / (k! (2k+1)), 64 terms.
    double term = x, sum = x;
    for (int k = 1; k < 64; ++k) {
        term *= -x * x / k;
        sum += term / (2 * k + 1);
    }
    return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

double chi2_pdf(double x, int k) {
    return std::exp((k / 2.0 - 1) * std::log(x) - x / 2 - (k / 2.0) * std::log(2.0) - std::lgamma(k / 2.0));
}

double f_pdf(double x, int a, int b) {
    const double la = std::lgamma((a + b) / 2.0) - std::lgamma(a / 2.0) - std::lgamma(b / 2.0);
    return std::exp(la + (a / 2.0) * std::log(static_cast<double>(a) / b) + (a / 2.0 - 1) * std::log(x) -
                    ((a + b) / 2.0) * std::log1p(static_cast<double>(a) * x / b));
}

// Composite Simpson with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

}  // namespace

TEST(Erf, Examples) {
    EXPECT_EQ(xrego::erf(0.0), 0.0);
    for (double x : {6.0, 7.5, 30.0}) EXPECT_LE(1.0 - xrego::erf(x), 1e-12);
    EXPECT_NEAR(xrego::erf(1.0), erf_series(1.0), 1e-12);
    EXPECT_NEAR(xrego::erf(1.0), 0.84270079294971486934, 1e-15);
    for (double x : {0.1, 0.5, 1.7, 3.2}) {
        EXPECT_EQ(xrego::erf(-x), -xrego::erf(x));
        EXPECT_NEAR(xrego::erf(x), erf_series(x), 1e-12);
    }
}

TEST(Cdf, ClosedFormsAndOracles) {
    for (int k : {1, 2, 7}) EXPECT_EQ(chi2_cdf(0.0, k), 0.0);
    EXPECT_NEAR(chi2_cdf(2.0, 2), 1.0 - std::exp(-1.0), 1e-9);
    EXPECT_NEAR(chi2_cdf(3.5, 5), 0.37661237225041796539, 1e-12);
    for (int v : {1, 2, 3, 10, 40}) EXPECT_NEAR(f_cdf(1.0, v, v), 0.5, 1e-9);
    EXPECT_NEAR(f_cdf(2.5, 3, 7), 0.85649054372106081098, 1e-12);
    EXPECT_THROW(chi2_cdf(1.0, 0), InvalidArgument);
    EXPECT_THROW(f_cdf(1.0, 0, 3), InvalidArgument);
    EXPECT_THROW(f_cdf(1.0, 3, 0), InvalidArgument);
}

TEST(Cdf, MonotoneBoundedAndMatchPdfIntegral) {
    for (int k : {1, 2, 3, 6, 11}) {
        double prev = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double x = 0.5 * i;
            const double c = chi2_cdf(x, k);
            EXPECT_GE(c, prev);
            EXPECT_LE(c, 1.0);
            prev = c;
            // Integrable endpoint singularity at 0 for k = 1: substitute x = t^2.
            const double brute = simpson([&](double t) { return t > 0 ? 2 * t * chi2_pdf(t * t, k) : (k == 1 ? std::sqrt(2 / std::numbers::pi) : 0.0); },
                                         0.0, std::sqrt(x), 2000);
            EXPECT_NEAR(c, brute, 1e-7) << "k=" << k << " x=" << x;
        }
    }
    for (auto [a, b] : {std::pair{2, 3}, {3, 7}, {6, 2}, {4, 4}}) {
        double prev = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double x = 0.25 * i;
            const double c = f_cdf(x, a, b);
            EXPECT_GE(c, prev);
            EXPECT_LE(c, 1.0);
            prev = c;
            const double brute = simpson([&](double t) { return t > 0 ? 2 * t * f_pdf(t * t, a, b) : 0.0; }, 0.0,
                                         std::sqrt(x), 2000);
            EXPECT_NEAR(c, brute, 1e-7) << "F(" << a << "," << b << ") x=" << x;
        }
    }
}

TEST(PdfW, CauchyAndSphericalSymmetry) {
    EXPECT_NEAR(pdf_w(Vector::Zero(1), {1, 1, 1.0}), 1.0 / std::numbers::pi, 1e-15);
    const DistributionParams prm{3, 2, 0.7};
    const Vector a = (Vector(3) << 0.3, -0.4, 1.2).finished();
    const Vector b = (Vector(3) << 1.3, 0.0, 0.0).finished();
    EXPECT_NEAR(pdf_w(a, prm), pdf_w(b, prm), 1e-15);
    EXPECT_GT(pdf_w(Vector::Constant(3, 1e3), prm), 0.0);
    EXPECT_THROW(pdf_w(Vector::Zero(1), {1, 1, 0.0}), DegenerateInput);
    EXPECT_THROW(pdf_w(Vector::Zero(2), {1, 1, 1.0}), DimensionMismatch);
}

TEST(PdfW, NormalizesToOne) {
    for (int n : {1, 2, 5}) {
        for (double delta : {0.5, 1.0, 2.0}) {
            // m = 1: integrate over r >= 0 twice; m = 2: polar coordinates.
            // Heavy tails for n = 1, so map r = tan(t).
            const auto radial = [&](int m) {
                return 2.0 * integrate(
                                 [&](double t) {
                                     const double r = std::tan(t);
                                     const double c = 1.0 / (std::cos(t) * std::cos(t));
                                     Vector w = Vector::Zero(m);
                                     w[0] = r;
                                     const double area = m == 1 ? 1.0 : std::numbers::pi * r;
                                     return pdf_w(w, {m, n, delta}) * area * c;
                                 },
                                 0.0, std::numbers::pi / 2 - 1e-9);
            };
            EXPECT_NEAR(radial(1), 1.0, 1e-6) << "m=1 n=" << n << " delta=" << delta;
            EXPECT_NEAR(radial(2), 1.0, 1e-6) << "m=2 n=" << n << " delta=" << delta;
        }
    }
}

TEST(IntegralJ, ClosedFormAtDeltaOne) {
    for (int m = 1; m <= 30; ++m) EXPECT_NEAR(integral_J(m, 1, 1.0), 1.0 / (m + 1), 1e-6) << "m=" << m;
}

TEST(IntegralJ, FrozenHighPrecisionValues) {
    // Reference values from 30-digit quadrature of the defining integral.
    EXPECT_NEAR(integral_J(2, 2, 1.0), 0.55412642397957199, 1e-9);
    EXPECT_NEAR(integral_J(10, 3, std::sqrt(2.0)), 0.13811342974918539, 1e-9);
    EXPECT_NEAR(integral_J(4, 1, 0.5), 0.48176025872166673, 1e-9);
    EXPECT_NEAR(integral_J(20, 6, 4.0), 3.6126967975744979e-5, 1e-11);
    EXPECT_NEAR(integral_J(1, 1, 2.0), 0.29516723530086655, 1e-9);
}

TEST(IntegralJ, MonotoneInDeltaAndBoundedOnGrid) {
    const double deltas[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    for (int m = 1; m <= 20; ++m) {
        for (int n = 1; n <= 6; ++n) {
            double prev = 2.0;
            for (double dl : deltas) {
                const double J = integral_J(m, n, dl);
                EXPECT_GT(J, 0.0);
                EXPECT_LE(J, 1.0);
                EXPECT_LE(J, prev + 1e-12) << m << " " << n << " " << dl;
                prev = J;
            }
        }
    }
    EXPECT_THROW(integral_J(2, 1, 0.0), DegenerateInput);
}

TEST(IntegralJ, NonConvergenceIsReported) {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-30;
    cfg.rel_tol = 1e-30;
    cfg.max_subdivisions = 1;
    try {
        integral_J(50, 3, 0.3, cfg);
        FAIL() << "expected QuadratureError";
    } catch (const QuadratureError& e) {
        EXPECT_GT(e.achieved(), 0.0);
    }
}

TEST(IntegralI, FrozenValuesAndReductionToJ) {
    const auto sub = EffectiveSubspace::aligned(4, 2);
    const Vector x_top = (Vector(4) << 0.8, 0, 0, 0).finished();
    EXPECT_NEAR(integral_I(Vector::Zero(4), x_top, sub, 1), integral_J(2, 1, 0.8), 1e-9);
    EXPECT_NEAR(integral_I(Vector::Zero(4), x_top, sub, 1), 0.41746521466330735, 1e-9);
    const Vector p = (Vector(4) << 0, 0, 0.3, -0.6).finished();
    EXPECT_NEAR(integral_I(p, x_top, sub, 1), 0.34782844238593409, 1e-9);

    const auto sub5 = EffectiveSubspace::aligned(5, 2);
    const Vector x5 = (Vector(5) << 0.5, 0, 0, 0, 0).finished();
    const Vector p5 = (Vector(5) << -0.8, 0, 0.9, -0.2, 0.5).finished();
    EXPECT_NEAR(integral_I(p5, x5, sub5, 2), 0.19575091609797404, 1e-9);
}

TEST(IntegralI, LowerBoundOnRandomAnchors) {
    SeededRng rng(31, 0);
    for (int t = 0; t < 100; ++t) {
        const int de = 1 + static_cast<int>(rng.next_u64() % 3);
        const int D = de + 1 + static_cast<int>(rng.next_u64() % (12 - de));
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        const auto sub = EffectiveSubspace::aligned(D, de);
        Vector x_top = Vector::Zero(D);
        x_top.head(de) = rng.uniform_box(de);
        const Vector p = rng.uniform_box(D);
        const double delta = (x_top.head(de) - p.head(de)).norm();
        const int m = D - de;
        EXPECT_GE(integral_I(p, x_top, sub, n), std::ldexp(integral_J(m, n, delta / 2), -m) - 1e-8);
    }
}

TEST(IntegralI, MonteCarloCrossCheck) {
    // m = n = 1, delta = 1, p = 0: P(|w| <= 1) with w = Z delta / s, s ~ chi_1.
    SeededRng rng(32, 0);
    const int N = 20000;
    int hits = 0;
    for (int i = 0; i < N; ++i) {
        const double z = rng.normal();
        const double s = std::fabs(rng.normal());
        hits += std::fabs(z / s) <= 1.0;
    }
    const double est = static_cast<double>(hits) / N;
    const double se = std::sqrt(est * (1 - est) / N);
    const auto sub = EffectiveSubspace::aligned(2, 1);
    const Vector x_top = (Vector(2) << 1, 0).finished();
    EXPECT_NEAR(integral_I(Vector::Zero(2), x_top, sub, 1), est, 3 * se);
}

TEST(IntegralI, RejectsUnalignedAndDegenerate) {
    SeededRng rng(33, 0);
    const auto rot = EffectiveSubspace::from_rotation(sample_haar_orthogonal(4, rng), 2);
    EXPECT_THROW(integral_I(Vector::Zero(4), Vector::Ones(4), rot, 1), InvalidArgument);
    const auto al = EffectiveSubspace::aligned(4, 2);
    const Vector x = (Vector(4) << 0.5, 0.5, 0, 0).finished();
    const Vector p = (Vector(4) << 0.5, 0.5, 0.9, 0.1).finished();
    EXPECT_THROW(integral_I(p, x, al, 1), DegenerateInput);
}

TEST(AsymptoticJ, ExactWhenRIsZero) {
    for (int m : {1, 10, 1000}) EXPECT_DOUBLE_EQ(asymptotic_J(m, 1, 1.0), 1.0 / (m + 1));
    EXPECT_THROW(asymptotic_J(10, 2, 0.0), DegenerateInput);
}

TEST(AsymptoticJ, RatioTendsToOne) {
    double prev = 0.0;
    for (int m : {100, 1000, 10000}) {
        const double ratio = integral_J(m, 2, 1.0) / asymptotic_J(m, 2, 1.0);
        if (prev > 0.0) {
            EXPECT_LT(std::fabs(ratio - 1.0), std::fabs(prev - 1.0));
        }
        prev = ratio;
    }
    EXPECT_NEAR(prev, 1.0, 0.25);
    for (int m : {200, 400, 800}) EXPECT_LT(asymptotic_J(2 * m, 3, 1.5), asymptotic_J(m, 3, 1.5));
}

TEST(Quadrature, ConfigValidationAndTailRadius) {
    QuadratureConfig bad;
    bad.abs_tol = 0.0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad = {};
    bad.tail_mass = 0.0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    for (int n : {1, 2, 5}) {
        const double s = chi_tail_radius(n, 1e-12);
        EXPECT_NEAR(1.0 - chi2_cdf(s * s, n), 1e-12, 1e-14);
    }
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), 2.0, 1e-12);
}

TEST(Kolmogorov, KnownValues) {
    // Q_KS(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
    EXPECT_NEAR(kolmogorov_q(1.36), 0.0494, 1e-3);
    EXPECT_NEAR(kolmogorov_q(1.63), 0.0098, 1e-3);
    EXPECT_EQ(kolmogorov_q(0.0), 1.0);
    std::vector<double> s;
    for (int i = 0; i < 100; ++i) s.push_back((i + 0.5) / 100);
    const auto ks = ks_test(s, [](double x) { return std::clamp(x, 0.0, 1.0); });
    EXPECT_NEAR(ks.statistic, 0.005, 1e-12);
    EXPECT_GT(ks.p_value, 0.99);
    std::vector<double> shifted;
    for (double x : s) shifted.push_back(x * 0.5);
    EXPECT_LT(ks_test(shifted, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value, 1e-6);
}
