#include "xrego/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xrego/errors.hpp"

namespace xrego {

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    const double pi = std::numbers::pi;
    if (lambda < 1.18) {
        // Jacobi-transformed series converges fast for small lambda.
        double s = 0.0;
        for (int j = 1; j <= 50; ++j) {
            const double k = 2.0 * j - 1.0;
            const double t = std::exp(-k * k * pi * pi / (8.0 * lambda * lambda));
            s += t;
            if (t < 1e-17) break;
        }
        return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double t = std::exp(-2.0 * j * j * lambda * lambda);
        s += (j % 2 ? t : -t);
        if (t < 1e-17) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    require(!sample.empty(), "ks_test: empty sample");
    std::sort(sample.begin(), sample.end());
    const double N = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max(d, std::max(F - i / N, (i + 1) / N - F));
    }
    const double sn = std::sqrt(N);
    return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d), sample.size()};
}

}  // namespace xrego
