#pragma once

#include <functional>
#include <vector>

namespace xrego {

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t n = 0;
};

// One-sample Kolmogorov-Smirnov test. The p-value uses the asymptotic
// Kolmogorov law with Stephens' finite-N correction.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_q(double lambda);

}  // namespace xrego
