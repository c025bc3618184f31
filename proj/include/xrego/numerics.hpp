#pragma once

#include <functional>

#include "xrego/embedcore.hpp"

namespace xrego {

struct QuadratureConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    // Outer integrals over s stop at the radius where the chi_n tail mass
    // drops below this value.
    double tail_mass = 1e-12;
    // Maximum bisection depth of the adaptive Gauss-Kronrod rule.
    unsigned max_subdivisions = 20;

    void validate() const;
};

struct DistributionParams {
    int m;         // D - d_e
    int n;         // d - d_e + 1
    double delta;  // |x_top* - p_top|
};

double erf(double x);
double chi2_cdf(double x, int k);
double f_cdf(double x, int v1, int v2);

// Adaptive G7-K15 on [a, b]; throws QuadratureError when the error
// estimate misses max(abs_tol, rel_tol*|I|).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg = {});

// Radius s with P(chi_n > s) = tail.
double chi_tail_radius(int n, double tail);

// Multivariate t density of w-bar:
// (sqrt(pi) delta)^-m Gamma((m+n)/2)/Gamma(n/2) (1+|w|^2/delta^2)^-(m+n)/2.
double pdf_w(const Vector& wbar, const DistributionParams& params);

double integral_J(int m, int n, double delta, const QuadratureConfig& cfg = {});

// Aligned subspaces only (U spans the first d_e axes).
double integral_I(const Vector& p, const Vector& x_top_star, const EffectiveSubspace& sub, int n,
                  const QuadratureConfig& cfg = {});

// Two-term large-m expansion of J_{m,n}(delta); exactly 1/(m+1) when n + delta^2 = 2.
double asymptotic_J(int m, int n, double delta);

}  // namespace xrego
