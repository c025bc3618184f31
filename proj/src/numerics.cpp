#include "xrego/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "xrego/errors.hpp"

namespace xrego {

void QuadratureConfig::validate() const {
    require(abs_tol > 0.0 && rel_tol > 0.0, "QuadratureConfig: tolerances must be positive");
    require(tail_mass > 0.0 && tail_mass < 1.0, "QuadratureConfig: tail_mass must be in (0,1)");
    require(max_subdivisions >= 1, "QuadratureConfig: max_subdivisions must be >= 1");
}

double erf(double x) { return std::erf(x); }

double chi2_cdf(double x, int k) {
    require(k >= 1, "chi2_cdf: degrees of freedom must be >= 1");
    require(x >= 0.0, "chi2_cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    return boost::math::gamma_p(0.5 * k, 0.5 * x);
}

double f_cdf(double x, int v1, int v2) {
    require(v1 >= 1 && v2 >= 1, "f_cdf: degrees of freedom must be >= 1");
    require(x >= 0.0, "f_cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double a = v1 * x;
    // I_{a/(a+v2)}(v1/2, v2/2), written with the complement when the
    // argument is close to 1.
    if (a > v2) return boost::math::ibetac(0.5 * v2, 0.5 * v1, v2 / (a + v2));
    return boost::math::ibeta(0.5 * v1, 0.5 * v2, a / (a + v2));
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg) {
    cfg.validate();
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, cfg.max_subdivisions, cfg.rel_tol, &err);
    if (!std::isfinite(v) || err > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(v)))
        throw QuadratureError("integrate: no convergence on [" + std::to_string(a) + ", " +
                                  std::to_string(b) + "], error estimate " + std::to_string(err),
                              err);
    return v;
}

double chi_tail_radius(int n, double tail) {
    require(n >= 1, "chi_tail_radius: n must be >= 1");
    return std::sqrt(2.0 * boost::math::gamma_q_inv(0.5 * n, tail));
}

double pdf_w(const Vector& wbar, const DistributionParams& params) {
    require(params.m >= 1 && params.n >= 1, "pdf_w: need m, n >= 1");
    require_dims(wbar.size() == params.m, "pdf_w: wbar must have m entries");
    if (!(params.delta > 0.0)) throw DegenerateInput("pdf_w: delta must be positive");
    const double m = params.m, n = params.n, d = params.delta;
    const double logc = -m * std::log(std::sqrt(std::numbers::pi) * d) +
                        std::lgamma(0.5 * (m + n)) - std::lgamma(0.5 * n);
    return std::exp(logc - 0.5 * (m + n) * std::log1p(wbar.squaredNorm() / (d * d)));
}

namespace {

// Density of the chi_n law at s, as used by the outer integral.
double chi_log_density(int n, double s) {
    return (n - 1) * std::log(s) - 0.5 * s * s - (0.5 * n - 1.0) * std::numbers::ln2 -
           std::lgamma(0.5 * n);
}

double outer_integral(int n, const std::function<double(double)>& log_inner,
                      const QuadratureConfig& cfg) {
    const double smax = chi_tail_radius(n, cfg.tail_mass);
    auto h = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double li = log_inner(s);
        if (li == -INFINITY) return 0.0;
        return std::exp(li + chi_log_density(n, s));
    };
    // Splitting at the chi mode keeps the adaptive rule away from a
    // single panel straddling the peak.
    const double mode = std::sqrt(std::max(n - 1, 0) + 0.0);
    double v = 0.0;
    if (mode > 0.0 && mode < smax) {
        v = integrate(h, 0.0, mode, cfg) + integrate(h, mode, smax, cfg);
    } else {
        v = integrate(h, 0.0, smax, cfg);
    }
    return v;
}

}  // namespace

double integral_J(int m, int n, double delta, const QuadratureConfig& cfg) {
    require(m >= 1 && n >= 1, "integral_J: need m, n >= 1");
    if (!(delta > 0.0)) throw DegenerateInput("integral_J: delta must be positive");
    const double c = 1.0 / (std::numbers::sqrt2 * delta);
    const double v = outer_integral(
        n, [&](double s) { return m * std::log(std::erf(s * c)); }, cfg);
    return std::min(v, 1.0);
}

double integral_I(const Vector& p, const Vector& x_top_star, const EffectiveSubspace& sub, int n,
                  const QuadratureConfig& cfg) {
    require_dims(p.size() == sub.D() && x_top_star.size() == sub.D(),
                 "integral_I: dimension mismatch");
    require(n >= 1, "integral_I: n must be >= 1");
    if (!sub.is_aligned())
        throw InvalidArgument("integral_I: only coordinate-aligned subspaces are supported");
    const Eigen::Index de = sub.d_e();
    const Eigen::Index D = sub.D();
    Vector p_top = Vector::Zero(D);
    p_top.head(de) = p.head(de);
    const double delta = (x_top_star - p_top).norm();
    if (!(delta > 0.0)) throw DegenerateInput("integral_I: x_top* equals p_top");
    const double c = 1.0 / (std::numbers::sqrt2 * delta);
    auto log_inner = [&](double s) {
        double acc = 0.0;
        for (Eigen::Index i = de; i < D; ++i) {
            const double t = 0.5 * (std::erf(s * (1.0 - p[i]) * c) - std::erf(s * (-1.0 - p[i]) * c));
            if (t <= 0.0) return -std::numeric_limits<double>::infinity();
            acc += std::log(t);
        }
        return acc;
    };
    return std::clamp(outer_integral(n, log_inner, cfg), 0.0, 1.0);
}

double asymptotic_J(int m, int n, double delta) {
    require(m >= 1 && n >= 1, "asymptotic_J: need m, n >= 1");
    if (!(delta > 0.0)) throw DegenerateInput("asymptotic_J: Gamma(delta^2) has a pole at 0");
    const double d2 = delta * delta;
    const double r = 0.5 * (n + d2 - 2.0);
    if (std::fabs(r) < 1e-15) return 1.0 / (m + 1.0);
    const double logC = 0.5 * d2 * std::log(std::numbers::pi) + n * std::log(delta) +
                        std::lgamma(d2) - std::lgamma(0.5 * n);
    const double L = std::log(m + 1.0);
    const double lead = std::pow(L, r) - 0.5 * r * std::log(L) * std::pow(L, r - 1.0);
    return std::exp(logC - d2 * std::log(m + 1.0)) * lead;
}

}  // namespace xrego
