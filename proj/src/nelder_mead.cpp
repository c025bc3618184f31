#include <algorithm>
#include <cmath>
#include <vector>

#include "xrego/errors.hpp"
#include "xrego/solvers.hpp"

namespace xrego {

NelderMeadResult nelder_mead_local(const std::function<double(const Vector&)>& objective,
                                   const Vector& start, const Vector& lo, const Vector& hi,
                                   const NelderMeadOptions& opts, const std::function<bool()>& stop,
                                   std::optional<double> f_start) {
    const Eigen::Index n = start.size();
    require_dims(lo.size() == n && hi.size() == n && n >= 1, "nelder_mead_local: dimension mismatch");
    const double dn = static_cast<double>(n);
    // Standard coefficients up to n = 2, dimension-adaptive ones above
    // (they coincide at n = 2).
    double alpha = 1.0, beta = 2.0, gamma = 0.5, delta = 0.5;
    if (n > 2) {
        beta = 1.0 + 2.0 / dn;
        gamma = 0.75 - 1.0 / (2.0 * dn);
        delta = 1.0 - 1.0 / dn;
    }

    NelderMeadResult res;
    bool halted = false;
    auto f = [&](const Vector& x) {
        const double v = objective(x);
        if (v < res.f) {
            res.f = v;
            res.x = x;
        }
        if (stop && stop()) halted = true;
        return v;
    };

    std::vector<Vector> X(static_cast<std::size_t>(n + 1), start);
    std::vector<double> F(static_cast<std::size_t>(n + 1));
    if (f_start) {
        F[0] = *f_start;
        res.f = *f_start;
        res.x = start;
    } else {
        F[0] = f(start);
        if (halted) return res;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = opts.initial_step * (hi[i] - lo[i]);
        Vector& v = X[static_cast<std::size_t>(i + 1)];
        v[i] += (start[i] + h <= hi[i]) ? h : -h;
        F[static_cast<std::size_t>(i + 1)] = f(v);
        if (halted) return res;
    }

    Vector sum = Vector::Zero(n);
    for (const auto& v : X) sum += v;
    const int check_every = n <= 10 ? 1 : static_cast<int>(n);
    for (long iter = 0;; ++iter) {
        std::size_t ib = 0, iw = 0;
        for (std::size_t i = 1; i < F.size(); ++i) {
            if (F[i] < F[ib]) ib = i;
            if (F[i] >= F[iw]) iw = i;
        }
        std::size_t is = iw == 0 ? 1 : 0;
        for (std::size_t i = 0; i < F.size(); ++i)
            if (i != iw && F[i] > F[is]) is = i;

        if (iter % check_every == 0) {
            double diam = 0.0;
            for (const auto& v : X) diam = std::max(diam, (v - X[ib]).cwiseAbs().maxCoeff());
            if (diam < opts.tol) {
                res.converged = true;
                return res;
            }
            // Refresh the running sum to keep drift bounded.
            sum.setZero();
            for (const auto& v : X) sum += v;
        }

        const Vector cen = (sum - X[iw]) / dn;
        const Vector xr = cen + alpha * (cen - X[iw]);
        const double fr = f(xr);
        if (halted) return res;

        auto replace = [&](const Vector& x, double fx) {
            sum += x - X[iw];
            X[iw] = x;
            F[iw] = fx;
        };

        if (fr < F[ib]) {
            const Vector xe = cen + beta * (xr - cen);
            const double fe = f(xe);
            if (halted) return res;
            if (fe < fr) replace(xe, fe);
            else replace(xr, fr);
            continue;
        }
        if (fr < F[is]) {
            replace(xr, fr);
            continue;
        }
        bool shrink = false;
        if (fr < F[iw]) {
            const Vector xc = cen + gamma * (xr - cen);
            const double fc = f(xc);
            if (halted) return res;
            if (fc <= fr) replace(xc, fc);
            else shrink = true;
        } else {
            const Vector xc = cen - gamma * (cen - X[iw]);
            const double fc = f(xc);
            if (halted) return res;
            if (fc < F[iw]) replace(xc, fc);
            else shrink = true;
        }
        if (shrink) {
            const Vector xb = X[ib];
            for (std::size_t i = 0; i < X.size(); ++i) {
                if (i == ib) continue;
                X[i] = xb + delta * (X[i] - xb);
                F[i] = f(X[i]);
                if (halted) return res;
            }
            sum.setZero();
            for (const auto& v : X) sum += v;
        }
    }
}

}  // namespace xrego
