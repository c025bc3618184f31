#include "xrego/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "xrego/errors.hpp"

namespace xrego {

LpResult lp_maximize(const Matrix& G, const Vector& h, const Vector& c, const Vector& x0) {
    const Eigen::Index m = G.rows(), n = G.cols();
    require_dims(h.size() == m && c.size() == n && x0.size() == n, "lp_maximize: dimension mismatch");
    Vector x = x0;
    std::vector<Eigen::Index> W;
    const double cnorm = std::max(c.norm(), 1e-300);
    const int max_iter = static_cast<int>(20 * (m + n)) + 100;
    for (int it = 0; it < max_iter; ++it) {
        Vector dir = c;
        Vector lam;
        if (!W.empty()) {
            Matrix AW(static_cast<Eigen::Index>(W.size()), n);
            for (std::size_t k = 0; k < W.size(); ++k) AW.row(static_cast<Eigen::Index>(k)) = G.row(W[k]);
            lam = AW.transpose().colPivHouseholderQr().solve(c);
            dir = c - AW.transpose() * lam;
        }
        if (dir.norm() > 1e-11 * cnorm) {
            Eigen::Index block = -1;
            double tmin = std::numeric_limits<double>::infinity();
            const Vector Gd = G * dir;
            const Vector slack = h - G * x;
            const double dn = dir.norm();
            for (Eigen::Index i = 0; i < m; ++i) {
                if (std::find(W.begin(), W.end(), i) != W.end()) continue;
                if (Gd[i] <= 1e-12 * G.row(i).norm() * dn) continue;
                const double t = std::max(slack[i], 0.0) / Gd[i];
                if (t < tmin) {
                    tmin = t;
                    block = i;
                }
            }
            if (block < 0) throw SolverError("lp_maximize: problem is unbounded");
            x += tmin * dir;
            W.push_back(block);
            continue;
        }
        Eigen::Index drop = -1;
        Eigen::Index drop_row = std::numeric_limits<Eigen::Index>::max();
        for (std::size_t k = 0; k < W.size(); ++k)
            if (lam[static_cast<Eigen::Index>(k)] < -1e-12 * cnorm && W[k] < drop_row) {
                drop_row = W[k];
                drop = static_cast<Eigen::Index>(k);
            }
        if (drop < 0) return {x, c.dot(x), it};
        W.erase(W.begin() + drop);
    }
    throw SolverError("lp_maximize: iteration limit reached");
}

}  // namespace xrego
