#include <algorithm>
#include <cmath>

#include "xrego/theory.hpp"

namespace xrego {
namespace {

struct Worst {
    double value = 0.0;
    std::uint64_t seed = 0;
    bool any = false;
    void take(double v, std::uint64_t s) {
        if (!any || v > value) {
            value = v;
            seed = s;
            any = true;
        }
    }
};

Check make_check(std::string name, const Worst& w, double tol, std::string detail = {}) {
    return {std::move(name), w.value <= tol, w.value, tol, w.seed, std::move(detail)};
}

}  // namespace

std::vector<Check> structural_invariants(int instances, std::uint64_t seed) {
    Worst ortho, nullspace, minnorm, recon, znorm, effdim, xopt, feas;
    const auto& cat = catalog();
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t s = splitmix64(seed + static_cast<std::uint64_t>(i));
        SeededRng rng(s, 1);
        const auto& base = cat[static_cast<std::size_t>(i) % cat.size()];
        const int de = base.d_e;
        const int D = de + 1 + static_cast<int>(rng.next_u64() % 20);
        const int d = de + static_cast<int>(rng.next_u64() % 3);
        SyntheticProblem prob = lift(base, D, rng);
        const auto& sub = prob.subspace();

        const Matrix I = Matrix::Identity(D, D);
        ortho.take(std::max(sub.orthogonality_residual(),
                            (prob.Q() * prob.Q().transpose() - I).cwiseAbs().maxCoeff()),
                   s);

        const Vector p = rng.uniform_box(D);
        const MinNormSample ms = draw_min_norm(prob, p, std::min(d, D), SeededRng(s, 2), 0);
        const Matrix B = sub.U.transpose() * ms.A;
        // Null space of B from a complete QR of B^T.
        Eigen::HouseholderQR<Matrix> qr(B.transpose());
        const Matrix Qf = qr.householderQ() * Matrix::Identity(B.cols(), B.cols());
        const Matrix N = Qf.rightCols(B.cols() - B.rows());
        if (N.cols() > 0) {
            nullspace.take((N.transpose() * ms.y2).cwiseAbs().maxCoeff(), s);
            double viol = 0.0;
            for (int t = 0; t < 20; ++t) {
                Vector c(N.cols());
                for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = rng.normal();
                viol = std::max(viol, ms.y2.norm() - (ms.y2 + N * c).norm());
            }
            minnorm.take(std::max(viol, 0.0), s);
        }
        const Vector p_top = sub.U * (sub.U.transpose() * p);
        recon.take((ms.A * ms.y2 - (prob.x_top_star() - p_top + sub.V * ms.w)).norm(), s);
        znorm.take(std::fabs(ms.z.norm() - (prob.x_top_star() - p_top).norm()), s);

        for (int t = 0; t < 10; ++t) {
            const Vector x = rng.uniform_box(D);
            Vector r(D - de);
            for (Eigen::Index j = 0; j < r.size(); ++j) r[j] = rng.normal();
            const double fx = prob.peek(x);
            const double fy = prob.peek(Vector(x + sub.V * r));
            effdim.take(std::fabs(fy - fx) / (1.0 + std::fabs(fx)), s);
        }

        RunConfig cfg;
        cfg.K = 3;
        cfg.policy = PPolicy{static_cast<PolicyKind>(i % 4)};
        cfg.solver = SolverSpec::local();
        cfg.per_embedding_budget.max_evals = 100;
        cfg.master_seed = s;
        const RunRecord rec = run(prob, cfg);
        double best = INFINITY;
        double prev = INFINITY;
        for (std::size_t k = 0; k < rec.entries.size(); ++k) {
            const auto& e = rec.entries[k];
            best = std::min(best, e.f_xk);
            double err = std::fabs(e.f_xopt - best);
            if (e.f_xopt > prev) err = std::max(err, e.f_xopt - prev);
            if (prob.peek(x_opt(rec, static_cast<int>(k + 1))) - best > 1e-9 * (1.0 + std::fabs(best)))
                err = std::max(err, 1.0);
            prev = e.f_xopt;
            xopt.take(err, s);
            feas.take(std::max(e.x.cwiseAbs().maxCoeff() - 1.0, 0.0), s);
        }
    }
    return {
        make_check("orthogonality_residual", ortho, 1e-10),
        make_check("min_norm_nullspace_orthogonality", nullspace, 1e-8),
        make_check("min_norm_vs_nullspace_samples", minnorm, 1e-10),
        make_check("reconstruction_identity", recon, 1e-8),
        make_check("z_norm_identity", znorm, 1e-10),
        make_check("effective_dimensionality", effdim, 1e-9),
        make_check("x_opt_monotone", xopt, 1e-12),
        make_check("xk_feasible", feas, 1e-9),
    };
}

}  // namespace xrego
