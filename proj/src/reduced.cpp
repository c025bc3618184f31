#include "xrego/reduced.hpp"

#include <cmath>

#include "xrego/errors.hpp"
#include "xrego/kernels.hpp"
#include "xrego/lp.hpp"

namespace xrego {

YBox compute_y_box(const Embedding& emb) {
    const Eigen::Index D = emb.D(), d = emb.d();
    Matrix G(2 * D, d);
    G.topRows(D) = emb.A;
    G.bottomRows(D) = -emb.A;
    Vector h(2 * D);
    h.head(D) = Vector::Ones(D) - emb.p;
    h.tail(D) = Vector::Ones(D) + emb.p;
    YBox box{Vector(d), Vector(d), {}, {}};
    const Vector zero = Vector::Zero(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        Vector c = Vector::Zero(d);
        c[j] = 1.0;
        const LpResult hi = lp_maximize(G, h, c, zero);
        c[j] = -1.0;
        const LpResult lo = lp_maximize(G, h, c, zero);
        box.argmax.push_back(hi.x);
        box.argmin.push_back(lo.x);
        const double u = hi.x[j], l = lo.x[j];
        box.hi[j] = u + 1e-9 * std::max(1.0, std::fabs(u));
        box.lo[j] = l - 1e-9 * std::max(1.0, std::fabs(l));
    }
    return box;
}

ReducedProblem::ReducedProblem(Embedding emb, SyntheticProblem& prob)
    : ReducedProblem(std::move(emb), prob, false) {}

ReducedProblem::ReducedProblem(Embedding emb, SyntheticProblem& prob, bool identity)
    : emb_(std::move(emb)), prob_(&prob), identity_(identity) {
    require_dims(emb_.D() == prob.D(), "ReducedProblem: embedding and problem dimensions differ");
    if (identity_) {
        box_ = {-Vector::Ones(emb_.d()), Vector::Ones(emb_.d()), {}, {}};
    } else {
        box_ = compute_y_box(emb_);
    }
    xbuf_.resize(static_cast<std::size_t>(emb_.D()));
}

ReducedProblem ReducedProblem::full_space(SyntheticProblem& prob) {
    const Eigen::Index D = prob.D();
    return ReducedProblem(Embedding(Matrix::Identity(D, D), Vector::Zero(D)), prob, true);
}

void ReducedProblem::map(const double* y, double* x) const {
    const std::size_t D = static_cast<std::size_t>(emb_.D());
    if (identity_) {
        for (std::size_t i = 0; i < D; ++i) x[i] = y[i];
        return;
    }
    kernels::affine(emb_.A.data(), D, static_cast<std::size_t>(emb_.d()), y, emb_.p.data(), x);
}

Vector ReducedProblem::map(const Vector& y) const {
    require_dims(y.size() == d(), "map: y has wrong dimension");
    Vector x(D());
    map(y.data(), x.data());
    return x;
}

bool ReducedProblem::is_feasible(const Vector& y) const {
    const Vector x = map(y);
    return kernels::box_excess(x.data(), static_cast<std::size_t>(x.size())).max_excess <= kFeasTol;
}

double ReducedProblem::penalized_objective(const Vector& y) {
    require_dims(y.size() == d(), "penalized_objective: y has wrong dimension");
    return penalized_objective(y.data());
}

double ReducedProblem::penalized_objective(const double* y) {
    map(y, xbuf_.data());
    const auto ex = kernels::box_excess(xbuf_.data(), xbuf_.size());
    if (ex.max_excess <= kFeasTol) return prob_->evaluate(xbuf_.data());
    const double scale = penalty_ ? *penalty_ : (anchor_value(), *penalty_);
    return scale * (1.0 + ex.l1_excess);
}

double ReducedProblem::anchor_value() {
    const double fp = prob_->evaluate(emb_.p.data());
    if (!penalty_) penalty_ = fp + 10.0 * (1.0 + std::fabs(fp));
    return fp;
}

bool is_feasible(const ReducedProblem& rp, const Vector& y) { return rp.is_feasible(y); }

double penalized_objective(ReducedProblem& rp, const Vector& y) { return rp.penalized_objective(y); }

}  // namespace xrego
