#pragma once

#include <optional>
#include <vector>

#include "xrego/embedcore.hpp"
#include "xrego/problems.hpp"

namespace xrego {

inline constexpr double kFeasTol = 1e-12;

struct YBox {
    Vector lo;
    Vector hi;
    // argmin / argmax vertex of each coordinate LP, before inflation.
    std::vector<Vector> argmin;
    std::vector<Vector> argmax;
};

// Per-coordinate bounds of {y : -1 <= A y + p <= 1}, from 2d small LPs,
// widened by 1e-9 * max(1, |bound|).
YBox compute_y_box(const Embedding& emb);

// The reduced problem min f(Ay+p) s.t. Ay+p in [-1,1]^D. Holds a
// non-owning reference to the run's problem so evaluations land on its
// counter.
class ReducedProblem {
public:
    ReducedProblem(Embedding emb, SyntheticProblem& prob);
    // No-embedding mode: y = x, A = I, p = 0, y_box = X.
    static ReducedProblem full_space(SyntheticProblem& prob);

    const Embedding& embedding() const { return emb_; }
    const YBox& y_box() const { return box_; }
    SyntheticProblem& problem() { return *prob_; }
    const SyntheticProblem& problem() const { return *prob_; }
    Eigen::Index d() const { return emb_.d(); }
    Eigen::Index D() const { return emb_.D(); }
    bool identity() const { return identity_; }

    void map(const double* y, double* x) const;
    Vector map(const Vector& y) const;

    bool is_feasible(const Vector& y) const;
    double penalized_objective(const Vector& y);
    double penalized_objective(const double* y);

    // f(p) through the counted path; sets penalty_scale on first use.
    double anchor_value();
    std::optional<double> penalty_scale() const { return penalty_; }

private:
    ReducedProblem(Embedding emb, SyntheticProblem& prob, bool identity);

    Embedding emb_;
    SyntheticProblem* prob_;
    bool identity_ = false;
    YBox box_;
    std::optional<double> penalty_;
    std::vector<double> xbuf_;
};

bool is_feasible(const ReducedProblem& rp, const Vector& y);
double penalized_objective(ReducedProblem& rp, const Vector& y);

}  // namespace xrego
