#include <algorithm>
#include <cmath>
#include <set>

#include "xrego/errors.hpp"
#include "xrego/solvers.hpp"

namespace xrego {

double SolverSpec::tune(const std::string& key, double fallback) const {
    const auto it = tuning.find(key);
    return it == tuning.end() ? fallback : it->second;
}

void SolverSpec::validate() const {
    require(starts >= 1, "SolverSpec: starts must be >= 1");
    require(rho_assumed > 0.0 && rho_assumed <= 1.0, "SolverSpec: rho_assumed must be in (0,1]");
    static const std::set<std::string> known{"eps_direct", "simplex_tol", "initial_step",
                                             "max_calls_factor"};
    for (const auto& [k, v] : tuning) {
        if (!known.count(k)) throw InvalidArgument("SolverSpec: unknown tuning key " + k);
        require(std::isfinite(v) && v >= 0.0, "SolverSpec: tuning values must be finite and >= 0");
    }
}

std::string to_string(SolverKind k) {
    switch (k) {
        case SolverKind::DirectGlobal: return "direct";
        case SolverKind::MultiStartLocal: return "multistart";
        case SolverKind::SingleStartLocal: return "local";
        case SolverKind::RandomSearch: return "random";
    }
    return "?";
}

SolverKind parse_solver_kind(const std::string& s) {
    for (auto k : {SolverKind::DirectGlobal, SolverKind::MultiStartLocal, SolverKind::SingleStartLocal,
                   SolverKind::RandomSearch})
        if (to_string(k) == s) return k;
    throw InvalidArgument("unknown solver kind: " + s);
}

std::string SolverSpec::label() const {
    if (kind == SolverKind::MultiStartLocal) return "multistart" + std::to_string(starts);
    return to_string(kind);
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::TargetReached: return "TargetReached";
        case SolveStatus::BudgetExhausted: return "BudgetExhausted";
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::SolverError: return "SolverError";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Wraps the penalized objective: tracks the best feasible point and the
// stopping conditions shared by all solvers.
class Tracker {
public:
    Tracker(ReducedProblem& rp, const SolverBudget& b, double calls_factor)
        : rp_(rp), budget_(b), factor_(calls_factor), base_(rp.problem().evals()), t0_(Clock::now()) {
        set_share(b.max_evals);
    }

    void set_share(std::uint64_t evals) {
        limit_ = std::min(used() + evals, budget_.max_evals);
        call_limit_ = calls_ + static_cast<std::uint64_t>(factor_ * static_cast<double>(evals)) + 1;
        share_hit_ = false;
    }

    double anchor() {
        const double v = rp_.anchor_value();
        ++calls_;
        f_anchor_ = v;
        consider(Vector::Zero(rp_.d()), v);
        return v;
    }

    double operator()(const Vector& y) {
        const std::uint64_t before = rp_.problem().evals();
        const double v = rp_.penalized_objective(y);
        ++calls_;
        if (rp_.problem().evals() != before) consider(y, v);
        return v;
    }

    bool target_hit() const { return best_f_ <= budget_.target_value; }
    bool exhausted() const { return used() >= budget_.max_evals || hard_stop_; }

    bool stop() {
        if (target_hit() || exhausted()) return true;
        if (used() >= limit_ || calls_ >= call_limit_) {
            share_hit_ = true;
            return true;
        }
        if (budget_.wall_limit && Clock::now() - t0_ >= *budget_.wall_limit) {
            hard_stop_ = true;
            return true;
        }
        return false;
    }

    std::uint64_t used() const { return rp_.problem().evals() - base_; }
    bool share_hit() const { return share_hit_; }

    SolveResult result(bool converged) const {
        if (!have_best_) throw SolverError("solve: no feasible point was evaluated");
        SolveResult r;
        r.y_best = best_y_;
        r.x_best = rp_.map(best_y_);
        r.f_best = best_f_;
        r.evals = used();
        r.f_anchor = f_anchor_;
        if (target_hit()) r.status = SolveStatus::TargetReached;
        else if (exhausted() || !converged) r.status = SolveStatus::BudgetExhausted;
        else r.status = SolveStatus::Converged;
        return r;
    }

private:
    void consider(const Vector& y, double v) {
        if (!have_best_ || v < best_f_) {
            best_f_ = v;
            best_y_ = y;
            have_best_ = true;
        }
    }

    ReducedProblem& rp_;
    SolverBudget budget_;
    double factor_;
    std::uint64_t base_;
    Clock::time_point t0_;
    std::uint64_t limit_ = 0;
    std::uint64_t calls_ = 0;
    std::uint64_t call_limit_ = 0;
    bool share_hit_ = false;
    bool hard_stop_ = false;
    bool have_best_ = false;
    double best_f_ = std::numeric_limits<double>::infinity();
    Vector best_y_;
    double f_anchor_ = 0.0;
};

SolveResult run_direct(ReducedProblem& rp, const SolverSpec& spec, Tracker& tr) {
    tr.anchor();
    if (tr.stop()) return tr.result(false);
    Direct dir([&](const Vector& y) { return tr(y); }, rp.y_box().lo, rp.y_box().hi,
               spec.tune("eps_direct", 1e-4), [&] { return tr.stop(); });
    dir.initialize();
    while (!dir.stopped()) dir.iterate();
    return tr.result(false);
}

// Uniform in y_box, rejected into the polytope; falls back to pulling the
// last draw toward the origin, which is always feasible.
Vector feasible_start(ReducedProblem& rp, SeededRng& rng) {
    const auto& box = rp.y_box();
    Vector y(rp.d());
    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (Eigen::Index j = 0; j < y.size(); ++j) y[j] = rng.uniform(box.lo[j], box.hi[j]);
        if (rp.is_feasible(y)) return y;
    }
    while (!rp.is_feasible(y)) y *= 0.5;
    return y;
}

SolveResult run_local(ReducedProblem& rp, const SolverSpec& spec, const SolverBudget& budget,
                      SeededRng& rng, Tracker& tr, int starts) {
    NelderMeadOptions opts;
    opts.initial_step = spec.tune("initial_step", 0.1);
    opts.tol = spec.tune("simplex_tol", 1e-8);
    const auto& box = rp.y_box();
    bool converged = true;
    for (int s = 0; s < starts; ++s) {
        const std::uint64_t share = budget.max_evals / starts + (s < static_cast<int>(budget.max_evals % starts));
        tr.set_share(share);
        Vector y0 = Vector::Zero(rp.d());
        std::optional<double> f0;
        if (s == 0) {
            f0 = tr.anchor();
            if (tr.stop()) {
                converged = false;
                break;
            }
        } else {
            y0 = feasible_start(rp, rng);
        }
        const auto r = nelder_mead_local([&](const Vector& y) { return tr(y); }, y0, box.lo, box.hi,
                                         opts, [&] { return tr.stop(); }, f0);
        converged = r.converged;
        if (tr.target_hit() || tr.exhausted()) break;
    }
    return tr.result(converged);
}

SolveResult run_random(ReducedProblem& rp, SeededRng& rng, Tracker& tr) {
    tr.anchor();
    const auto& box = rp.y_box();
    Vector y(rp.d());
    while (!tr.stop()) {
        for (Eigen::Index j = 0; j < y.size(); ++j) y[j] = rng.uniform(box.lo[j], box.hi[j]);
        tr(y);
    }
    return tr.result(false);
}

}  // namespace

SolveResult solve(ReducedProblem& rp, const SolverSpec& spec, const SolverBudget& budget,
                  SeededRng& rng) {
    spec.validate();
    require(budget.max_evals >= 1, "solve: max_evals must be >= 1");
    Tracker tr(rp, budget, spec.tune("max_calls_factor", 50.0));
    switch (spec.kind) {
        case SolverKind::DirectGlobal: return run_direct(rp, spec, tr);
        case SolverKind::MultiStartLocal: return run_local(rp, spec, budget, rng, tr, spec.starts);
        case SolverKind::SingleStartLocal: return run_local(rp, spec, budget, rng, tr, 1);
        case SolverKind::RandomSearch: return run_random(rp, rng, tr);
    }
    throw SolverError("solve: unknown solver kind");
}

}  // namespace xrego
