#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xrego/reduced.hpp"

namespace xrego {

enum class SolverKind { DirectGlobal, MultiStartLocal, SingleStartLocal, RandomSearch };

struct SolverSpec {
    SolverKind kind = SolverKind::DirectGlobal;
    int starts = 5;  // MultiStartLocal only
    // Recognized keys: eps_direct (1e-4), simplex_tol (1e-8),
    // initial_step (0.1, fraction of the y_box width), max_calls_factor (50).
    std::map<std::string, double> tuning;
    double rho_assumed = 1.0;

    double tune(const std::string& key, double fallback) const;
    void validate() const;
    std::string label() const;

    static SolverSpec direct() { return {SolverKind::DirectGlobal, 1, {}, 1.0}; }
    static SolverSpec multistart(int k) { return {SolverKind::MultiStartLocal, k, {}, 1.0}; }
    static SolverSpec local() { return {SolverKind::SingleStartLocal, 1, {}, 1.0}; }
    static SolverSpec random_search() { return {SolverKind::RandomSearch, 1, {}, 1.0}; }
};

SolverKind parse_solver_kind(const std::string& s);
std::string to_string(SolverKind k);

struct SolverBudget {
    std::uint64_t max_evals = 3000;
    double target_value = -std::numeric_limits<double>::infinity();
    std::optional<std::chrono::duration<double>> wall_limit;
};

// Converged: the local method met its own stopping test (simplex diameter).
enum class SolveStatus { TargetReached, BudgetExhausted, Converged, SolverError };
std::string to_string(SolveStatus s);

struct SolveResult {
    Vector y_best;
    Vector x_best;
    double f_best = std::numeric_limits<double>::infinity();
    std::uint64_t evals = 0;
    SolveStatus status = SolveStatus::SolverError;
    double f_anchor = 0.0;  // f(p), the mandatory first evaluation
};

SolveResult solve(ReducedProblem& rp, const SolverSpec& spec, const SolverBudget& budget,
                  SeededRng& rng);

// DIRECT on a box with a generic objective. One object is one partition
// state; iterate() is a single selection + division sweep.
class Direct {
public:
    using Objective = std::function<double(const Vector&)>;
    using StopPredicate = std::function<bool()>;

    Direct(Objective f, Vector lo, Vector hi, double eps = 1e-4, StopPredicate stop = {});

    // Evaluates the box center.
    void initialize();
    void iterate();

    double best_f() const { return best_f_; }
    const Vector& best_y() const { return best_y_; }
    std::size_t evaluations() const { return calls_; }
    std::size_t rectangles() const { return rects_.size(); }
    bool stopped() const { return stopped_; }
    // Every point handed to the objective, in order.
    const std::vector<Vector>& trace() const { return trace_; }
    void keep_trace(bool on) { keep_trace_ = on; }

private:
    struct Rect {
        Vector c;                 // center in [0,1]^d
        std::vector<int> level;   // side_i = 3^-level_i
        double f;
    };

    double eval_unit(const Vector& u);
    void add_rect(Rect r);
    void divide(std::size_t idx);
    double size_of(int level_sum) const;
    std::vector<std::size_t> potentially_optimal() const;

    Objective f_;
    Vector lo_, hi_;
    double eps_;
    StopPredicate stop_;
    std::vector<Rect> rects_;
    // level sum -> (f, index), ordered so begin() is the group minimum.
    std::map<int, std::set<std::pair<double, std::size_t>>> groups_;
    double best_f_ = std::numeric_limits<double>::infinity();
    Vector best_y_;
    std::size_t calls_ = 0;
    bool stopped_ = false;
    bool keep_trace_ = false;
    std::vector<Vector> trace_;
};

struct NelderMeadOptions {
    double initial_step = 0.1;  // fraction of the box width per coordinate
    double tol = 1e-8;          // simplex diameter, max norm
};

struct NelderMeadResult {
    Vector x;
    double f = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// Unconstrained Nelder-Mead; bounds act only through the objective
// (the caller supplies a penalized function). `f_start`, when given, is
// reused instead of evaluating the start again.
NelderMeadResult nelder_mead_local(const std::function<double(const Vector&)>& objective,
                                   const Vector& start, const Vector& lo, const Vector& hi,
                                   const NelderMeadOptions& opts,
                                   const std::function<bool()>& stop = {},
                                   std::optional<double> f_start = std::nullopt);

}  // namespace xrego
