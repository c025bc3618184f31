#include <algorithm>
#include <cmath>

#include "xrego/errors.hpp"
#include "xrego/solvers.hpp"

namespace xrego {

Direct::Direct(Objective f, Vector lo, Vector hi, double eps, StopPredicate stop)
    : f_(std::move(f)), lo_(std::move(lo)), hi_(std::move(hi)), eps_(eps), stop_(std::move(stop)) {
    require_dims(lo_.size() == hi_.size() && lo_.size() >= 1, "Direct: bad box");
    require((hi_.array() > lo_.array()).all(), "Direct: box must have positive width");
    require(eps_ >= 0.0, "Direct: eps must be >= 0");
}

double Direct::eval_unit(const Vector& u) {
    const Vector y = lo_.array() + u.array() * (hi_ - lo_).array();
    if (keep_trace_) trace_.push_back(y);
    const double v = f_(y);
    ++calls_;
    if (v < best_f_) {
        best_f_ = v;
        best_y_ = y;
    }
    if (stop_ && stop_()) stopped_ = true;
    return v;
}

void Direct::add_rect(Rect r) {
    int sum = 0;
    for (int l : r.level) sum += l;
    groups_[sum].insert({r.f, rects_.size()});
    rects_.push_back(std::move(r));
}

// Levels within a rectangle differ by at most one, so the level sum fixes
// the multiset of side lengths and hence the half-diagonal.
double Direct::size_of(int level_sum) const {
    const int d = static_cast<int>(lo_.size());
    const int k = level_sum / d;
    const int j = level_sum - k * d;
    const double a = std::pow(3.0, -2.0 * k);
    const double b = std::pow(3.0, -2.0 * (k + 1));
    return 0.5 * std::sqrt((d - j) * a + j * b);
}

void Direct::initialize() {
    if (!rects_.empty()) return;
    const Eigen::Index d = lo_.size();
    Rect r{Vector::Constant(d, 0.5), std::vector<int>(static_cast<std::size_t>(d), 0), 0.0};
    r.f = eval_unit(r.c);
    add_rect(std::move(r));
}

std::vector<std::size_t> Direct::potentially_optimal() const {
    struct Cand {
        double size;
        double f;
        std::size_t idx;
    };
    std::vector<Cand> c;
    for (auto it = groups_.rbegin(); it != groups_.rend(); ++it) {
        if (it->second.empty()) continue;
        const auto& best = *it->second.begin();
        c.push_back({size_of(it->first), best.first, best.second});
    }
    // c is ordered by increasing size.
    const double fmin = best_f_;
    const double thresh = fmin - eps_ * std::fabs(fmin);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < c.size(); ++j) {
        double lower = 0.0;
        double upper = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (std::size_t i = 0; i < c.size() && ok; ++i) {
            if (i < j) {
                lower = std::max(lower, (c[j].f - c[i].f) / (c[j].size - c[i].size));
            } else if (i > j) {
                upper = std::min(upper, (c[i].f - c[j].f) / (c[i].size - c[j].size));
            }
        }
        if (upper <= 0.0) ok = false;
        if (ok && lower > upper) ok = false;
        if (ok && std::isfinite(upper) && c[j].f - upper * c[j].size > thresh) ok = false;
        if (ok) out.push_back(c[j].idx);
    }
    // Largest rectangles first.
    std::reverse(out.begin(), out.end());
    return out;
}

void Direct::divide(std::size_t idx) {
    const Eigen::Index d = lo_.size();
    Rect& r0 = rects_[idx];
    int sum = 0;
    for (int l : r0.level) sum += l;
    groups_[sum].erase({r0.f, idx});

    const int minlevel = *std::min_element(r0.level.begin(), r0.level.end());
    const double delta = std::pow(3.0, -(minlevel + 1));
    const Vector center = r0.c;
    std::vector<int> dims;
    for (Eigen::Index i = 0; i < d; ++i)
        if (r0.level[static_cast<std::size_t>(i)] == minlevel) dims.push_back(static_cast<int>(i));

    struct Probe {
        int dim;
        double w;
        Vector cp, cm;
        double fp, fm;
    };
    std::vector<Probe> probes;
    for (int i : dims) {
        Probe p{i, 0.0, center, center, 0.0, 0.0};
        p.cp[i] += delta;
        p.cm[i] -= delta;
        p.fp = eval_unit(p.cp);
        if (stopped_) break;
        p.fm = eval_unit(p.cm);
        p.w = std::min(p.fp, p.fm);
        probes.push_back(std::move(p));
        if (stopped_) break;
    }
    std::stable_sort(probes.begin(), probes.end(),
                     [](const Probe& a, const Probe& b) { return a.w < b.w; });
    std::vector<int> level = rects_[idx].level;
    const double fc = rects_[idx].f;
    for (const auto& p : probes) {
        level[static_cast<std::size_t>(p.dim)] += 1;
        add_rect({p.cp, level, p.fp});
        add_rect({p.cm, level, p.fm});
    }
    Rect& r = rects_[idx];
    r.level = level;
    sum = 0;
    for (int l : r.level) sum += l;
    groups_[sum].insert({fc, idx});
}

void Direct::iterate() {
    if (rects_.empty()) initialize();
    if (stopped_) return;
    for (std::size_t idx : potentially_optimal()) {
        divide(idx);
        if (stopped_) return;
    }
}

}  // namespace xrego
