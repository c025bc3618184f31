#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "xrego/errors.hpp"
#include "xrego/harness.hpp"

namespace xrego {

std::vector<ProfileCurve> performance_profile(const std::vector<ProfileEntry>& table,
                                              const std::vector<std::string>& algorithms,
                                              double alpha_cap) {
    if (table.empty()) throw InvalidArgument("performance_profile: empty table");
    std::set<std::string> problems;
    std::map<std::string, double> best;
    for (const auto& e : table) {
        problems.insert(e.problem);
        if (std::find(algorithms.begin(), algorithms.end(), e.algorithm) == algorithms.end()) continue;
        auto [it, fresh] = best.try_emplace(e.problem, e.cost);
        if (!fresh) it->second = std::min(it->second, e.cost);
    }
    bool any = false;
    for (const auto& [p, c] : best) any = any || std::isfinite(c);
    if (!any) throw InvalidArgument("performance_profile: no problem solved by any algorithm");

    std::map<std::string, std::vector<double>> ratios;
    double cap = std::max(alpha_cap, 1.0);
    for (const auto& e : table) {
        if (std::find(algorithms.begin(), algorithms.end(), e.algorithm) == algorithms.end()) continue;
        const double b = best[e.problem];
        if (!std::isfinite(e.cost) || !std::isfinite(b)) continue;
        const double r = b > 0.0 ? e.cost / b : 1.0;
        ratios[e.algorithm].push_back(r);
        cap = std::max(cap, r);
    }
    const double P = static_cast<double>(problems.size());
    std::vector<ProfileCurve> out;
    for (const auto& a : algorithms) {
        auto r = ratios[a];
        std::sort(r.begin(), r.end());
        ProfileCurve c;
        c.algorithm = a;
        std::size_t i = 0;
        while (i < r.size() && r[i] <= 1.0) ++i;
        c.points.push_back({1.0, i / P});
        while (i < r.size()) {
            const double v = r[i];
            while (i < r.size() && r[i] == v) ++i;
            c.points.push_back({v, i / P});
        }
        if (c.points.back().alpha < cap) c.points.push_back({cap, r.size() / P});
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

std::string algorithm_id(const CellSummary& c) {
    if (c.variant == "no-embedding") return c.variant;
    int de = 0;
    for (const auto& b : catalog())
        if (b.name == c.problem) de = b.d_e;
    const int off = c.d - de;
    return off == 0 ? c.variant : c.variant + "/d+" + std::to_string(off);
}

}  // namespace

std::vector<ProfileCurve> build_profiles(const std::vector<CellSummary>& cells) {
    // (family, D) -> rep -> entries
    std::map<std::pair<std::string, int>, std::map<int, std::vector<ProfileEntry>>> panels;
    for (const auto& c : cells)
        panels[{c.family, c.D}][c.rep].push_back(
            {c.problem, algorithm_id(c), c.solved ? static_cast<double>(c.evals) : INFINITY});

    std::vector<ProfileCurve> out;
    for (const auto& [key, reps] : panels) {
        const std::string panel = key.first + " D=" + std::to_string(key.second);
        // Common alpha range across the repetitions of a panel.
        double cap = 1.0;
        std::vector<std::pair<int, std::vector<std::string>>> algos;
        for (const auto& [rep, entries] : reps) {
            std::vector<std::string> ids;
            for (const auto& e : entries)
                if (std::find(ids.begin(), ids.end(), e.algorithm) == ids.end()) ids.push_back(e.algorithm);
            std::sort(ids.begin(), ids.end());
            algos.push_back({rep, ids});
            try {
                for (const auto& c : performance_profile(entries, ids))
                    cap = std::max(cap, c.points.back().alpha);
            } catch (const InvalidArgument&) {
            }
        }
        std::size_t idx = 0;
        for (const auto& [rep, entries] : reps) {
            const auto& ids = algos[idx++].second;
            std::vector<ProfileCurve> curves;
            try {
                curves = performance_profile(entries, ids, cap);
            } catch (const InvalidArgument&) {
                // Nothing solved in this repetition: every curve is flat at 0.
                for (const auto& a : ids) curves.push_back({a, "", {{1.0, 0.0}, {cap, 0.0}}});
            }
            for (auto& c : curves) {
                c.panel = panel;
                c.algorithm += " rep" + std::to_string(rep);
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

std::vector<MedianRow> medians(const std::vector<CellSummary>& cells) {
    std::map<std::tuple<std::string, int, std::string, std::string>, std::vector<const CellSummary*>> g;
    for (const auto& c : cells) g[{c.family, c.D, algorithm_id(c), c.solver}].push_back(&c);
    std::vector<MedianRow> out;
    for (const auto& [k, v] : g) {
        std::vector<double> e;
        std::size_t solved = 0;
        for (const auto* c : v) {
            e.push_back(static_cast<double>(c->evals));
            solved += c->solved;
        }
        std::sort(e.begin(), e.end());
        const std::size_t n = e.size();
        const double med = n % 2 ? e[n / 2] : 0.5 * (e[n / 2 - 1] + e[n / 2]);
        out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), n, solved, med});
    }
    return out;
}

}  // namespace xrego
