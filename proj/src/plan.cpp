#include <algorithm>
#include <set>

#include "xrego/errors.hpp"
#include "xrego/harness.hpp"

namespace xrego {

namespace {

bool is_local_variant(const std::string& v) { return v == "LA-REGO" || v == "LN-REGO"; }

}  // namespace

void ExperimentPlan::validate() const {
    require(reps >= 1, "plan: reps must be >= 1");
    require(K >= 1, "plan: K must be >= 1");
    require(epsilon > 0.0, "plan: epsilon must be > 0");
    require(!dims.empty(), "plan: dims must not be empty");
    require(!families.empty(), "plan: families must not be empty");
    for (const auto& p : problems) find_base(p);
    for (const auto& v : variants) PPolicy::parse(v);
    for (int o : d_offsets) require(o >= 0, "plan: d offsets must be >= 0");
    for (const auto& f : families) {
        if (f != "direct" && f != "local") throw InvalidArgument("plan: unknown family " + f);
        const auto it = budgets.find(f);
        if (it == budgets.end()) throw InvalidArgument("plan: no budget for family " + f);
        const auto& b = it->second;
        require(b.per_embedding >= 1 && b.no_embedding >= 1 && b.per_start >= 1 &&
                    b.no_embedding_per_start_per_dim >= 1,
                "plan: budgets must be >= 1");
        require(b.starts >= 1 && b.no_embedding_starts >= 1, "plan: starts must be >= 1");
    }
    SolverSpec s;
    s.tuning = tuning;
    s.validate();
}

ExperimentPlan ExperimentPlan::from_json(const nlohmann::json& j) {
    ExperimentPlan p;
    try {
        p.problems = j.value("problems", p.problems);
        p.dims = j.value("dims", p.dims);
        p.variants = j.value("variants", p.variants);
        p.families = j.value("families", p.families);
        p.d_offsets = j.value("d_offsets", p.d_offsets);
        p.reps = j.value("reps", p.reps);
        p.K = j.value("K", p.K);
        p.epsilon = j.value("epsilon", p.epsilon);
        p.include_no_embedding = j.value("include_no_embedding", p.include_no_embedding);
        p.respect_solver_flags = j.value("respect_solver_flags", p.respect_solver_flags);
        p.problem_seed = j.value("problem_seed", p.problem_seed);
        p.tuning = j.value("tuning", p.tuning);
        if (j.contains("budgets")) {
            for (const auto& [fam, b] : j.at("budgets").items()) {
                FamilyBudget fb = p.budgets[fam];
                fb.per_embedding = b.value("per_embedding", fb.per_embedding);
                fb.no_embedding = b.value("no_embedding", fb.no_embedding);
                fb.per_start = b.value("per_start", fb.per_start);
                fb.starts = b.value("starts", fb.starts);
                fb.no_embedding_starts = b.value("no_embedding_starts", fb.no_embedding_starts);
                fb.no_embedding_per_start_per_dim =
                    b.value("no_embedding_per_start_per_dim", fb.no_embedding_per_start_per_dim);
                p.budgets[fam] = fb;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("plan: ") + e.what());
    }
    p.validate();
    return p;
}

nlohmann::json ExperimentPlan::to_json() const {
    nlohmann::json j{{"problems", problems},
                     {"dims", dims},
                     {"variants", variants},
                     {"families", families},
                     {"d_offsets", d_offsets},
                     {"reps", reps},
                     {"K", K},
                     {"epsilon", epsilon},
                     {"include_no_embedding", include_no_embedding},
                     {"respect_solver_flags", respect_solver_flags},
                     {"problem_seed", problem_seed},
                     {"tuning", tuning}};
    for (const auto& [fam, b] : budgets)
        j["budgets"][fam] = {{"per_embedding", b.per_embedding},
                             {"no_embedding", b.no_embedding},
                             {"per_start", b.per_start},
                             {"starts", b.starts},
                             {"no_embedding_starts", b.no_embedding_starts},
                             {"no_embedding_per_start_per_dim", b.no_embedding_per_start_per_dim}};
    return j;
}

std::string CellKey::str() const {
    return problem + "/D" + std::to_string(D) + "/d" + std::to_string(d) + "/" + family + "/" +
           variant + "/rep" + std::to_string(rep);
}

std::vector<Cell> enumerate_cells(const ExperimentPlan& plan, std::uint64_t master_seed) {
    plan.validate();
    std::vector<std::string> names = plan.problems;
    if (names.empty())
        for (const auto& b : catalog()) names.push_back(b.name);
    std::vector<Cell> cells;
    for (const auto& name : names) {
        const auto& base = find_base(name);
        for (int D : plan.dims) {
            if (D <= base.d_e) continue;
            for (const auto& fam : plan.families) {
                if (fam == "local" && plan.respect_solver_flags && base.flags.knitro_unsupported) continue;
                const FamilyBudget& fb = plan.budgets.at(fam);
                for (int rep = 1; rep <= plan.reps; ++rep) {
                    for (const auto& v : plan.variants) {
                        if (fam == "direct" && is_local_variant(v)) continue;
                        for (int off : plan.d_offsets) {
                            const int d = base.d_e + off;
                            if (d > D) continue;
                            Cell c;
                            c.key = {name, D, d, fam, v, rep};
                            RunConfig& rc = c.config;
                            rc.d = d;
                            rc.K = plan.K;
                            rc.epsilon = plan.epsilon;
                            rc.policy = PPolicy::parse(v);
                            if (fam == "direct") {
                                rc.solver = SolverSpec::direct();
                                rc.per_embedding_budget.max_evals = fb.per_embedding;
                            } else if (is_local_variant(v)) {
                                rc.solver = SolverSpec::local();
                                rc.per_embedding_budget.max_evals = fb.per_start;
                            } else {
                                rc.solver = SolverSpec::multistart(fb.starts);
                                rc.per_embedding_budget.max_evals = fb.per_start * fb.starts;
                            }
                            rc.solver.tuning = plan.tuning;
                            cells.push_back(std::move(c));
                        }
                    }
                    if (plan.include_no_embedding) {
                        Cell c;
                        c.key = {name, D, D, fam, "no-embedding", rep};
                        c.config.epsilon = plan.epsilon;
                        c.config.solver.tuning = plan.tuning;
                        if (fam == "direct") {
                            c.config.solver = SolverSpec::direct();
                            c.config.solver.tuning = plan.tuning;
                            c.full_budget = fb.no_embedding;
                        } else {
                            c.config.solver = SolverSpec::multistart(fb.no_embedding_starts);
                            c.config.solver.tuning = plan.tuning;
                            c.full_budget = static_cast<std::uint64_t>(fb.no_embedding_starts) *
                                            fb.no_embedding_per_start_per_dim * (D + 1);
                        }
                        cells.push_back(std::move(c));
                    }
                }
            }
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        const auto& x = a.key;
        const auto& y = b.key;
        return std::tie(x.problem, x.D, x.family, x.variant, x.d, x.rep) <
               std::tie(y.problem, y.D, y.family, y.variant, y.d, y.rep);
    });
    for (auto& c : cells) {
        const std::string s = c.key.str();
        c.config.master_seed = splitmix64(master_seed ^ fnv1a(s.data(), s.size()));
    }
    return cells;
}

}  // namespace xrego
