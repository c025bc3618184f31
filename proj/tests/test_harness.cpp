#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "xrego/harness.hpp"

using namespace xrego;

namespace {

ExperimentPlan mini_plan() {
    ExperimentPlan p;
    p.problems = {"branin", "hartmann3"};
    p.dims = {10};
    p.reps = 2;
    p.K = 4;
    p.budgets["direct"].per_embedding = 300;
    p.budgets["direct"].no_embedding = 2000;
    p.budgets["local"].per_start = 100;
    p.budgets["local"].starts = 3;
    p.budgets["local"].no_embedding_starts = 4;
    p.budgets["local"].no_embedding_per_start_per_dim = 10;
    return p;
}

std::string dump(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    write_results_csv(os, rows);
    return os.str();
}

const ProfileCurve& curve(const std::vector<ProfileCurve>& cs, const std::string& a) {
    for (const auto& c : cs)
        if (c.algorithm == a) return c;
    throw std::runtime_error("no curve " + a);
}

}  // namespace

TEST(Plan, EnumerationIsCanonicalAndSeeded) {
    const ExperimentPlan plan = mini_plan();
    const auto cells = enumerate_cells(plan, 11);
    // Per problem and rep: direct {A, N, no-embedding}, local {A, LA, LN, N, no-embedding}.
    ASSERT_EQ(cells.size(), 2u * 2u * 8u);
    std::set<std::string> keys;
    std::set<std::uint64_t> seeds;
    for (const auto& c : cells) {
        keys.insert(c.key.str());
        seeds.insert(c.config.master_seed);
        if (c.key.family == "direct") EXPECT_EQ(c.config.solver.kind, SolverKind::DirectGlobal);
    }
    EXPECT_EQ(keys.size(), cells.size());
    EXPECT_EQ(seeds.size(), cells.size());

    const auto again = enumerate_cells(plan, 11);
    const auto other = enumerate_cells(plan, 12);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        EXPECT_EQ(cells[i].key.str(), again[i].key.str());
        EXPECT_EQ(cells[i].config.master_seed, again[i].config.master_seed);
        EXPECT_NE(cells[i].config.master_seed, other[i].config.master_seed);
    }

    const auto& ln = *std::find_if(cells.begin(), cells.end(), [](const Cell& c) {
        return c.key.variant == "LN-REGO";
    });
    EXPECT_EQ(ln.config.solver.kind, SolverKind::SingleStartLocal);
    EXPECT_EQ(ln.config.per_embedding_budget.max_evals, 100u);
    const auto& ne = *std::find_if(cells.begin(), cells.end(), [](const Cell& c) {
        return c.key.variant == "no-embedding" && c.key.family == "local";
    });
    EXPECT_EQ(ne.full_budget, 4u * 10u * 11u);
}

TEST(Plan, RespectsFlagsAndSkipsSmallDimensions) {
    ExperimentPlan plan = mini_plan();
    plan.problems = {"bukin6", "hartmann6"};
    plan.dims = {6, 10};
    plan.respect_solver_flags = true;
    for (const auto& c : enumerate_cells(plan, 1)) {
        EXPECT_FALSE(c.key.problem == "bukin6" && c.key.family == "local");
        EXPECT_FALSE(c.key.problem == "hartmann6" && c.key.D == 6);
    }
}

TEST(Plan, JsonRoundTripAndValidation) {
    ExperimentPlan plan = mini_plan();
    plan.tuning["eps_direct"] = 1e-3;
    const auto j = plan.to_json();
    EXPECT_EQ(ExperimentPlan::from_json(j).to_json(), j);
    EXPECT_EQ(ExperimentPlan::from_json(nlohmann::json::object()).to_json(), ExperimentPlan{}.to_json());

    EXPECT_THROW(ExperimentPlan::from_json({{"families", {"knitro"}}}), InvalidArgument);
    EXPECT_THROW(ExperimentPlan::from_json({{"reps", "five"}}), InvalidArgument);
    EXPECT_THROW(ExperimentPlan::from_json({{"K", 0}}), InvalidArgument);
    EXPECT_THROW(ExperimentPlan::from_json({{"tuning", {{"bogus", 1.0}}}}), InvalidArgument);
}

TEST(RunPlan, DeterministicAcrossWorkerCounts) {
    const ExperimentPlan plan = mini_plan();
    const auto a = run_plan(plan, 5, 1);
    const auto b = run_plan(plan, 5, 3);
    EXPECT_TRUE(a.errors.empty());
    EXPECT_EQ(dump(a.rows), dump(b.rows));
}

TEST(RunPlan, BudgetsHoldAndSummariesConserveEvaluations) {
    const ExperimentPlan plan = mini_plan();
    const auto cells = enumerate_cells(plan, 8);
    std::vector<ResultRow> all;
    for (const auto& c : cells) {
        const RunRecord rec = run_cell(c, plan);
        ASSERT_FALSE(rec.entries.empty());
        if (c.key.variant == "no-embedding") {
            EXPECT_EQ(rec.entries.size(), 1u);
            EXPECT_LE(rec.entries[0].cum_evals, c.full_budget) << c.key.str();
        } else {
            for (const auto& e : rec.entries)
                EXPECT_LE(e.evals, c.config.per_embedding_budget.max_evals) << c.key.str();
            EXPECT_LE(static_cast<int>(rec.entries.size()), plan.K);
        }
        const auto rows = rows_of(rec, c.key.rep);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    const auto sum = summarize(all);
    ASSERT_EQ(sum.size(), cells.size());
    std::uint64_t total_rows = 0, total_sum = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (i + 1 == all.size() || all[i + 1].k <= all[i].k) total_rows += all[i].cum_evals;
    for (const auto& s : sum) {
        total_sum += s.evals;
        EXPECT_EQ(s.family, family_of_solver(s.solver));
    }
    EXPECT_EQ(total_rows, total_sum);
}

TEST(Results, CsvRoundTripAndErrors) {
    std::vector<ResultRow> rows{{"branin", 10, 2, "A-REGO", "direct", 1, 1, 0.1, 0.1, 5, "ExhaustedK"},
                                {"branin", 10, 2, "A-REGO", "direct", 1, 2, 1.0 / 3, 0.1, 9, "ExhaustedK"}};
    std::istringstream is(dump(rows));
    const auto back = read_results_csv(is);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].f_xk, 1.0 / 3);
    EXPECT_EQ(back[1].cum_evals, 9u);
    EXPECT_EQ(dump(back), dump(rows));

    std::istringstream bad("problem,D\n");
    EXPECT_THROW(read_results_csv(bad), IoError);
    std::istringstream empty("");
    EXPECT_THROW(read_results_csv(empty), IoError);
    std::istringstream shortrow("problem,D,d,variant,solver,rep,k,f_xk,f_xopt,cum_evals,terminated\nbranin,10\n");
    EXPECT_THROW(read_results_csv(shortrow), IoError);
}

TEST(Profiles, HandComputedTable) {
    // costs    P1  P2  P3
    //   A      10  20  inf
    //   B      20  10  30
    const std::vector<ProfileEntry> t{{"P1", "A", 10}, {"P2", "A", 20}, {"P3", "A", INFINITY},
                                      {"P1", "B", 20}, {"P2", "B", 10}, {"P3", "B", 30}};
    const auto cs = performance_profile(t, {"A", "B"});
    const auto& a = curve(cs, "A");
    const auto& b = curve(cs, "B");
    ASSERT_EQ(a.points.size(), 2u);
    EXPECT_EQ(a.points[0].alpha, 1.0);
    EXPECT_DOUBLE_EQ(a.points[0].pi, 1.0 / 3);
    EXPECT_EQ(a.points[1].alpha, 2.0);
    EXPECT_DOUBLE_EQ(a.points[1].pi, 2.0 / 3);
    ASSERT_EQ(b.points.size(), 2u);
    EXPECT_DOUBLE_EQ(b.points[0].pi, 2.0 / 3);
    EXPECT_DOUBLE_EQ(b.points[1].pi, 1.0);

    const auto capped = performance_profile(t, {"A", "B"}, 5.0);
    EXPECT_EQ(curve(capped, "A").points.back().alpha, 5.0);
    EXPECT_DOUBLE_EQ(curve(capped, "A").points.back().pi, 2.0 / 3);
}

TEST(Profiles, SingleAlgorithmAndUnsolved) {
    const std::vector<ProfileEntry> t{{"P1", "A", 7}, {"P2", "A", INFINITY}, {"P3", "A", 3}};
    const auto cs = performance_profile(t, {"A"});
    ASSERT_EQ(cs.size(), 1u);
    ASSERT_EQ(cs[0].points.size(), 1u);
    EXPECT_DOUBLE_EQ(cs[0].points[0].pi, 2.0 / 3);
    EXPECT_THROW(performance_profile({{"P1", "A", INFINITY}}, {"A"}), InvalidArgument);
    EXPECT_THROW(performance_profile({}, {"A"}), InvalidArgument);
}

TEST(Profiles, RandomTablesAreMonotoneStepFunctions) {
    SeededRng rng(81, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ProfileEntry> t;
        const std::vector<std::string> algs{"a", "b", "c"};
        for (int p = 0; p < 12; ++p)
            for (const auto& a : algs)
                t.push_back({"P" + std::to_string(p), a,
                             rng.uniform() < 0.2 ? INFINITY : std::floor(1 + 100 * rng.uniform())});
        try {
            for (const auto& c : performance_profile(t, algs)) {
                EXPECT_EQ(c.points.front().alpha, 1.0);
                for (std::size_t i = 1; i < c.points.size(); ++i) {
                    EXPECT_GT(c.points[i].alpha, c.points[i - 1].alpha);
                    EXPECT_GE(c.points[i].pi, c.points[i - 1].pi);
                }
                EXPECT_LE(c.points.back().pi, 1.0);
            }
        } catch (const InvalidArgument&) {
        }
    }
}

TEST(Profiles, OnePanelPerFamilyDimensionAndRep) {
    std::vector<CellSummary> cells;
    for (const char* fam : {"direct", "local"})
        for (int rep : {1, 2})
            for (const char* v : {"A-REGO", "N-REGO"})
                cells.push_back({"branin", 10, 2, fam, v, fam == std::string("direct") ? "direct" : "multistart5",
                                 rep, rep == 1, static_cast<std::uint64_t>(100 * rep)});
    const auto curves = build_profiles(cells);
    std::set<std::string> panels, algs;
    for (const auto& c : curves) {
        panels.insert(c.panel);
        algs.insert(c.algorithm);
    }
    EXPECT_EQ(panels, (std::set<std::string>{"direct D=10", "local D=10"}));
    EXPECT_TRUE(algs.count("A-REGO rep1"));
    EXPECT_TRUE(algs.count("N-REGO rep2"));
    EXPECT_EQ(curves.size(), 8u);
}

TEST(Medians, CountUnsolvedAtTerminationEvals) {
    std::vector<CellSummary> cells;
    const std::uint64_t ev[] = {10, 40, 20, 30};
    for (int i = 0; i < 4; ++i) cells.push_back({"branin", 10, 2, "direct", "A-REGO", "direct", i + 1, i != 1, ev[i]});
    cells.push_back({"beale", 10, 2, "direct", "A-REGO", "direct", 1, true, 7});
    const auto m = medians(cells);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].cells, 5u);
    EXPECT_EQ(m[0].solved, 4u);
    EXPECT_EQ(m[0].median_evals, 20.0);
}

TEST(Emit, WritesAllFilesOrNone) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "xrego_emit_test";
    fs::remove_all(dir);
    const std::vector<ResultRow> rows{{"branin", 10, 2, "A-REGO", "direct", 1, 1, 0.5, 0.5, 12, "EpsReached"}};
    EXPECT_THROW(emit(rows, {}, dir.string()), InvalidArgument);
    EXPECT_FALSE(fs::exists(dir) && !fs::is_empty(dir));

    const auto curves = build_profiles(summarize(rows));
    emit(rows, curves, dir.string());
    for (const char* f : {"results.csv", "profiles.csv", "profiles.svg", "medians.csv"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++n;
    EXPECT_EQ(n, 4u);
    fs::remove_all(dir);
}

TEST(Emit, SvgIsBalanced) {
    const std::vector<ProfileEntry> t{{"P1", "A&B", 10}, {"P2", "A&B", 20}, {"P1", "<C>", 15}};
    auto cs = performance_profile(t, {"A&B", "<C>"});
    for (auto& c : cs) c.panel = "direct D=10";
    const std::string svg = render_svg(cs);
    EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
    EXPECT_EQ(svg.find("<C>"), std::string::npos);
    EXPECT_NE(svg.find("&amp;"), std::string::npos);
    // Every opened <g> is closed.
    std::size_t open = 0, close = 0;
    for (std::size_t i = svg.find("<g"); i != std::string::npos; i = svg.find("<g", i + 1)) ++open;
    for (std::size_t i = svg.find("</g>"); i != std::string::npos; i = svg.find("</g>", i + 1)) ++close;
    EXPECT_EQ(open, close);
}
