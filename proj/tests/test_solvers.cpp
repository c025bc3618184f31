#include <cmath>

#include <gtest/gtest.h>

#include "xrego/errors.hpp"
#include "xrego/solvers.hpp"

using namespace xrego;

namespace {

Embedding random_embedding(int D, int d, SeededRng& rng) {
    return Embedding(sample_gaussian(D, d, rng), rng.uniform_box(D));
}

}  // namespace

TEST(SolverSpec, ValidationAndNames) {
    EXPECT_NO_THROW(SolverSpec::direct().validate());
    SolverSpec s = SolverSpec::multistart(0);
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = SolverSpec::local();
    s.tuning["bogus"] = 1.0;
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = SolverSpec::local();
    s.rho_assumed = 0.0;
    EXPECT_THROW(s.validate(), InvalidArgument);
    EXPECT_EQ(SolverSpec::multistart(5).label(), "multistart5");
    for (auto k : {SolverKind::DirectGlobal, SolverKind::MultiStartLocal, SolverKind::SingleStartLocal,
                   SolverKind::RandomSearch})
        EXPECT_EQ(parse_solver_kind(to_string(k)), k);
    EXPECT_THROW(parse_solver_kind("knitro"), InvalidArgument);
}

TEST(Solve, AnchorAtTargetStopsAfterOneEvaluation) {
    SeededRng rng(51, 0);
    for (auto spec : {SolverSpec::direct(), SolverSpec::multistart(5), SolverSpec::local(),
                      SolverSpec::random_search()}) {
        SyntheticProblem prob = make_problem("branin", 10, 1);
        ReducedProblem rp(random_embedding(10, 2, rng), prob);
        SolverBudget b;
        b.target_value = prob.peek(rp.embedding().p) + 1e-12;
        const SolveResult r = solve(rp, spec, b, rng);
        EXPECT_EQ(r.status, SolveStatus::TargetReached) << spec.label();
        EXPECT_EQ(r.evals, 1u);
        EXPECT_EQ(prob.evals(), 1u);
        EXPECT_EQ(r.y_best, Vector::Zero(2));
        EXPECT_EQ(r.f_anchor, r.f_best);
    }
}

TEST(Solve, EvaluationAccountingAndNoRegression) {
    SeededRng rng(52, 0);
    for (auto spec : {SolverSpec::direct(), SolverSpec::multistart(3), SolverSpec::local(),
                      SolverSpec::random_search()}) {
        for (int t = 0; t < 5; ++t) {
            SyntheticProblem prob = make_problem("six_hump_camel", 12, 2);
            prob.evaluate(Vector::Zero(12));
            ReducedProblem rp(random_embedding(12, 3, rng), prob);
            SolverBudget b;
            b.max_evals = 400;
            const std::uint64_t before = prob.evals();
            const SolveResult r = solve(rp, spec, b, rng);
            EXPECT_EQ(r.evals, prob.evals() - before) << spec.label();
            EXPECT_LE(r.evals, b.max_evals);
            EXPECT_LE(r.f_best, r.f_anchor);
            EXPECT_TRUE(rp.is_feasible(r.y_best));
            EXPECT_EQ(r.x_best, rp.map(r.y_best));
            EXPECT_EQ(prob.peek(r.x_best), r.f_best);
            if (spec.kind == SolverKind::RandomSearch || spec.kind == SolverKind::DirectGlobal) {
                EXPECT_EQ(r.status, SolveStatus::BudgetExhausted);
            }
        }
    }
}

TEST(Solve, RandomSearchSpendsExactlyTheBudget) {
    SeededRng rng(53, 0);
    SyntheticProblem prob = make_problem("hartmann3", 8, 1);
    ReducedProblem rp(random_embedding(8, 3, rng), prob);
    SolverBudget b;
    b.max_evals = 257;
    SeededRng srng(1, 1);
    const SolveResult r = solve(rp, SolverSpec::random_search(), b, srng);
    EXPECT_EQ(r.evals, 257u);
    EXPECT_EQ(r.status, SolveStatus::BudgetExhausted);
}

TEST(Solve, DeterministicGivenSeed) {
    SeededRng erng(54, 0);
    const Embedding emb = random_embedding(10, 4, erng);
    for (auto spec : {SolverSpec::direct(), SolverSpec::multistart(5)}) {
        SolveResult r[2];
        for (int i = 0; i < 2; ++i) {
            SyntheticProblem prob = make_problem("hartmann3", 10, 3);
            ReducedProblem rp(emb, prob);
            SeededRng rng(9, 9);
            SolverBudget b;
            b.max_evals = 500;
            r[i] = solve(rp, spec, b, rng);
        }
        EXPECT_EQ(r[0].y_best, r[1].y_best);
        EXPECT_EQ(r[0].evals, r[1].evals);
    }
}

TEST(Solve, MultistartNoWorseThanItsFirstStart) {
    // With k starts and k times the budget, start 0 gets the same share
    // and the same origin start as a single-start run.
    SeededRng erng(55, 0);
    for (int t = 0; t < 10; ++t) {
        const Embedding emb = random_embedding(10, 2, erng);
        SyntheticProblem p1 = make_problem("branin", 10, 4), p2 = make_problem("branin", 10, 4);
        ReducedProblem r1(emb, p1), r2(emb, p2);
        SeededRng g1(1, 0), g2(1, 0);
        SolverBudget single;
        single.max_evals = 300;
        SolverBudget multi;
        multi.max_evals = 1500;
        const auto a = solve(r1, SolverSpec::local(), single, g1);
        const auto b = solve(r2, SolverSpec::multistart(5), multi, g2);
        EXPECT_LE(b.f_best, a.f_best);
    }
}

TEST(Direct, CenterFirstAndDeterministicTrace) {
    const auto f = [](const Vector& y) { return (y.array() - 0.3).square().sum(); };
    const Vector lo = -Vector::Ones(2), hi = Vector::Ones(2);
    std::vector<Vector> traces[2];
    for (auto& tr : traces) {
        Direct d(f, lo, hi);
        d.keep_trace(true);
        d.initialize();
        for (int i = 0; i < 10; ++i) d.iterate();
        tr = d.trace();
        EXPECT_EQ(d.evaluations(), tr.size());
    }
    ASSERT_FALSE(traces[0].empty());
    EXPECT_EQ(traces[0].front(), Vector::Zero(2));
    ASSERT_EQ(traces[0].size(), traces[1].size());
    for (std::size_t i = 0; i < traces[0].size(); ++i) EXPECT_EQ(traces[0][i], traces[1][i]);
    // First division samples center +- width/3 along each axis.
    ASSERT_GE(traces[0].size(), 5u);
    EXPECT_NEAR(std::fabs(traces[0][1][0]) + std::fabs(traces[0][1][1]), 2.0 / 3.0, 1e-15);
}

TEST(Direct, OneDimensionalQuadratic) {
    const auto f = [](const Vector& y) { return (y[0] - 0.3) * (y[0] - 0.3); };
    Direct d(f, -Vector::Ones(1), Vector::Ones(1));
    d.initialize();
    double prev = d.best_f();
    while (d.evaluations() < 200) {
        d.iterate();
        EXPECT_LE(d.best_f(), prev);
        prev = d.best_f();
    }
    EXPECT_LT(std::fabs(d.best_y()[0] - 0.3), 1e-3);
}

TEST(Direct, StopPredicateHaltsMidSweep) {
    std::size_t calls = 0;
    Direct d([&](const Vector& y) { return ++calls, y.squaredNorm(); }, -Vector::Ones(3), Vector::Ones(3),
             1e-4, [&] { return calls >= 17; });
    d.initialize();
    while (!d.stopped()) d.iterate();
    EXPECT_EQ(calls, 17u);
    EXPECT_THROW(Direct(nullptr, Vector::Ones(2), Vector::Ones(2)), InvalidArgument);
}

TEST(NelderMead, QuadraticFromSeveralStarts) {
    const Vector c = (Vector(3) << 0.2, -0.4, 0.1).finished();
    const auto f = [&](const Vector& y) { return (y - c).squaredNorm() + 0.5 * (y[0] - c[0]) * (y[1] - c[1]); };
    const Vector lo = -Vector::Ones(3), hi = Vector::Ones(3);
    SeededRng rng(56, 0);
    for (int s = 0; s < 5; ++s) {
        const auto r = nelder_mead_local(f, rng.uniform_box(3), lo, hi, {});
        EXPECT_TRUE(r.converged);
        EXPECT_LT((r.x - c).norm(), 1e-6);
    }
    const auto at = nelder_mead_local(f, c, lo, hi, {});
    EXPECT_LT((at.x - c).norm(), 1e-7);
    EXPECT_EQ(at.f, f(at.x));
}

TEST(NelderMead, SmallBudgetEndsExhausted) {
    SeededRng rng(57, 0);
    SyntheticProblem prob = make_problem("rosenbrock", 10, 1);
    ReducedProblem rp(random_embedding(10, 3, rng), prob);
    SolverBudget b;
    b.max_evals = 10;
    const auto r = solve(rp, SolverSpec::local(), b, rng);
    EXPECT_EQ(r.status, SolveStatus::BudgetExhausted);
    EXPECT_LE(r.evals, 10u);
    EXPECT_GE(r.evals, 9u);
}

TEST(NelderMead, ConvergedStatusWhenSimplexCollapses) {
    // Single-start local on a smooth problem with ample budget stops on
    // its own test.
    SeededRng rng(58, 0);
    SyntheticProblem prob = make_problem("beale", 6, 1);
    ReducedProblem rp(Embedding(Matrix::Identity(6, 2) * 0.5, Vector::Zero(6)), prob);
    SolverBudget b;
    b.max_evals = 5000;
    const auto r = solve(rp, SolverSpec::local(), b, rng);
    EXPECT_EQ(r.status, SolveStatus::Converged);
    EXPECT_LT(r.evals, 5000u);
}
