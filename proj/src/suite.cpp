#include "xrego/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "xrego/errors.hpp"

namespace xrego {
namespace {

constexpr std::size_t kLawN = 2000;
constexpr std::size_t kControlN = 5000;
constexpr std::size_t kMcN = 5000;
constexpr std::size_t kRandomPN = 2000;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

Check law_check(const std::string& name, const LawCheck& l, bool expect_pass) {
    const bool ok = expect_pass ? l.pass : !l.pass;
    return {name, ok, l.ks.p_value, l.alpha, l.seed,
            "KS D=" + fmt("%.4g", l.ks.statistic) + " p=" + fmt("%.3g", l.ks.p_value) +
                (expect_pass ? " (expected to pass)" : " (expected to reject)")};
}

bool all_pass(const std::vector<Check>& checks, std::size_t from) {
    for (std::size_t i = from; i < checks.size(); ++i)
        if (!checks[i].pass) return false;
    return true;
}

// J_{m,1}(1) = 1/(m+1).
bool closed_form(const SuiteOptions&, TheoryReport& rep, std::string& detail) {
    double worst = 0.0;
    int worst_m = 1;
    for (int m = 1; m <= 30; ++m) {
        const double J = integral_J(m, 1, 1.0);
        rep.quadrature.emplace_back("J_" + std::to_string(m) + "_1(1)", J);
        const double err = std::fabs(J - 1.0 / (m + 1));
        if (err > worst) {
            worst = err;
            worst_m = m;
        }
    }
    const bool ok = worst <= 1e-6;
    rep.checks.push_back({"J_m1_closed_form", ok, worst, 1e-6, 0, "worst at m=" + std::to_string(worst_m)});
    detail = "max |J - 1/(m+1)| = " + fmt("%.2e", worst) + " over m=1..30";
    return ok;
}

bool distribution_laws(const SuiteOptions& opts, TheoryReport& rep, std::string& detail) {
    const std::size_t first = rep.checks.size();
    const auto& cat = catalog();
    SeededRng pick(opts.seed, 2);
    std::ostringstream cfgs;
    for (std::uint64_t i = 0; i < 5; ++i) {
        const auto& base = cat[pick.next_u64() % cat.size()];
        const int de = base.d_e;
        const int d = de + static_cast<int>(pick.next_u64() % 3);
        const int lo = std::max(d, de + 1);
        const int D = lo + static_cast<int>(pick.next_u64() % static_cast<std::uint64_t>(30 - lo + 1));
        SyntheticProblem prob = make_problem(base.name, D, opts.seed);
        const Vector p = pick.uniform_box(D);
        const std::string tag = base.name + "(d_e=" + std::to_string(de) + ",d=" + std::to_string(d) +
                                ",D=" + std::to_string(D) + ")";
        cfgs << (i ? " " : "") << tag;
        LawCheck c = ks_check_chi2(prob, p, d, kLawN, SeededRng(opts.seed, 0x200 + i));
        rep.laws.push_back(c);
        rep.checks.push_back(law_check("chi2_law " + tag, c, true));
        LawCheck f = ks_check_f(prob, p, d, kLawN, SeededRng(opts.seed, 0x300 + i));
        rep.laws.push_back(f);
        rep.checks.push_back(law_check("F_law " + tag, f, true));
    }

    SyntheticProblem gp10 = make_problem("goldstein_price", 10, opts.seed);
    LawCheck wrong = ks_check_chi2(gp10, Vector::Zero(10), 4, kControlN, SeededRng(opts.seed, 0x210), 4);
    wrong.law += " wrong df";
    rep.laws.push_back(wrong);
    rep.checks.push_back(law_check("chi2_wrong_df_control", wrong, false));

    SyntheticProblem gp8 = make_problem("goldstein_price", 8, opts.seed);
    LawCheck swapped =
        ks_check_f(gp8, Vector::Zero(8), 3, kLawN, SeededRng(opts.seed, 0x310), std::pair{2, 6});
    swapped.law += " swapped dfs";
    rep.laws.push_back(swapped);
    rep.checks.push_back(law_check("F_swapped_dfs_control", swapped, false));

    std::vector<Vector> w = sample_w(gp8, Vector::Zero(8), 3, kLawN, SeededRng(opts.seed, 0x400));
    const SphericalCheck sph = spherical_check(w);
    rep.checks.push_back({"spherical_w", sph.pass(), sph.cov_maxdev, sph.cov_tol, opts.seed,
                          "projection KS p=" + fmt("%.3g", sph.ks.p_value)});
    for (auto& v : w) v[0] *= 2.0;
    const SphericalCheck bad = spherical_check(w);
    rep.checks.push_back({"spherical_axis_biased_control", !bad.cov_pass, bad.cov_maxdev, bad.cov_tol,
                          opts.seed, "covariance test expected to reject"});

    const bool ok = all_pass(rep.checks, first);
    std::size_t failed = 0;
    for (std::size_t i = first; i < rep.checks.size(); ++i) failed += !rep.checks[i].pass;
    detail = "configs " + cfgs.str() + "; " + std::to_string(failed) + " failing checks";
    return ok;
}

SuccessTrial record(TheoryReport& rep, SuccessTrial t) {
    rep.trials.push_back(t);
    return t;
}

// Aligned Goldstein-Price, d = d_e, p = 0: the success probability is J exactly.
bool equality_case(const SuiteOptions& opts, TheoryReport& rep, std::string& detail) {
    const std::size_t first = rep.checks.size();
    const auto& gp = find_base("goldstein_price");
    std::ostringstream out;
    for (int D : {6, 10, 20}) {
        const SyntheticProblem prob = lift_aligned(gp, D);
        const auto t = record(rep, mc_success_probability(prob, Vector::Zero(D), 2, kMcN,
                                                          SeededRng(opts.seed, 0x500 + D)));
        const double J = integral_J(D - 2, 1, prob.x_top_star().norm());
        rep.quadrature.emplace_back("J_goldstein_price_D" + std::to_string(D), J);
        const double gap = std::fabs(t.estimate - J);
        rep.checks.push_back({"mc_equals_J D=" + std::to_string(D), gap <= 3.0 * t.std_err, gap,
                              3.0 * t.std_err, t.seed, ""});
        out << (D == 6 ? "" : "; ") << "D=" << D << " mc " << fmt("%.4f", t.estimate) << " J " << fmt("%.4f", J);
    }
    detail = out.str();
    return all_pass(rep.checks, first);
}

bool bound_ordering(const SuiteOptions& opts, TheoryReport& rep, std::string& detail) {
    const std::size_t first = rep.checks.size();
    double worst_margin = INFINITY;
    std::string worst_at;
    auto note = [&](double margin, const std::string& where) {
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_at = where;
        }
    };
    for (const char* name : {"goldstein_price", "branin", "six_hump_camel", "hartmann3"}) {
        const auto& base = find_base(name);
        for (int D : {8, 12}) {
            const SyntheticProblem prob = lift_aligned(base, D);
            const int de = base.d_e;
            const int m = D - de;
            const TauBounds tb = tau_bounds(m, 1, de);
            const std::string tag = std::string(name) + " D=" + std::to_string(D);
            rep.quadrature.emplace_back("tau0 " + tag, tb.tau0);
            rep.quadrature.emplace_back("tau " + tag, tb.tau);

            const SeededRng rng(opts.seed, fnv1a(tag.data(), tag.size()));
            const Vector zero = Vector::Zero(D);
            const auto t0 = record(rep, mc_success_probability(prob, zero, de, kMcN, rng));
            const double m0 = t0.estimate - (tb.tau0 - 3.0 * t0.std_err);
            rep.checks.push_back({"mc_ge_tau0 " + tag, m0 >= 0.0, t0.estimate, tb.tau0 - 3.0 * t0.std_err,
                                  t0.seed, ""});
            note(m0, tag + " p=0");

            const auto te = record(rep, mc_eps_success_probability(prob, zero, de, kMcN, 1e-3, rng));
            const double se = std::sqrt(te.std_err * te.std_err + t0.std_err * t0.std_err);
            rep.checks.push_back({"eps_success_ge_success " + tag, te.estimate >= t0.estimate - 3.0 * se,
                                  te.estimate, t0.estimate - 3.0 * se, te.seed, ""});

            SeededRng prng = rng.derive(0x9000);
            for (int j = 0; j < 20; ++j) {
                const Vector p = prng.uniform_box(D);
                const auto t = record(rep, mc_success_probability(prob, p, de, kRandomPN,
                                                                  rng.derive(0x9100 + j)));
                const double I = integral_I(p, prob.x_top_star(), prob.subspace(), 1);
                rep.quadrature.emplace_back("I " + tag + " p#" + std::to_string(j), I);
                const double mj = t.estimate - (tb.tau - 3.0 * t.std_err);
                rep.checks.push_back({"mc_ge_tau " + tag + " p#" + std::to_string(j), mj >= 0.0, t.estimate,
                                      tb.tau - 3.0 * t.std_err, t.seed, ""});
                note(mj, tag + " p#" + std::to_string(j));
            }
        }
    }
    detail = "8 aligned instances x (p=0 + 20 random p); smallest margin " + fmt("%.3g", worst_margin) +
             " at " + worst_at;
    return all_pass(rep.checks, first);
}

bool dimension_decay(const SuiteOptions& opts, TheoryReport& rep, std::string& detail) {
    const std::size_t first = rep.checks.size();
    std::ostringstream out;
    for (const char* name : {"goldstein_price", "branin"}) {
        const auto& base = find_base(name);
        std::vector<SuccessTrial> ts;
        if (out.tellp() > 0) out << "; ";
        out << name << ":";
        for (int D : {6, 12, 24}) {
            const SyntheticProblem prob = lift_aligned(base, D);
            ts.push_back(record(rep, mc_success_probability(prob, Vector::Zero(D), base.d_e, kMcN,
                                                            SeededRng(opts.seed, 0x700 + D))));
            out << " " << fmt("%.4f", ts.back().estimate);
        }
        for (std::size_t i = 1; i < ts.size(); ++i) {
            const double noise = 3.0 * std::hypot(ts[i].std_err, ts[i - 1].std_err);
            rep.checks.push_back({std::string("decay ") + name + " step " + std::to_string(i),
                                  ts[i].estimate <= ts[i - 1].estimate + noise, ts[i].estimate,
                                  ts[i - 1].estimate + noise, ts[i].seed, ""});
        }
    }
    detail = "estimates at D=6,12,24 " + out.str();
    return all_pass(rep.checks, first);
}

bool convergence_curve(const SuiteOptions& opts, TheoryReport& rep, std::string& detail) {
    const SyntheticProblem prob = lift_aligned(find_base("goldstein_price"), 12);
    RunConfig cfg;
    cfg.K = 30;
    cfg.policy = PPolicy::parse("N-REGO");
    cfg.solver = SolverSpec::direct();
    cfg.per_embedding_budget.max_evals = 3000;
    const ConvergenceStudy st = convergence_study(prob, cfg, 200, kMcN, opts.seed);
    rep.convergence.push_back(st);
    double margin = INFINITY;
    int at = 1;
    for (int k = 0; k < st.K; ++k) {
        const double mk = st.fraction[k] - (st.bound[k] - st.slack[k]);
        if (mk < margin) {
            margin = mk;
            at = k + 1;
        }
    }
    rep.checks.push_back({"convergence_dominates_bound", st.dominates, margin, 0.0, opts.seed,
                          "smallest margin at k=" + std::to_string(at)});
    detail = "tau_hat " + fmt("%.4f", st.tau_hat) + ", rho_hat " + fmt("%.4f", st.rho_hat) + ", smallest margin " +
             fmt("%.3g", margin) + " at k=" + std::to_string(at) + ", fraction(k=1) " +
             fmt("%.3f", st.fraction.front()) + " vs bound " + fmt("%.3f", st.bound.front());
    return st.dominates;
}

bool local_vs_no_embedding(const SuiteOptions& opts, TheoryReport& rep, std::string& detail) {
    ExperimentPlan plan;
    plan.dims = {100};
    plan.families = {"local"};
    plan.variants = {"LA-REGO", "LN-REGO"};
    plan.reps = 5;
    plan.epsilon = 1e-3;
    plan.include_no_embedding = true;
    const ResultTable table = run_plan(plan, opts.seed, opts.workers);
    double la = NAN, ln = NAN, none = NAN;
    std::ostringstream out;
    for (const auto& m : medians(summarize(table.rows))) {
        if (m.variant == "LA-REGO") la = m.median_evals;
        if (m.variant == "LN-REGO") ln = m.median_evals;
        if (m.variant == "no-embedding") none = m.median_evals;
        out << m.variant << " median " << fmt("%.0f", m.median_evals) << " (solved " << m.solved << "/"
            << m.cells << "); ";
    }
    const bool ok = table.errors.empty() && la < none && ln < none;
    rep.checks.push_back({"LA-REGO_median_below_no_embedding", la < none, la, none, opts.seed, ""});
    rep.checks.push_back({"LN-REGO_median_below_no_embedding", ln < none, ln, none, opts.seed, ""});
    detail = out.str() + std::to_string(table.errors.size()) + " cell errors";
    return ok;
}

bool structural(const SuiteOptions& opts, TheoryReport& rep, std::string& detail) {
    const auto checks = structural_invariants(100, opts.seed);
    std::size_t failed = 0;
    for (const auto& c : checks) {
        failed += !c.pass;
        if (!c.pass) detail += c.name + " " + fmt("%.3g", c.value) + " (seed " + std::to_string(c.seed) + "); ";
        rep.checks.push_back(c);
    }
    detail += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
              " invariants hold on 100 instances";
    return failed == 0;
}

bool benchmark_minima(const SuiteOptions& opts, TheoryReport& rep, std::string& detail) {
    double worst = 0.0;
    std::string at;
    for (const auto& base : catalog()) {
        for (int D : {10, 100}) {
            const SyntheticProblem prob = make_problem(base.name, D, opts.seed);
            const double err = std::fabs(prob.peek(prob.lifted_minimizer()) - base.f_star);
            if (err >= worst) {
                worst = err;
                at = base.name + " D=" + std::to_string(D);
            }
        }
    }
    const bool ok = worst <= 1e-3;
    rep.checks.push_back({"lifted_minima_match_table", ok, worst, 1e-3, opts.seed, at});
    detail = "19 problems at D=10,100; worst |f - f*| = " + fmt("%.2e", worst) + " (" + at + ")";
    return ok;
}

struct Spec {
    const char* title;
    double limit;
    bool (*fn)(const SuiteOptions&, TheoryReport&, std::string&);
};

const Spec kSpecs[kCriteria] = {
    {"J_{m,1}(1) closed form", 1.0, closed_form},
    {"distribution laws and negative controls", 30.0, distribution_laws},
    {"equality case of the success bound", 60.0, equality_case},
    {"success estimates above tau0 and tau", 120.0, bound_ordering},
    {"success probability decays with D", 0.0, dimension_decay},
    {"convergence curve dominates the bound", 300.0, convergence_curve},
    {"local variants beat no-embedding at D=100", 1200.0, local_vs_no_embedding},
    {"structural invariants", 60.0, structural},
    {"benchmark minima", 5.0, benchmark_minima},
};

}  // namespace

std::string criterion_title(int id) {
    require(id >= 1 && id <= kCriteria, "criterion id out of range");
    return kSpecs[id - 1].title;
}

CriterionResult run_criterion(int id, const SuiteOptions& opts, TheoryReport& report) {
    require(id >= 1 && id <= kCriteria, "criterion id out of range");
    const Spec& s = kSpecs[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = s.title;
    r.time_limit = s.limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = s.fn(opts, report, r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

bool ValidationResult::passed() const {
    for (const auto& c : criteria)
        if (!c.ok()) return false;
    return report.all_passed();
}

void ValidationResult::write(const std::string& dir) const {
    report.write(dir);
    const auto path = std::filesystem::path(dir) / "criteria.csv";
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << "id,title,pass,seconds,time_limit,detail\n";
    for (const auto& c : criteria) {
        std::string d = c.detail;
        std::replace(d.begin(), d.end(), '"', '\'');
        f << c.id << ",\"" << c.title << "\"," << (c.ok() ? 1 : 0) << "," << format_real(c.seconds) << ","
          << format_real(c.time_limit) << ",\"" << d << "\"\n";
    }
    if (!f) throw IoError("write failed: " + path.string());
}

ValidationResult run_validation(const SuiteOptions& opts, bool include_harness) {
    ValidationResult out;
    for (int id = 1; id <= kCriteria; ++id) {
        if (id == 7 && !include_harness) continue;
        out.criteria.push_back(run_criterion(id, opts, out.report));
    }
    return out;
}

}  // namespace xrego
