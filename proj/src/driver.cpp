#include "xrego/driver.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace xrego {

std::string PPolicy::variant() const {
    switch (kind) {
        case PolicyKind::Adaptive: return "A-REGO";
        case PolicyKind::LocalAdaptive: return "LA-REGO";
        case PolicyKind::Origin: return "N-REGO";
        case PolicyKind::UniformRandom: return "LN-REGO";
    }
    return "?";
}

PPolicy PPolicy::parse(const std::string& v) {
    if (v == "A-REGO") return {PolicyKind::Adaptive};
    if (v == "LA-REGO") return {PolicyKind::LocalAdaptive};
    if (v == "N-REGO") return {PolicyKind::Origin};
    if (v == "LN-REGO") return {PolicyKind::UniformRandom};
    throw InvalidArgument("unknown variant: " + v);
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::EpsReached: return "EpsReached";
        case Termination::ExhaustedK: return "ExhaustedK";
        case Termination::Error: return "Error";
    }
    return "?";
}

void RunConfig::validate() const {
    require(d >= 0, "RunConfig: d must be >= 1 (or 0 for d_e)");
    require(K >= 1, "RunConfig: K must be >= 1");
    require(epsilon > 0.0, "RunConfig: epsilon must be > 0");
    require(policy.kind != PolicyKind::LocalAdaptive || policy.gamma > 0.0,
            "RunConfig: gamma must be > 0");
    solver.validate();
}

SeededRng embedding_rng(std::uint64_t master_seed, int k) {
    return SeededRng(master_seed, static_cast<std::uint64_t>(k));
}

std::string p_digest(const Vector& p) {
    const std::uint64_t h = fnv1a(p.data(), static_cast<std::size_t>(p.size()) * sizeof(double));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

Vector update_p(const PPolicy& policy, const Vector& p_prev, const Vector& x_k,
                const PolicyValues& f_vals, SeededRng& rng) {
    switch (policy.kind) {
        case PolicyKind::Adaptive: return f_vals.f_xk < f_vals.f_p_prev ? x_k : p_prev;
        case PolicyKind::LocalAdaptive:
            if (std::fabs(f_vals.f_xk - f_vals.f_p_prev) > policy.gamma) return x_k;
            return rng.uniform_box(p_prev.size());
        case PolicyKind::Origin: return Vector::Zero(p_prev.size());
        case PolicyKind::UniformRandom: return rng.uniform_box(p_prev.size());
    }
    throw InvalidArgument("update_p: unknown policy");
}

namespace {

// x^k can leave X by rounding in A y + p; pull it back onto the box.
Vector clip_box(Vector x) { return x.cwiseMax(-1.0).cwiseMin(1.0); }

}  // namespace

RunRecord run(SyntheticProblem& prob, const RunConfig& cfg) {
    cfg.validate();
    const int D = static_cast<int>(prob.D());
    const int d = cfg.d == 0 ? static_cast<int>(prob.d_e()) : cfg.d;
    require(d <= D, "run: d must not exceed D");

    RunRecord rec;
    rec.problem = prob.name();
    rec.D = D;
    rec.d = d;
    rec.variant = cfg.policy.variant();
    rec.solver = cfg.solver.label();

    Vector p = Vector::Zero(D);
    if (cfg.policy.kind == PolicyKind::UniformRandom) {
        SeededRng r0 = embedding_rng(cfg.master_seed, 0);
        p = r0.uniform_box(D);
    }
    SolverBudget budget = cfg.per_embedding_budget;
    budget.target_value = prob.f_star() + cfg.epsilon;

    std::uint64_t cum = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= cfg.K; ++k) {
        SeededRng rk = embedding_rng(cfg.master_seed, k);
        Matrix A = sample_gaussian(D, d, rk);
        SeededRng solver_rng = rk.derive(1);
        SeededRng policy_rng = rk.derive(2);

        SolveResult sr;
        try {
            ReducedProblem rp(Embedding(std::move(A), p), prob);
            sr = solve(rp, cfg.solver, budget, solver_rng);
        } catch (const Error& e) {
            rec.termination = Termination::Error;
            throw RunError(std::string("embedding ") + std::to_string(k) + ": " + e.what(), rec);
        }

        RunEntry e;
        e.k = k;
        e.f_xk = sr.f_best;
        e.evals = sr.evals;
        cum += sr.evals;
        e.cum_evals = cum;
        e.p_digest = p_digest(p);
        e.success = sr.f_best - prob.f_star() <= cfg.epsilon;
        e.status = sr.status;
        e.p = p;
        e.x = clip_box(sr.x_best);
        if (rec.opt_index.empty() || sr.f_best < best) {
            best = sr.f_best;
            rec.opt_index.push_back(rec.entries.size());
        } else {
            rec.opt_index.push_back(rec.opt_index.back());
        }
        e.f_xopt = best;
        rec.entries.push_back(std::move(e));

        if (rec.entries.back().success) {
            rec.termination = Termination::EpsReached;
            return rec;
        }
        p = update_p(cfg.policy, p, rec.entries.back().x, {sr.f_anchor, sr.f_best}, policy_rng);
    }
    rec.termination = Termination::ExhaustedK;
    return rec;
}

const Vector& x_opt(const RunRecord& record, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > record.entries.size())
        throw InvalidArgument("x_opt: k out of range");
    return record.entries[record.opt_index[static_cast<std::size_t>(k - 1)]].x;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv_header(std::ostream& os) {
    os << "problem,D,d,variant,solver,rep,k,f_xk,f_xopt,cum_evals,terminated\n";
}

void write_csv_rows(std::ostream& os, const RunRecord& r, int rep) {
    const std::string term = to_string(r.termination);
    for (const auto& e : r.entries)
        os << r.problem << ',' << r.D << ',' << r.d << ',' << r.variant << ',' << r.solver << ','
           << rep << ',' << e.k << ',' << format_real(e.f_xk) << ',' << format_real(e.f_xopt) << ','
           << e.cum_evals << ',' << term << '\n';
}

}  // namespace xrego
