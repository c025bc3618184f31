#include <atomic>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "xrego/errors.hpp"
#include "xrego/harness.hpp"

namespace xrego {

RunRecord run_cell(const Cell& cell, const ExperimentPlan& plan) {
    SyntheticProblem prob = make_problem(cell.key.problem, cell.key.D, plan.problem_seed);
    if (cell.key.variant != "no-embedding") return run(prob, cell.config);

    ReducedProblem rp = ReducedProblem::full_space(prob);
    SolverBudget budget;
    budget.max_evals = cell.full_budget;
    budget.target_value = prob.f_star() + cell.config.epsilon;
    SeededRng rng(cell.config.master_seed, 1);
    const SolveResult sr = solve(rp, cell.config.solver, budget, rng);

    RunRecord rec;
    rec.problem = prob.name();
    rec.D = static_cast<int>(prob.D());
    rec.d = rec.D;
    rec.variant = "no-embedding";
    rec.solver = cell.config.solver.label();
    RunEntry e;
    e.k = 1;
    e.f_xk = e.f_xopt = sr.f_best;
    e.evals = e.cum_evals = sr.evals;
    e.p = Vector::Zero(rec.D);
    e.p_digest = p_digest(e.p);
    e.x = sr.x_best;
    e.status = sr.status;
    e.success = sr.f_best - prob.f_star() <= cell.config.epsilon;
    rec.entries.push_back(std::move(e));
    rec.opt_index.push_back(0);
    rec.termination = rec.entries[0].success ? Termination::EpsReached : Termination::ExhaustedK;
    return rec;
}

std::vector<ResultRow> rows_of(const RunRecord& r, int rep) {
    std::vector<ResultRow> out;
    const std::string term = to_string(r.termination);
    for (const auto& e : r.entries)
        out.push_back({r.problem, r.D, r.d, r.variant, r.solver, rep, e.k, e.f_xk, e.f_xopt,
                       e.cum_evals, term});
    return out;
}

namespace {

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("XREGO_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

}  // namespace

ResultTable run_plan(const ExperimentPlan& plan, std::uint64_t master_seed, unsigned workers) {
    const std::vector<Cell> cells = enumerate_cells(plan, master_seed);
    std::vector<std::vector<ResultRow>> rows(cells.size());
    std::vector<std::string> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const Cell& c = cells[i];
            try {
                rows[i] = rows_of(run_cell(c, plan), c.key.rep);
            } catch (const RunError& e) {
                rows[i] = rows_of(e.partial(), c.key.rep);
                errors[i] = c.key.str() + ": " + e.what();
            } catch (const std::exception& e) {
                errors[i] = c.key.str() + ": " + e.what();
            }
            if (!errors[i].empty() && rows[i].empty())
                rows[i].push_back({c.key.problem, c.key.D, c.key.d, c.key.variant,
                                   c.config.solver.label(), c.key.rep, 0, NAN, NAN, 0, "Error"});
        }
    };
    const unsigned n = std::min<unsigned>(worker_count(workers), static_cast<unsigned>(cells.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    ResultTable table;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        table.rows.insert(table.rows.end(), rows[i].begin(), rows[i].end());
        if (!errors[i].empty()) table.errors.push_back(errors[i]);
    }
    return table;
}

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    write_csv_header(os);
    for (const auto& r : rows)
        os << r.problem << ',' << r.D << ',' << r.d << ',' << r.variant << ',' << r.solver << ','
           << r.rep << ',' << r.k << ',' << format_real(r.f_xk) << ',' << format_real(r.f_xopt)
           << ',' << r.cum_evals << ',' << r.terminated << '\n';
}

std::vector<ResultRow> read_results_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("results.csv: empty input");
    if (line != "problem,D,d,variant,solver,rep,k,f_xk,f_xopt,cum_evals,terminated")
        throw IoError("results.csv: unexpected header: " + line);
    std::vector<ResultRow> out;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 11) throw IoError("results.csv line " + std::to_string(lineno) + ": expected 11 fields");
        try {
            out.push_back({f[0], std::stoi(f[1]), std::stoi(f[2]), f[3], f[4], std::stoi(f[5]),
                           std::stoi(f[6]), std::stod(f[7]), std::stod(f[8]), std::stoull(f[9]), f[10]});
        } catch (const std::exception&) {
            throw IoError("results.csv line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return out;
}

std::string family_of_solver(const std::string& solver_label) {
    return solver_label == "direct" ? "direct" : "local";
}

std::vector<CellSummary> summarize(const std::vector<ResultRow>& rows) {
    std::vector<CellSummary> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const bool last = i + 1 == rows.size() || rows[i + 1].problem != r.problem ||
                          rows[i + 1].D != r.D || rows[i + 1].d != r.d ||
                          rows[i + 1].variant != r.variant || rows[i + 1].solver != r.solver ||
                          rows[i + 1].rep != r.rep || rows[i + 1].k <= r.k;
        if (!last) continue;
        out.push_back({r.problem, r.D, r.d, family_of_solver(r.solver), r.variant, r.solver, r.rep,
                       r.terminated == "EpsReached", r.cum_evals});
    }
    return out;
}

}  // namespace xrego
