#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "xrego/driver.hpp"

namespace xrego {

// Solver families: "direct" runs DIRECT inside A/N-REGO and on the full
// box; "local" runs multi-start Nelder-Mead inside A/N-REGO and for the
// full box, and single-start Nelder-Mead inside LA/LN-REGO.
struct FamilyBudget {
    std::uint64_t per_embedding = 3000;       // direct: per reduced solve
    std::uint64_t no_embedding = 60000;       // direct: full-box cap
    std::uint64_t per_start = 1000;           // local: per Nelder-Mead start
    int starts = 5;                           // local: starts per reduced solve
    int no_embedding_starts = 100;            // local: starts on the full box
    std::uint64_t no_embedding_per_start_per_dim = 100;  // local: per-start cap is this * (D+1)
};

struct ExperimentPlan {
    std::vector<std::string> problems;  // empty selects the whole catalog
    std::vector<int> dims{10, 100};
    std::vector<std::string> variants{"A-REGO", "N-REGO", "LA-REGO", "LN-REGO"};
    std::vector<std::string> families{"direct", "local"};
    std::vector<int> d_offsets{0};  // d = d_e + offset
    int reps = 5;
    int K = 100;
    double epsilon = 1e-3;
    bool include_no_embedding = true;
    bool respect_solver_flags = false;  // skip Bukin N.6 in the local family
    std::uint64_t problem_seed = 1;
    std::map<std::string, FamilyBudget> budgets{{"direct", {}}, {"local", {}}};
    std::map<std::string, double> tuning;

    void validate() const;
    static ExperimentPlan from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct CellKey {
    std::string problem;
    int D = 0;
    int d = 0;
    std::string family;
    std::string variant;  // "no-embedding" for full-box cells
    int rep = 0;

    std::string str() const;
};

struct Cell {
    CellKey key;
    RunConfig config;          // unused for no-embedding cells except seeds/budgets
    std::uint64_t full_budget = 0;
    int full_starts = 1;
};

// Every cell of the plan, in canonical (sorted) order.
std::vector<Cell> enumerate_cells(const ExperimentPlan& plan, std::uint64_t master_seed);

// One row of results.csv.
struct ResultRow {
    std::string problem;
    int D = 0;
    int d = 0;
    std::string variant;
    std::string solver;
    int rep = 0;
    int k = 0;
    double f_xk = 0.0;
    double f_xopt = 0.0;
    std::uint64_t cum_evals = 0;
    std::string terminated;
};

struct ResultTable {
    std::vector<ResultRow> rows;
    std::vector<std::string> errors;  // "cell: message"
};

// Runs one cell on a fresh problem instance.
RunRecord run_cell(const Cell& cell, const ExperimentPlan& plan);

// Cells run on `workers` threads (0 reads XREGO_WORKERS, default 1);
// output order is the canonical cell order regardless of scheduling.
ResultTable run_plan(const ExperimentPlan& plan, std::uint64_t master_seed, unsigned workers = 0);

std::vector<ResultRow> rows_of(const RunRecord& rec, int rep);
void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& is);

// Final outcome of one (problem, D, d, variant, solver, rep) run.
struct CellSummary {
    std::string problem;
    int D = 0;
    int d = 0;
    std::string family;
    std::string variant;
    std::string solver;
    int rep = 0;
    bool solved = false;
    std::uint64_t evals = 0;  // N_p when solved, evals at termination otherwise
};

std::string family_of_solver(const std::string& solver_label);
std::vector<CellSummary> summarize(const std::vector<ResultRow>& rows);

struct ProfilePoint {
    double alpha;
    double pi;
};

struct ProfileCurve {
    std::string algorithm;
    std::string panel;  // "family D=..", empty when built directly
    std::vector<ProfilePoint> points;
};

struct ProfileEntry {
    std::string problem;
    std::string algorithm;
    double cost;  // +inf when unsolved
};

// Dolan-More profiles. Points are the breakpoints of the step function plus
// a final point at alpha_cap (default: largest finite ratio).
std::vector<ProfileCurve> performance_profile(const std::vector<ProfileEntry>& table,
                                              const std::vector<std::string>& algorithms,
                                              double alpha_cap = 0.0);

// One profile set per (family, D, rep) over the variants in that panel.
std::vector<ProfileCurve> build_profiles(const std::vector<CellSummary>& cells);

struct MedianRow {
    std::string family;
    int D = 0;
    std::string variant;
    std::string solver;
    std::size_t cells = 0;
    std::size_t solved = 0;
    double median_evals = 0.0;
};

std::vector<MedianRow> medians(const std::vector<CellSummary>& cells);

// results.csv, profiles.csv, profiles.svg, medians.csv; all files are
// staged and renamed into place only when every write succeeded.
void emit(const std::vector<ResultRow>& rows, const std::vector<ProfileCurve>& curves,
          const std::string& out_dir);

std::string render_svg(const std::vector<ProfileCurve>& curves);

}  // namespace xrego
