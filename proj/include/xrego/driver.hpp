#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xrego/errors.hpp"
#include "xrego/solvers.hpp"

namespace xrego {

enum class PolicyKind { Adaptive, LocalAdaptive, Origin, UniformRandom };

struct PPolicy {
    PolicyKind kind = PolicyKind::Origin;
    double gamma = 1e-5;  // LocalAdaptive only

    // A-REGO, LA-REGO, N-REGO, LN-REGO.
    std::string variant() const;
    static PPolicy parse(const std::string& variant);
};

struct RunConfig {
    int d = 0;  // 0 selects d = d_e
    int K = 100;
    double epsilon = 1e-3;
    PPolicy policy;
    SolverSpec solver;
    SolverBudget per_embedding_budget;  // target_value is set by run()
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct RunEntry {
    int k = 0;
    double f_xk = 0.0;
    double f_xopt = 0.0;
    std::uint64_t evals = 0;      // this embedding
    std::uint64_t cum_evals = 0;  // embeddings 1..k
    std::string p_digest;
    bool success = false;         // f(x^k) - f* <= epsilon
    SolveStatus status = SolveStatus::SolverError;
    Vector p;  // anchor p^{k-1}
    Vector x;  // x^k = A^k y^k + p^{k-1}
};

enum class Termination { EpsReached, ExhaustedK, Error };
std::string to_string(Termination t);

struct RunRecord {
    std::string problem;
    int D = 0;
    int d = 0;
    std::string variant;
    std::string solver;
    std::vector<RunEntry> entries;
    std::vector<std::size_t> opt_index;  // entries index of x_opt^k
    Termination termination = Termination::ExhaustedK;
};

class RunError : public Error {
public:
    RunError(const std::string& what, RunRecord partial)
        : Error(what), partial_(std::move(partial)) {}
    const RunRecord& partial() const { return partial_; }

private:
    RunRecord partial_;
};

struct PolicyValues {
    double f_p_prev;
    double f_xk;
};

RunRecord run(SyntheticProblem& prob, const RunConfig& cfg);

Vector update_p(const PPolicy& policy, const Vector& p_prev, const Vector& x_k,
                const PolicyValues& f_vals, SeededRng& rng);

// Best point over embeddings 1..k (1-based).
const Vector& x_opt(const RunRecord& record, int k);

// Stream layout of a run: embedding k draws A^k from stream k; its solver
// and policy use children 1 and 2 of that stream; p^0 uses stream 0.
SeededRng embedding_rng(std::uint64_t master_seed, int k);

std::string p_digest(const Vector& p);

// Line-oriented CSV with the columns
// problem,D,d,variant,solver,rep,k,f_xk,f_xopt,cum_evals,terminated
void write_csv_header(std::ostream& os);
void write_csv_rows(std::ostream& os, const RunRecord& record, int rep);
std::string format_real(double v);

}  // namespace xrego
