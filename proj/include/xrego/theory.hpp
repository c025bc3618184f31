#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xrego/driver.hpp"
#include "xrego/numerics.hpp"
#include "xrego/stats.hpp"

namespace xrego {

struct SuccessTrial {
    std::string problem;
    Vector p;
    int d = 0;
    std::size_t N = 0;
    std::size_t hits = 0;
    double estimate = 0.0;
    double std_err = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// One Monte Carlo draw of the min-norm construction.
struct MinNormSample {
    Matrix A;
    Vector z;   // U^T (x_top* - p)
    Vector y2;  // minimal_norm_y(U^T A, z)
    Vector w;   // V^T A y2
    Vector x;   // A y2 + p
};

// Sample i uses rng.derive(i), so results do not depend on evaluation order.
MinNormSample draw_min_norm(const SyntheticProblem& prob, const Vector& p, int d,
                            const SeededRng& rng, std::uint64_t i);

SuccessTrial mc_success_probability(const SyntheticProblem& prob, const Vector& p, int d,
                                    std::size_t N, const SeededRng& rng);

// Counts draws where the embedding reaches f <= f* + eps: at the min-norm
// point when feasible, else at its feasibility-clipped scaling, else by a
// 200-step random line search inside the polytope. An estimator only.
SuccessTrial mc_eps_success_probability(const SyntheticProblem& prob, const Vector& p, int d,
                                        std::size_t N, double eps, const SeededRng& rng);

struct LawCheck {
    std::string law;
    KsResult ks;
    double alpha = 0.01;
    bool pass = false;
    int df1 = 0;
    int df2 = 0;
    double sample_mean = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// delta^2/|y2|^2 against chi2 with df (default d - d_e + 1).
LawCheck ks_check_chi2(const SyntheticProblem& prob, const Vector& p, int d, std::size_t N,
                       const SeededRng& rng, std::optional<int> df = std::nullopt);
// (n/m) |w|^2 / delta^2 against F(v1, v2) (default (m, n)).
LawCheck ks_check_f(const SyntheticProblem& prob, const Vector& p, int d, std::size_t N,
                    const SeededRng& rng, std::optional<std::pair<int, int>> dfs = std::nullopt);

std::vector<Vector> sample_w(const SyntheticProblem& prob, const Vector& p, int d, std::size_t N,
                             const SeededRng& rng);

struct SphericalCheck {
    KsResult ks;            // first coordinate of w/|w| (m >= 2)
    double cov_maxdev = 0;  // max |mean(u u^T) - I/m|
    double cov_tol = 0;     // 5/sqrt(N)
    double plus_fraction = 0;  // m = 1: share of +1 signs
    bool ks_pass = false;
    bool cov_pass = false;
    bool pass() const { return ks_pass && cov_pass; }
};

SphericalCheck spherical_check(const std::vector<Vector>& w_samples, double alpha = 0.01);

struct TauBounds {
    double tau;
    double tau0;
};

TauBounds tau_bounds(int m, int n, int d_e, const QuadratureConfig& cfg = {});

double convergence_bound(double tau, double rho, int k);
int k_xi(double tau, double rho, double xi);

// Allowed shortfall of an empirical fraction below b over `runs` runs: the
// exact binomial counterpart of three standard errors (one-sided Phi(-3)).
double binomial_slack(int runs, double b);

// C(m,n) (2 sqrt(D))^-m (1 + 9 D^2 L^2/eps^2)^-(m+n)/2 vol, for a
// user-supplied Lipschitz constant L and volume vol.
double eps_success_lower_bound(int m, int n, int D, double L, double eps, double vol);

// Repeated seeded X-REGO runs compared with 1 - (1 - tau rho)^k.
struct ConvergenceStudy {
    int runs = 0;
    int K = 0;
    double lambda = 0;
    double tau_hat = 0;
    double tau_se = 0;
    double rho_hat = 0;
    std::size_t rho_trials = 0;
    std::vector<double> fraction;  // fraction of runs with f(x_opt^k) <= f* + eps, k = 1..K
    std::vector<double> bound;     // 1 - (1 - tau_hat rho_hat)^k
    std::vector<double> slack;     // binomial_slack(runs, bound)
    bool dominates = false;
};

ConvergenceStudy convergence_study(const SyntheticProblem& prob, RunConfig cfg, int runs,
                                   std::size_t tau_samples, std::uint64_t seed);

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;     // observed quantity
    double reference = 0.0; // what it was compared against
    std::uint64_t seed = 0;
    std::string detail;
};

// Orthogonality, min-norm optimality, reconstruction identity, effective
// dimensionality, x_opt monotonicity and x^k feasibility on randomized instances.
std::vector<Check> structural_invariants(int instances, std::uint64_t seed);

struct TheoryReport {
    std::vector<Check> checks;
    std::vector<LawCheck> laws;
    std::vector<SuccessTrial> trials;
    std::vector<std::pair<std::string, double>> quadrature;
    std::vector<ConvergenceStudy> convergence;

    bool all_passed() const;
    void write(const std::string& dir) const;
};

}  // namespace xrego
