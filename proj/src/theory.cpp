#include "xrego/theory.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <set>

#include "xrego/kernels.hpp"

namespace xrego {

MinNormSample draw_min_norm(const SyntheticProblem& prob, const Vector& p, int d,
                            const SeededRng& rng, std::uint64_t i) {
    const auto& sub = prob.subspace();
    SeededRng r = rng.derive(i);
    MinNormSample s;
    s.A = sample_gaussian(prob.D(), d, r);
    s.z = sub.U.transpose() * (prob.x_top_star() - p);
    s.y2 = minimal_norm_y(sub.U.transpose() * s.A, s.z);
    const Vector Ay = s.A * s.y2;
    s.w = sub.V.transpose() * Ay;
    s.x = Ay + p;
    return s;
}

namespace {

void check_trial_args(const SyntheticProblem& prob, const Vector& p, int d, std::size_t N) {
    require_dims(p.size() == prob.D(), "theory: p has wrong dimension");
    require(d >= prob.d_e() && d <= prob.D(), "theory: need d_e <= d <= D");
    require(N >= 1, "theory: N must be >= 1");
}

double delta_of(const SyntheticProblem& prob, const Vector& p) {
    return (prob.subspace().U.transpose() * (prob.x_top_star() - p)).norm();
}

bool in_box(const Vector& x) {
    return kernels::box_excess(x.data(), static_cast<std::size_t>(x.size())).max_excess <= kFeasTol;
}

SuccessTrial make_trial(const SyntheticProblem& prob, const Vector& p, int d, std::size_t N,
                        std::size_t hits, const SeededRng& rng) {
    SuccessTrial t;
    t.problem = prob.name();
    t.p = p;
    t.d = d;
    t.N = N;
    t.hits = hits;
    t.estimate = static_cast<double>(hits) / static_cast<double>(N);
    t.std_err = std::sqrt(t.estimate * (1.0 - t.estimate) / static_cast<double>(N));
    t.seed = rng.master_seed();
    t.stream = rng.stream_id();
    return t;
}

// Largest t in [0, 1] with p + t v inside the box.
double max_step(const Vector& p, const Vector& v) {
    double t = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] > 0.0) t = std::min(t, (1.0 - p[i]) / v[i]);
        else if (v[i] < 0.0) t = std::min(t, (-1.0 - p[i]) / v[i]);
    }
    return std::max(t, 0.0);
}

}  // namespace

SuccessTrial mc_success_probability(const SyntheticProblem& prob, const Vector& p, int d,
                                    std::size_t N, const SeededRng& rng) {
    check_trial_args(prob, p, d, N);
    if (delta_of(prob, p) <= 1e-14) return make_trial(prob, p, d, N, N, rng);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < N; ++i)
        if (in_box(draw_min_norm(prob, p, d, rng, i).x)) ++hits;
    return make_trial(prob, p, d, N, hits, rng);
}

SuccessTrial mc_eps_success_probability(const SyntheticProblem& prob, const Vector& p, int d,
                                        std::size_t N, double eps, const SeededRng& rng) {
    check_trial_args(prob, p, d, N);
    require(eps > 0.0, "mc_eps_success_probability: eps must be > 0");
    if (delta_of(prob, p) <= 1e-14) return make_trial(prob, p, d, N, N, rng);
    const double target = prob.f_star() + eps;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const MinNormSample s = draw_min_norm(prob, p, d, rng, i);
        if (in_box(s.x)) {
            ++hits;
            continue;
        }
        const Vector Ay = s.x - p;
        Vector y = max_step(p, Ay) * s.y2;
        Vector x = s.A * y + p;
        double fc = prob.peek(x);
        if (fc <= target) {
            ++hits;
            continue;
        }
        SeededRng ls = rng.derive(i).derive(7);
        double scale = std::max(s.y2.norm(), 1e-3);
        bool hit = false;
        for (int it = 0; it < 200 && !hit; ++it) {
            Vector u(d);
            for (int j = 0; j < d; ++j) u[j] = ls.normal();
            u.normalize();
            const double step = ls.uniform() * scale;
            const Vector v = s.A * u;
            // Step limited to the polytope along the ray from the current point.
            const double tmax = max_step(x, step * v);
            const Vector yn = y + tmax * step * u;
            const Vector xn = s.A * yn + p;
            const double fn = prob.peek(xn);
            if (fn < fc) {
                y = yn;
                x = xn;
                fc = fn;
                hit = fc <= target;
            } else if (it % 20 == 19) {
                scale *= 0.5;
            }
        }
        if (hit) ++hits;
    }
    return make_trial(prob, p, d, N, hits, rng);
}

namespace {

double check_delta(const SyntheticProblem& prob, const Vector& p) {
    const double delta = delta_of(prob, p);
    if (delta <= 1e-14) throw DegenerateInput("law check: x_top* equals p_top");
    return delta;
}

LawCheck finish(std::string law, std::vector<double> sample,
                const std::function<double(double)>& cdf, int df1, int df2, const SeededRng& rng) {
    LawCheck c;
    c.law = std::move(law);
    double s = 0.0;
    for (double v : sample) s += v;
    c.sample_mean = s / static_cast<double>(sample.size());
    c.ks = ks_test(std::move(sample), cdf);
    c.pass = c.ks.p_value >= c.alpha;
    c.df1 = df1;
    c.df2 = df2;
    c.seed = rng.master_seed();
    c.stream = rng.stream_id();
    return c;
}

}  // namespace

LawCheck ks_check_chi2(const SyntheticProblem& prob, const Vector& p, int d, std::size_t N,
                       const SeededRng& rng, std::optional<int> df) {
    check_trial_args(prob, p, d, N);
    const double delta = check_delta(prob, p);
    const int k = df.value_or(d - static_cast<int>(prob.d_e()) + 1);
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i)
        v[i] = delta * delta / draw_min_norm(prob, p, d, rng, i).y2.squaredNorm();
    return finish("chi2", std::move(v), [k](double x) { return chi2_cdf(std::max(x, 0.0), k); }, k,
                  0, rng);
}

std::vector<Vector> sample_w(const SyntheticProblem& prob, const Vector& p, int d, std::size_t N,
                             const SeededRng& rng) {
    check_trial_args(prob, p, d, N);
    std::vector<Vector> out;
    out.reserve(N);
    for (std::size_t i = 0; i < N; ++i) out.push_back(draw_min_norm(prob, p, d, rng, i).w);
    return out;
}

LawCheck ks_check_f(const SyntheticProblem& prob, const Vector& p, int d, std::size_t N,
                    const SeededRng& rng, std::optional<std::pair<int, int>> dfs) {
    check_trial_args(prob, p, d, N);
    const double delta = check_delta(prob, p);
    const int m = static_cast<int>(prob.D() - prob.d_e());
    const int n = d - static_cast<int>(prob.d_e()) + 1;
    const auto [v1, v2] = dfs.value_or(std::pair<int, int>{m, n});
    std::vector<double> v(N);
    const double scale = static_cast<double>(n) / static_cast<double>(m) / (delta * delta);
    for (std::size_t i = 0; i < N; ++i)
        v[i] = scale * draw_min_norm(prob, p, d, rng, i).w.squaredNorm();
    return finish("F", std::move(v), [v1, v2](double x) { return f_cdf(std::max(x, 0.0), v1, v2); },
                  v1, v2, rng);
}

SphericalCheck spherical_check(const std::vector<Vector>& w, double alpha) {
    require(!w.empty(), "spherical_check: no samples");
    const Eigen::Index m = w.front().size();
    const double N = static_cast<double>(w.size());
    SphericalCheck c;
    c.cov_tol = 5.0 / std::sqrt(N);
    Matrix cov = Matrix::Zero(m, m);
    std::vector<double> first;
    first.reserve(w.size());
    std::size_t plus = 0;
    for (const auto& v : w) {
        require_dims(v.size() == m, "spherical_check: samples differ in dimension");
        const Vector u = v / v.norm();
        cov.noalias() += u * u.transpose();
        first.push_back(u[0]);
        if (u[0] > 0.0) ++plus;
    }
    cov /= N;
    cov -= Matrix::Identity(m, m) / static_cast<double>(m);
    c.cov_maxdev = cov.cwiseAbs().maxCoeff();
    c.cov_pass = c.cov_maxdev <= c.cov_tol;
    c.plus_fraction = static_cast<double>(plus) / N;
    if (m == 1) {
        c.ks_pass = std::fabs(c.plus_fraction - 0.5) <= 3.0 * 0.5 / std::sqrt(N);
        return c;
    }
    // (u_1 + 1)/2 ~ Beta((m-1)/2, (m-1)/2) on the unit sphere in R^m.
    const double a = 0.5 * static_cast<double>(m - 1);
    c.ks = ks_test(std::move(first), [a](double t) {
        const double x = std::clamp(0.5 * (t + 1.0), 0.0, 1.0);
        return boost::math::ibeta(a, a, x);
    });
    c.ks_pass = c.ks.p_value >= alpha;
    return c;
}

TauBounds tau_bounds(int m, int n, int d_e, const QuadratureConfig& cfg) {
    require(d_e >= 1, "tau_bounds: d_e must be >= 1");
    const double tau0 = integral_J(m, n, std::sqrt(static_cast<double>(d_e)), cfg);
    return {std::ldexp(tau0, -m), tau0};
}

double convergence_bound(double tau, double rho, int k) {
    const double tr = tau * rho;
    require(tau > 0.0 && tau <= 1.0 && rho > 0.0 && rho <= 1.0,
            "convergence_bound: tau and rho must be in (0,1]");
    require(k >= 0, "convergence_bound: k must be >= 0");
    return 1.0 - std::pow(1.0 - tr, k);
}

int k_xi(double tau, double rho, double xi) {
    require(tau > 0.0 && tau <= 1.0 && rho > 0.0 && rho <= 1.0, "k_xi: tau and rho must be in (0,1]");
    require(xi > 0.0 && xi < 1.0, "k_xi: xi must be in (0,1)");
    return static_cast<int>(std::ceil(std::fabs(std::log(1.0 - xi)) / (tau * rho)));
}

double eps_success_lower_bound(int m, int n, int D, double L, double eps, double vol) {
    require(m >= 1 && n >= 1 && D >= 1, "eps_success_lower_bound: need m, n, D >= 1");
    require(L > 0.0 && eps > 0.0 && vol >= 0.0, "eps_success_lower_bound: need L, eps > 0, vol >= 0");
    const double logC = std::lgamma(0.5 * (m + n)) - 0.5 * m * std::log(std::numbers::pi) -
                        std::lgamma(0.5 * n);
    const double t = 9.0 * D * D * L * L / (eps * eps);
    return vol * std::exp(logC - m * std::log(2.0 * std::sqrt(static_cast<double>(D))) -
                          0.5 * (m + n) * std::log1p(t));
}

double binomial_slack(int runs, double b) {
    const double q = 1.0 - b;  // per-run probability of not having converged
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return b;
    const boost::math::binomial_distribution<double> dist(runs, q);
    const double level = 0.5 * std::erfc(3.0 / std::sqrt(2.0));  // Phi(-3)
    int c = 0;
    while (c < runs && boost::math::cdf(boost::math::complement(dist, c)) > level) ++c;
    return c / static_cast<double>(runs) - q;
}

ConvergenceStudy convergence_study(const SyntheticProblem& prob, RunConfig cfg, int runs,
                                   std::size_t tau_samples, std::uint64_t seed) {
    require(runs >= 1, "convergence_study: runs must be >= 1");
    const int d = cfg.d == 0 ? static_cast<int>(prob.d_e()) : cfg.d;
    ConvergenceStudy st;
    st.runs = runs;
    st.K = cfg.K;
    st.lambda = 0.5 * cfg.epsilon;
    std::vector<int> reached(static_cast<std::size_t>(cfg.K), 0);
    std::size_t rho_hits = 0;
    std::vector<Vector> anchors;
    std::set<std::string> seen;
    // Subproblems are solved to lambda accuracy so that rho-hat measures
    // what it counts; success of the run is still judged at epsilon.
    RunConfig run_cfg = cfg;
    run_cfg.epsilon = st.lambda;
    for (int r = 0; r < runs; ++r) {
        SyntheticProblem local = prob;
        local.reset_counter();
        run_cfg.master_seed = splitmix64(seed + static_cast<std::uint64_t>(r));
        const RunRecord rec = run(local, run_cfg);
        for (int k = 1; k <= cfg.K; ++k) {
            const std::size_t idx = std::min<std::size_t>(k, rec.entries.size()) - 1;
            if (rec.entries[idx].f_xopt - prob.f_star() <= cfg.epsilon) ++reached[k - 1];
        }
        for (const auto& e : rec.entries) {
            if (seen.insert(e.p_digest).second && anchors.size() < 20) anchors.push_back(e.p);
            // R^k is estimated by feasibility of the min-norm point of this
            // very embedding (A^k is regenerated from its stream).
            SeededRng rk = embedding_rng(run_cfg.master_seed, e.k);
            const Matrix A = sample_gaussian(prob.D(), d, rk);
            const auto& U = prob.subspace().U;
            const Vector z = U.transpose() * (prob.x_top_star() - e.p);
            const bool trivial = z.norm() <= 1e-14;
            const Vector x = trivial ? e.p : Vector(A * minimal_norm_y(U.transpose() * A, z) + e.p);
            if (!in_box(x)) continue;
            ++st.rho_trials;
            if (e.f_xk - prob.f_star() <= st.lambda) ++rho_hits;
        }
    }
    st.rho_hat = st.rho_trials ? static_cast<double>(rho_hits) / st.rho_trials : 1.0;
    st.tau_hat = 1.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const auto t = mc_success_probability(prob, anchors[i], d, tau_samples,
                                              SeededRng(seed, 0x7a75000 + i));
        if (t.estimate < st.tau_hat) {
            st.tau_hat = t.estimate;
            st.tau_se = t.std_err;
        }
    }
    st.dominates = true;
    for (int k = 1; k <= cfg.K; ++k) {
        const double f = static_cast<double>(reached[k - 1]) / runs;
        const double tr = st.tau_hat * st.rho_hat;
        const double b = tr > 0.0 ? 1.0 - std::pow(1.0 - tr, k) : 0.0;
        // Three binomial standard errors, taken as the exact binomial
        // quantile at the same one-sided level: once runs*(1-b) is small
        // the normal band would allow less than one straggling run.
        const double slack = binomial_slack(runs, b);
        st.fraction.push_back(f);
        st.bound.push_back(b);
        st.slack.push_back(slack);
        // b - slack is 1 - c/runs for an integer c; compare run counts so
        // rounding in the subtraction cannot decide the outcome.
        if (reached[k - 1] < std::llround((b - slack) * runs)) st.dominates = false;
    }
    return st;
}

bool TheoryReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    for (const auto& c : convergence)
        if (!c.dominates) return false;
    return true;
}

namespace {

nlohmann::json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace

void TheoryReport::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
    nlohmann::json j;
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"value", c.value},
                               {"reference", c.reference},
                               {"seed", c.seed},
                               {"detail", c.detail}});
    for (const auto& l : laws)
        j["laws"].push_back({{"law", l.law},
                             {"statistic", l.ks.statistic},
                             {"p_value", l.ks.p_value},
                             {"n", l.ks.n},
                             {"df1", l.df1},
                             {"df2", l.df2},
                             {"pass", l.pass},
                             {"seed", l.seed},
                             {"stream", l.stream}});
    for (const auto& t : trials)
        j["trials"].push_back({{"problem", t.problem},
                               {"d", t.d},
                               {"N", t.N},
                               {"hits", t.hits},
                               {"estimate", t.estimate},
                               {"std_err", t.std_err},
                               {"p", to_json(t.p)},
                               {"seed", t.seed},
                               {"stream", t.stream}});
    for (const auto& [k, v] : quadrature) j["quadrature"][k] = v;
    for (const auto& c : convergence)
        j["convergence"].push_back({{"runs", c.runs},
                                    {"tau_hat", c.tau_hat},
                                    {"rho_hat", c.rho_hat},
                                    {"rho_trials", c.rho_trials},
                                    {"fraction", c.fraction},
                                    {"bound", c.bound},
                                    {"dominates", c.dominates}});
    j["all_passed"] = all_passed();
    write_text(fs::path(dir) / "theory_report.json", j.dump(2) + "\n");

    std::string csv = "name,pass,value,reference,seed\n";
    for (const auto& c : checks)
        csv += c.name + "," + (c.pass ? "1" : "0") + "," + format_real(c.value) + "," +
               format_real(c.reference) + "," + std::to_string(c.seed) + "\n";
    write_text(fs::path(dir) / "theory_checks.csv", csv);

    csv = "k,fraction,bound,slack\n";
    for (const auto& c : convergence)
        for (std::size_t k = 0; k < c.fraction.size(); ++k)
            csv += std::to_string(k + 1) + "," + format_real(c.fraction[k]) + "," +
                   format_real(c.bound[k]) + "," + format_real(c.slack[k]) + "\n";
    write_text(fs::path(dir) / "convergence.csv", csv);
}

}  // namespace xrego
