#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "xrego/embedcore.hpp"

namespace xrego {

struct Interval {
    double lo;
    double hi;
};

// Solvers the reference experiments could not run a function with.
struct SolverFlags {
    bool baron_unsupported = false;
    bool knitro_unsupported = false;
};

struct BaseFunction {
    std::string name;
    int d_e = 0;
    std::vector<Interval> domain;
    double f_star = 0.0;
    Vector x_star;            // one global minimizer, in the coordinates of `domain`
    int minimizer_count = 1;  // number of global minimizers inside the domain
    SolverFlags flags;
    std::function<double(const double*)> eval;

    double operator()(const Vector& x) const { return eval(x.data()); }
};

// The 19 benchmark functions in native coordinates, alphabetical.
const std::vector<BaseFunction>& catalog();
const BaseFunction& find_base(std::string_view name);

// Affine reparameterization onto [-1,1]^{d_e}.
BaseFunction scale_to_unit_box(const BaseFunction& base);

// f(x) = gbar((Q x)_{1:d_e}) on R^D.
class SyntheticProblem {
public:
    SyntheticProblem(const BaseFunction& base, Matrix Q);

    const BaseFunction& base() const { return data_->base; }
    const std::string& name() const { return data_->base.name; }
    Eigen::Index D() const { return data_->Q.rows(); }
    Eigen::Index d_e() const { return data_->base.d_e; }
    const Matrix& Q() const { return data_->Q; }
    const EffectiveSubspace& subspace() const { return data_->sub; }
    double f_star() const { return data_->base.f_star; }

    // Q^T (xbar*; 0) and its effective component (identical by construction).
    const Vector& lifted_minimizer() const { return data_->x_star; }
    const Vector& x_top_star() const { return data_->x_star; }

    // Counted evaluation; the only entry point used by optimizers.
    double evaluate(const Vector& x);
    double evaluate(const double* x);
    // Uncounted evaluation for validators.
    double peek(const double* x) const;
    double peek(const Vector& x) const { return peek(x.data()); }

    std::uint64_t evals() const { return counter_; }
    void reset_counter() { counter_ = 0; }

private:
    struct Payload {
        BaseFunction base;  // on the unit box
        Matrix Q;
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> Qtop;
        EffectiveSubspace sub;
        Vector x_star;
    };
    std::shared_ptr<const Payload> data_;
    std::uint64_t counter_ = 0;
};

// Scales `base` if needed and rotates with a Haar matrix drawn from rng.
SyntheticProblem lift(const BaseFunction& base, int D, SeededRng& rng);
// Unrotated lift, Q = I.
SyntheticProblem lift_aligned(const BaseFunction& base, int D);

// Regenerable instance: Q comes from stream fnv1a("name/D") of `seed`.
SyntheticProblem make_problem(std::string_view name, int D, std::uint64_t seed);

struct ManifestEntry {
    std::string name;
    int d_e = 0;
    int D = 0;
    std::uint64_t seed = 0;
    SolverFlags flags;
};

std::vector<ManifestEntry> build_manifest(const std::vector<std::string>& names,
                                          const std::vector<int>& dims, std::uint64_t seed);
void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::string& path);

}  // namespace xrego
