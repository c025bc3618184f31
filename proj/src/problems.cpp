#include "xrego/problems.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "xrego/errors.hpp"
#include "xrego/kernels.hpp"

namespace xrego {

BaseFunction scale_to_unit_box(const BaseFunction& base) {
    for (const auto& iv : base.domain)
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo))
            throw InvalidArgument("scale_to_unit_box: " + base.name + " has an unbounded domain");
    BaseFunction out = base;
    const auto dom = base.domain;
    const auto native = base.eval;
    const int de = base.d_e;
    out.domain.assign(de, {-1.0, 1.0});
    for (int i = 0; i < de; ++i)
        out.x_star[i] = 2.0 * (base.x_star[i] - dom[i].lo) / (dom[i].hi - dom[i].lo) - 1.0;
    out.eval = [dom, native, de](const double* x) {
        double xb[8];
        for (int i = 0; i < de; ++i)
            xb[i] = dom[i].lo + (dom[i].hi - dom[i].lo) * (x[i] + 1.0) / 2.0;
        return native(xb);
    };
    return out;
}

namespace {

bool on_unit_box(const BaseFunction& b) {
    for (const auto& iv : b.domain)
        if (iv.lo != -1.0 || iv.hi != 1.0) return false;
    return true;
}

}  // namespace

SyntheticProblem::SyntheticProblem(const BaseFunction& base, Matrix Q) {
    require(base.d_e >= 1 && base.d_e <= 8, "SyntheticProblem: d_e must be in [1, 8]");
    require_dims(Q.rows() == Q.cols(), "SyntheticProblem: Q must be square");
    if (Q.rows() <= base.d_e) throw InvalidArgument("lift: D must exceed d_e");
    auto p = std::make_shared<Payload>();
    p->base = on_unit_box(base) ? base : scale_to_unit_box(base);
    p->Qtop = Q.topRows(base.d_e);
    p->sub = EffectiveSubspace::from_rotation(Q, base.d_e);
    p->x_star = p->sub.U * p->base.x_star;
    p->Q = std::move(Q);
    data_ = std::move(p);
}

double SyntheticProblem::peek(const double* x) const {
    const auto& d = *data_;
    const std::size_t D = static_cast<std::size_t>(d.Q.rows());
    double z[8];
    for (int i = 0; i < d.base.d_e; ++i) z[i] = kernels::dot(d.Qtop.row(i).data(), x, D);
    return d.base.eval(z);
}

double SyntheticProblem::evaluate(const double* x) {
    const Eigen::Map<const Vector> v(x, D());
    if (!v.allFinite()) throw InvalidArgument("evaluate: non-finite input");
    ++counter_;
    return peek(x);
}

double SyntheticProblem::evaluate(const Vector& x) {
    require_dims(x.size() == D(), "evaluate: x has wrong dimension");
    return evaluate(x.data());
}

SyntheticProblem lift(const BaseFunction& base, int D, SeededRng& rng) {
    if (D <= base.d_e) throw InvalidArgument("lift: D must exceed d_e");
    return SyntheticProblem(base, sample_haar_orthogonal(D, rng));
}

SyntheticProblem lift_aligned(const BaseFunction& base, int D) {
    if (D <= base.d_e) throw InvalidArgument("lift: D must exceed d_e");
    return SyntheticProblem(base, Matrix::Identity(D, D));
}

namespace {

std::uint64_t problem_stream(std::string_view name, int D) {
    const std::string key = std::string(name) + "/" + std::to_string(D);
    return fnv1a(key.data(), key.size());
}

}  // namespace

SyntheticProblem make_problem(std::string_view name, int D, std::uint64_t seed) {
    SeededRng rng(seed, problem_stream(name, D));
    return lift(find_base(name), D, rng);
}

// Empty names selects the whole catalog.
std::vector<ManifestEntry> build_manifest(const std::vector<std::string>& names,
                                          const std::vector<int>& dims, std::uint64_t seed) {
    std::vector<ManifestEntry> out;
    std::vector<std::string> all;
    if (names.empty())
        for (const auto& b : catalog()) all.push_back(b.name);
    for (const auto& n : names.empty() ? all : names) {
        const auto& b = find_base(n);
        for (int D : dims) out.push_back({b.name, b.d_e, D, seed, b.flags});
    }
    return out;
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : entries)
        j.push_back({{"name", e.name},
                     {"d_e", e.d_e},
                     {"D", e.D},
                     {"seed", e.seed},
                     {"baron_unsupported", e.flags.baron_unsupported},
                     {"knitro_unsupported", e.flags.knitro_unsupported}});
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << j.dump(2) << "\n";
    if (!f) throw IoError("write failed: " + path);
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    std::vector<ManifestEntry> out;
    for (const auto& e : j)
        out.push_back({e.at("name").get<std::string>(), e.at("d_e").get<int>(), e.at("D").get<int>(),
                       e.at("seed").get<std::uint64_t>(),
                       {e.value("baron_unsupported", false), e.value("knitro_unsupported", false)}});
    return out;
}

}  // namespace xrego
