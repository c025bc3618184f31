#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace xrego {

// Deterministic generator keyed by (master_seed, stream_id).
//
// Version 1 of the stream layout:
//   engine  std::mt19937_64 seeded with splitmix64(master ^ splitmix64(stream + golden))
//   uniform (u >> 11) * 2^-53, in [0, 1)
//   normal  Marsaglia polar method, the spare variate is kept
// std::mt19937_64 output is fixed by the standard; the distributions are
// written out here because libstdc++ does not promise stable ones.
class SeededRng {
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_id() const { return stream_; }

    // Independent child stream, e.g. one per Monte Carlo sample.
    SeededRng derive(std::uint64_t sub) const;

    std::uint64_t next_u64() { return engine_(); }
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    // Uniform point in [-1, 1]^n.
    Eigen::VectorXd uniform_box(Eigen::Index n);

private:
    std::uint64_t master_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a, used to turn problem names into stream ids.
std::uint64_t fnv1a(const void* data, std::size_t len);

}  // namespace xrego
