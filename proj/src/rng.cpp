#include "xrego/rng.hpp"

#include <cmath>

namespace xrego {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed),
      stream_(stream_id),
      engine_(splitmix64(master_seed ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL))) {}

SeededRng SeededRng::derive(std::uint64_t sub) const {
    return SeededRng(splitmix64(master_ ^ 0x5851f42d4c957f2dULL) ^ stream_, splitmix64(sub));
}

double SeededRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

Eigen::VectorXd SeededRng::uniform_box(Eigen::Index n) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = uniform(-1.0, 1.0);
    return x;
}

}  // namespace xrego
