#include <cstdlib>
#include <string_view>

#include "xrego/kernels.hpp"

namespace xrego::kernels {
namespace {

const Table& select() {
    const char* env = std::getenv("XREGO_SIMD");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar();
    if (want == "avx2" && avx2()) return *avx2();
    if (want == "neon" && neon()) return *neon();
    if (const Table* t = avx2()) return *t;
    if (const Table* t = neon()) return *t;
    return scalar();
}

}  // namespace

const Table& active() {
    static const Table& t = select();
    return t;
}

}  // namespace xrego::kernels
