#include "qwit/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qwit::kernels {

bool avx2_supported() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

const Backend& pick() {
    const char* env = std::getenv("QWIT_KERNELS");
    const std::string mode = env ? env : "auto";
    if (mode == "scalar") {
        return scalar_backend();
    }
    if (mode == "avx2") {
        if (!avx2_supported()) {
            throw std::runtime_error("QWIT_KERNELS=avx2 but the CPU does not support AVX2");
        }
        return avx2_backend();
    }
    if (mode != "auto") {
        throw std::runtime_error("unknown QWIT_KERNELS value: " + mode);
    }
    return avx2_supported() ? avx2_backend() : scalar_backend();
}

} // namespace

const Backend& active() {
    static const Backend& chosen = pick();
    return chosen;
}

std::string_view active_name() { return active().name; }

} // namespace qwit::kernels
