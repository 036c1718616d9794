#include "kernels_internal.hpp"

#include <cstdlib>
#include <cstring>
#include <optional>

namespace dronevoc::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::optional<Backend>& forced() {
    static std::optional<Backend> value;
    return value;
}

std::optional<Backend> env_backend() {
    const char* e = std::getenv("DRONEVOC_KERNELS");
    if (e == nullptr) return std::nullopt;
    if (std::strcmp(e, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(e, "avx2") == 0) return Backend::avx2;
    return std::nullopt;
}

}  // namespace

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

bool available(Backend b) {
    if (b == Backend::scalar) return true;
    return avx2_ops() != nullptr && cpu_has_avx2();
}

std::vector<Backend> available_backends() {
    std::vector<Backend> v{Backend::scalar};
    if (available(Backend::avx2)) v.push_back(Backend::avx2);
    return v;
}

const Ops& ops(Backend b) {
    if (b == Backend::avx2 && available(Backend::avx2)) return *avx2_ops();
    return scalar_ops();
}

const Ops& ops() {
    if (forced().has_value()) return ops(*forced());
    static const Ops& chosen = [] -> const Ops& {
        if (auto e = env_backend(); e.has_value()) return ops(*e);
        return available(Backend::avx2) ? *avx2_ops() : scalar_ops();
    }();
    return chosen;
}

void force_backend(std::optional<Backend> b) { forced() = b; }

}  // namespace dronevoc::kernels
