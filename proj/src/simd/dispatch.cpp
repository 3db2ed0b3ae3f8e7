#include "machlab/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace machlab::simd {

const KernelTable& active() {
    static const KernelTable* table = [] {
        if (const char* env = std::getenv("MACHLAB_SIMD")) {
            if (std::strcmp(env, "scalar") == 0) return &scalar_kernels();
            if (std::strcmp(env, "avx2") == 0) return &avx2_kernels();
        }
#if defined(__x86_64__) || defined(_M_X64)
        if (__builtin_cpu_supports("avx2")) return &avx2_kernels();
#endif
        return &scalar_kernels();
    }();
    return *table;
}

} // namespace machlab::simd
