// Runtime CPU feature queries for kernel dispatch. Compiled without ISA
// flags so it is safe to run on any x86-64 machine.
#include "kernels.hpp"

#if defined(DOT_X86_KERNELS)

namespace dot::detail {

bool cpu_has_sse42() {
    static const bool v = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("sse4.2") != 0;
    }();
    return v;
}

bool cpu_has_avx2() {
    static const bool v = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    return v;
}

bool cpu_has_avx512f() {
    static const bool v = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx512f") != 0;
    }();
    return v;
}

}  // namespace dot::detail

#endif  // DOT_X86_KERNELS
