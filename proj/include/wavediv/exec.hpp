#pragma once

namespace wavediv {

/// Execution policy for the batch kernels. Serial is the reference path used
/// in tests; OpenMP parallelizes over independent work items and is bit-stable
/// because every item is computed by the same pure function regardless of the
/// thread that runs it.
enum class ExecPolicy { Serial, OpenMP };

inline constexpr ExecPolicy default_exec() {
#ifdef WAVEDIV_HAVE_OPENMP
    return ExecPolicy::OpenMP;
#else
    return ExecPolicy::Serial;
#endif
}

}  // namespace wavediv
